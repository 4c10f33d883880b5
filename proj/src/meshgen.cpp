#include "jumpfem/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace jumpfem {

namespace {

std::size_t pieces_for(double length, double spacing) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length / spacing * (1.0 - 1e-12))));
}

void add_ccw(Mesh& mesh, std::size_t a, std::size_t b, std::size_t c) {
    if (signed_area(mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]) < 0.0)
        std::swap(b, c);
    mesh.triangles.push_back({a, b, c});
}

void finalize(Mesh& mesh) {
    mesh.h = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        mesh.h = std::max(mesh.h, longest_edge(mesh.corners(t)));
    mesh.tri_region.assign(mesh.num_triangles(), RegionId::region1);
    mesh.tri_class.assign(mesh.num_triangles(), TriClass::regular);
}

double point_triangle_distance(Point2 p, const std::array<Point2, 3>& tri) {
    const double a0 = signed_area(tri[0], tri[1], p);
    const double a1 = signed_area(tri[1], tri[2], p);
    const double a2 = signed_area(tri[2], tri[0], p);
    if ((a0 >= 0 && a1 >= 0 && a2 >= 0) || (a0 <= 0 && a1 <= 0 && a2 <= 0))
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int e = 0; e < 3; ++e)
        best = std::min(best, distance(p, closest_point_on_segment(tri[e], tri[(e + 1) % 3], p)));
    return best;
}

bool strictly_inside(Point2 p, const std::array<Point2, 3>& tri, double tol) {
    const double scale = longest_edge(tri);
    return signed_area(tri[0], tri[1], p) > tol * scale && signed_area(tri[1], tri[2], p) > tol * scale &&
           signed_area(tri[2], tri[0], p) > tol * scale;
}

bool crosses_interior(const InterfaceCurve& curve, const std::array<Point2, 3>& tri, double tol) {
    if (curve.is_circle()) {
        const Circle& c = curve.circle();
        double dmax = 0.0;
        for (const auto& v : tri)
            dmax = std::max(dmax, distance(v, c.center));
        const double dmin = point_triangle_distance(c.center, tri);
        return dmin < c.radius - tol && dmax > c.radius + tol;
    }
    bool has1 = false;
    bool has2 = false;
    for (const auto& v : tri) {
        const Side s = side_of_interface(curve, v, tol);
        has1 = has1 || s == Side::region1;
        has2 = has2 || s == Side::region2;
    }
    if (has1 && has2)
        return true;
    return std::any_of(curve.polyline().vertices.begin(), curve.polyline().vertices.end(),
                       [&](Point2 q) { return strictly_inside(q, tri, tol); });
}

RegionId region_of(const InterfaceCurve& curve, const std::array<Point2, 3>& tri, double tol) {
    const Point2 centroid = (1.0 / 3.0) * (tri[0] + tri[1] + tri[2]);
    Side s = side_of_interface(curve, centroid, tol);
    for (std::size_t k = 0; s == Side::on_interface && k < 3; ++k)
        s = side_of_interface(curve, tri[k], tol);
    return s == Side::region2 ? RegionId::region2 : RegionId::region1;
}

const UnitSquare& require_square(const DomainSpec& domain, const char* who) {
    const auto* sq = std::get_if<UnitSquare>(&domain.kind);
    if (sq == nullptr)
        throw std::invalid_argument(std::string(who) + ": domain must be the unit square");
    return *sq;
}

void require_target_h(double target_h, double domain_size, const char* who) {
    if (!(target_h > 0.0))
        throw std::invalid_argument(std::string(who) + ": target_h must be positive");
    if (target_h > domain_size)
        throw std::invalid_argument(std::string(who) + ": target_h larger than the domain");
}

// Tensor-product grid over [0,1]^2 from explicit grid-line coordinates.
Mesh tensor_grid(const std::vector<double>& xs, const std::vector<double>& ys) {
    Mesh mesh;
    const std::size_t nx = xs.size();
    const std::size_t ny = ys.size();
    mesh.vertices.reserve(nx * ny);
    mesh.vertex_marker.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            mesh.vertices.push_back({xs[i], ys[j]});
            const bool on_boundary = i == 0 || j == 0 || i + 1 == nx || j + 1 == ny;
            mesh.vertex_marker.push_back(on_boundary ? VertexMarker::boundary : VertexMarker::interior);
        }
    }
    auto idx = [nx](std::size_t i, std::size_t j) { return j * nx + i; };
    mesh.triangles.reserve(2 * (nx - 1) * (ny - 1));
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            add_ccw(mesh, idx(i, j), idx(i + 1, j), idx(i + 1, j + 1));
            add_ccw(mesh, idx(i, j), idx(i + 1, j + 1), idx(i, j + 1));
        }
    }
    finalize(mesh);
    return mesh;
}

std::vector<double> uniform_lines(double a, double b, std::size_t cells) {
    std::vector<double> out(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k)
        out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(cells);
    out.front() = a;
    out.back() = b;
    return out;
}

// Grid lines on [0,1] with a line exactly at `cut`, spacing at most target_h on either side.
std::vector<double> split_lines(double cut, double target_h) {
    auto left = uniform_lines(0.0, cut, pieces_for(cut, target_h));
    const auto right = uniform_lines(cut, 1.0, pieces_for(1.0 - cut, target_h));
    left.insert(left.end(), right.begin() + 1, right.end());
    return left;
}

}  // namespace

double signed_area(Point2 a, Point2 b, Point2 c) { return 0.5 * cross(b - a, c - a); }

double longest_edge(const std::array<Point2, 3>& tri) {
    return std::max({distance(tri[0], tri[1]), distance(tri[1], tri[2]), distance(tri[2], tri[0])});
}

double inradius(const std::array<Point2, 3>& tri) {
    const double perimeter = distance(tri[0], tri[1]) + distance(tri[1], tri[2]) + distance(tri[2], tri[0]);
    return 2.0 * std::abs(signed_area(tri[0], tri[1], tri[2])) / perimeter;
}

Mesh build_disk_polar_mesh(const DomainSpec& domain, double target_h) {
    const auto* disk = std::get_if<UnitDisk>(&domain.kind);
    if (disk == nullptr || !domain.interface.is_circle())
        throw std::invalid_argument("build_disk_polar_mesh: needs a disk domain with a circle interface");
    const Circle& iface = domain.interface.circle();
    const double R = disk->radius;
    const double r0 = iface.radius;
    if (distance(iface.center, disk->center) > classification_tol(domain))
        throw std::invalid_argument("build_disk_polar_mesh: interface circle must be concentric with the disk");
    if (!(r0 > 0.0 && r0 < R))
        throw std::invalid_argument("build_disk_polar_mesh: interface radius must lie strictly inside (0, R)");
    if (!(target_h > 0.0))
        throw std::invalid_argument("build_disk_polar_mesh: target_h must be positive");
    if (target_h >= R)
        throw std::invalid_argument("build_disk_polar_mesh: target_h must be smaller than the disk radius");

    const std::size_t n_inner = pieces_for(r0, target_h);
    const std::size_t n_outer = pieces_for(R - r0, target_h);
    const std::size_t n_rings = n_inner + n_outer;

    std::vector<double> radius(n_rings + 1);
    for (std::size_t k = 0; k <= n_inner; ++k)
        radius[k] = r0 * static_cast<double>(k) / static_cast<double>(n_inner);
    for (std::size_t k = n_inner + 1; k <= n_rings; ++k)
        radius[k] = r0 + (R - r0) * static_cast<double>(k - n_inner) / static_cast<double>(n_outer);
    radius[n_inner] = r0;
    radius[n_rings] = R;

    // Ring k starts at 1 + 3k(k-1) and holds 6k vertices.
    auto ring_start = [](std::size_t k) { return k == 0 ? std::size_t{0} : 1 + 3 * k * (k - 1); };
    auto vid = [&](std::size_t k, std::size_t j) { return k == 0 ? std::size_t{0} : ring_start(k) + j % (6 * k); };

    Mesh mesh;
    const std::size_t nv = ring_start(n_rings + 1);
    mesh.vertices.reserve(nv);
    mesh.vertex_marker.reserve(nv);
    mesh.vertices.push_back(disk->center);
    mesh.vertex_marker.push_back(VertexMarker::interior);
    for (std::size_t k = 1; k <= n_rings; ++k) {
        const std::size_t count = 6 * k;
        VertexMarker marker = VertexMarker::interior;
        if (k == n_inner)
            marker = VertexMarker::interface;
        if (k == n_rings)
            marker = VertexMarker::boundary;
        for (std::size_t j = 0; j < count; ++j) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
            mesh.vertices.push_back(
                {disk->center.x + radius[k] * std::cos(theta), disk->center.y + radius[k] * std::sin(theta)});
            mesh.vertex_marker.push_back(marker);
        }
    }

    mesh.triangles.reserve(6 * n_rings * n_rings);
    for (std::size_t k = 1; k <= n_rings; ++k) {
        for (std::size_t s = 0; s < 6; ++s) {
            const std::size_t outer0 = s * k;
            const std::size_t inner0 = s * (k - 1);
            for (std::size_t i = 0; i < k; ++i)
                add_ccw(mesh, vid(k, outer0 + i), vid(k, outer0 + i + 1), vid(k - 1, inner0 + i));
            for (std::size_t i = 0; i + 1 < k; ++i)
                add_ccw(mesh, vid(k - 1, inner0 + i), vid(k, outer0 + i + 1), vid(k - 1, inner0 + i + 1));
        }
    }

    finalize(mesh);
    return classify_triangles(std::move(mesh), domain.interface, classification_tol(domain));
}

Mesh build_square_line_mesh(const DomainSpec& domain, double target_h) {
    require_square(domain, "build_square_line_mesh");
    require_target_h(target_h, 1.0, "build_square_line_mesh");
    if (domain.interface.is_circle() || domain.interface.polyline().vertices.size() != 2)
        throw std::invalid_argument("build_square_line_mesh: interface must be a single straight chord");

    const auto& pv = domain.interface.polyline().vertices;
    const Point2 a = pv[0];
    const Point2 b = pv[1];
    auto spans = [](double u, double v) { return std::min(u, v) == 0.0 && std::max(u, v) == 1.0; };
    auto strictly_inside_unit = [](double u) { return u > 0.0 && u < 1.0; };

    const bool vertical = a.x == b.x && strictly_inside_unit(a.x) && spans(a.y, b.y);
    const bool horizontal = a.y == b.y && strictly_inside_unit(a.y) && spans(a.x, b.x);
    if (!vertical && !horizontal)
        throw std::invalid_argument("build_square_line_mesh: interface must be an axis-aligned chord of the square");

    const auto uniform = uniform_lines(0.0, 1.0, pieces_for(1.0, target_h));
    Mesh mesh = vertical ? tensor_grid(split_lines(a.x, target_h), uniform)
                         : tensor_grid(uniform, split_lines(a.y, target_h));
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        const double coord = vertical ? mesh.vertices[v].x : mesh.vertices[v].y;
        const double cut = vertical ? a.x : a.y;
        if (coord == cut && mesh.vertex_marker[v] != VertexMarker::boundary)
            mesh.vertex_marker[v] = VertexMarker::interface;
    }
    return classify_triangles(std::move(mesh), domain.interface, classification_tol(domain));
}

Mesh build_unfitted_square_mesh(const DomainSpec& domain, double target_h) {
    require_square(domain, "build_unfitted_square_mesh");
    require_target_h(target_h, 1.0, "build_unfitted_square_mesh");
    const auto lines = uniform_lines(0.0, 1.0, pieces_for(1.0, target_h));
    Mesh mesh = tensor_grid(lines, lines);
    const double tol = classification_tol(domain);
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        if (mesh.vertex_marker[v] == VertexMarker::interior &&
            side_of_interface(domain.interface, mesh.vertices[v], tol) == Side::on_interface)
            mesh.vertex_marker[v] = VertexMarker::interface;
    }
    return classify_triangles(std::move(mesh), domain.interface, tol);
}

Mesh classify_triangles(Mesh mesh, const InterfaceCurve& curve, double tol) {
    mesh.tri_region.resize(mesh.num_triangles());
    mesh.tri_class.resize(mesh.num_triangles());
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.corners(t);
        mesh.tri_class[t] = crosses_interior(curve, tri, tol) ? TriClass::irregular : TriClass::regular;
        mesh.tri_region[t] = region_of(curve, tri, tol);
    }
    return mesh;
}

MeshQualityReport quality_report(const Mesh& mesh) {
    MeshQualityReport rep;
    double min_inradius = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.corners(t);
        rep.h = std::max(rep.h, longest_edge(tri));
        min_inradius = std::min(min_inradius, inradius(tri));
        if (mesh.tri_class[t] == TriClass::regular) {
            ++rep.n_regular;
            continue;
        }
        ++rep.n_irregular;
        const auto on_s = std::count_if(mesh.triangles[t].begin(), mesh.triangles[t].end(), [&](std::size_t v) {
            return mesh.vertex_marker[v] == VertexMarker::interface;
        });
        if (on_s < 2)
            rep.irregular_two_vertices_on_S = false;
    }
    rep.min_inradius_ratio = mesh.num_triangles() == 0 ? 0.0 : min_inradius / rep.h;
    return rep;
}

ConformityReport check_conformity(const Mesh& mesh) {
    std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
    ConformityReport rep;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        if (!(signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]) > 0.0))
            rep.positive_areas = false;
        for (int e = 0; e < 3; ++e) {
            const std::size_t a = tri[e];
            const std::size_t b = tri[(e + 1) % 3];
            ++edge_use[{std::min(a, b), std::max(a, b)}];
        }
    }
    for (const auto& [edge, uses] : edge_use) {
        if (uses == 1)
            ++rep.boundary_edges;
        else if (uses == 2)
            ++rep.interior_edges;
        else
            ++rep.bad_edges;
    }
    return rep;
}

double total_area(const Mesh& mesh) {
    double area = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.corners(t);
        area += signed_area(tri[0], tri[1], tri[2]);
    }
    return area;
}

}  // namespace jumpfem
