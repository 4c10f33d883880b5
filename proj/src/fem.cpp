#include "jumpfem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace jumpfem {

namespace {

QuadratureRule make_edge_midpoint_rule() {
    QuadratureRule rule;
    rule.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    rule.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return rule;
}

QuadratureRule make_six_point_rule() {
    const double a = 0.445948490915964886318329253883;
    const double b = 0.091576213509770743459571463402;
    const double wa = 0.223381589678011465944790883346;
    const double wb = 1.0 / 3.0 - wa;
    QuadratureRule rule;
    rule.points = {{1.0 - 2.0 * a, a, a}, {a, 1.0 - 2.0 * a, a}, {a, a, 1.0 - 2.0 * a},
                   {1.0 - 2.0 * b, b, b}, {b, 1.0 - 2.0 * b, b}, {b, b, 1.0 - 2.0 * b}};
    rule.weights = {wa, wa, wa, wb, wb, wb};
    return rule;
}

std::string describe(Point2 p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p.x << ", " << p.y << ')';
    return os.str();
}

bool contains(const std::array<Point2, 3>& tri, Point2 p, std::array<double, 3>& lambda) {
    const double area = signed_area(tri[0], tri[1], tri[2]);
    lambda[0] = signed_area(p, tri[1], tri[2]) / area;
    lambda[1] = signed_area(tri[0], p, tri[2]) / area;
    lambda[2] = 1.0 - lambda[0] - lambda[1];
    return lambda[0] >= -1e-12 && lambda[1] >= -1e-12 && lambda[2] >= -1e-12;
}

}  // namespace

const QuadratureRule& edge_midpoint_rule() {
    static const QuadratureRule rule = make_edge_midpoint_rule();
    return rule;
}

const QuadratureRule& six_point_rule() {
    static const QuadratureRule rule = make_six_point_rule();
    return rule;
}

Gradients barycentric_gradients(const std::array<Point2, 3>& tri) {
    const double twice_area = cross(tri[1] - tri[0], tri[2] - tri[0]);
    const double scale = longest_edge(tri);
    if (!(std::abs(twice_area) > 1e-14 * scale * scale))
        throw std::invalid_argument("barycentric_gradients: degenerate triangle");
    Gradients g;
    for (int i = 0; i < 3; ++i) {
        const Point2 a = tri[(i + 1) % 3];
        const Point2 b = tri[(i + 2) % 3];
        g[i] = {(a.y - b.y) / twice_area, (b.x - a.x) / twice_area};
    }
    return g;
}

ElementSystem element_matrices(const std::array<Point2, 3>& tri, TriClass cls, RegionId region,
                               const ElementData& data) {
    const Gradients grad = barycentric_gradients(tri);
    const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
    const QuadratureRule& rule = cls == TriClass::regular ? data.rule_regular : data.rule_irregular;

    ElementSystem out;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point2 p = rule.map(tri, q);
        const RegionId r = cls == TriClass::regular ? region : select_branch(data.curve, p, data.tol, region);
        const double B = data.coeffs.B(p, r);
        const double sigma = data.coeffs.sigma(p);
        if (!(B > 0.0))
            throw std::domain_error("diffusion coefficient B = " + std::to_string(B) + " is not positive at " +
                                    describe(p));
        if (!(sigma >= 0.0))
            throw std::domain_error("reaction coefficient sigma = " + std::to_string(sigma) +
                                    " is negative at " + describe(p));
        const double f = data.coeffs.f(p, r);
        const double w = rule.weights[q] * area;
        const auto& lam = rule.points[q];
        for (int i = 0; i < 3; ++i) {
            out.load[i] += w * f * lam[i];
            for (int j = 0; j < 3; ++j)
                out.stiffness[i][j] += w * (B * dot(grad[i], grad[j]) + sigma * lam[i] * lam[j]);
        }
    }
    return out;
}

LinearSystem assemble(const Mesh& mesh, const ElementData& data) {
    const std::size_t nv = mesh.num_vertices();
    std::vector<std::vector<std::size_t>> rows(nv);
    for (const auto& tri : mesh.triangles)
        for (std::size_t a : tri)
            for (std::size_t b : tri)
                rows[a].push_back(b);
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }

    LinearSystem sys;
    sys.matrix = CsrMatrix::from_pattern(rows);
    sys.rhs.assign(nv, 0.0);
    sys.lifted.assign(nv, 0.0);
    sys.free_dofs.resize(nv);
    for (std::size_t v = 0; v < nv; ++v)
        sys.free_dofs[v] = v;

    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const ElementSystem el = element_matrices(mesh.corners(t), mesh.tri_class[t], mesh.tri_region[t], data);
        for (int i = 0; i < 3; ++i) {
            sys.rhs[tri[i]] += el.load[i];
            for (int j = 0; j < 3; ++j)
                sys.matrix.values[sys.matrix.slot(tri[i], tri[j])] += el.stiffness[i][j];
        }
    }
    return sys;
}

LinearSystem assemble(const Mesh& mesh, const ProblemSpec& problem) {
    const ElementData data{problem.coeffs, problem.domain.interface, classification_tol(problem.domain)};
    return assemble(mesh, data);
}

LinearSystem apply_dirichlet(const LinearSystem& full, const Mesh& mesh, const ScalarField& g) {
    const std::size_t nv = mesh.num_vertices();
    constexpr std::size_t fixed = static_cast<std::size_t>(-1);
    std::vector<std::size_t> reduced_index(nv, fixed);

    LinearSystem out;
    out.lifted.assign(nv, 0.0);
    for (std::size_t v = 0; v < nv; ++v) {
        if (mesh.vertex_marker[v] == VertexMarker::boundary) {
            out.lifted[v] = g(mesh.vertices[v]);
        } else {
            reduced_index[v] = out.free_dofs.size();
            out.free_dofs.push_back(v);
        }
    }

    const CsrMatrix& A = full.matrix;
    std::vector<std::vector<std::size_t>> rows(out.free_dofs.size());
    out.rhs.resize(out.free_dofs.size());
    for (std::size_t k = 0; k < out.free_dofs.size(); ++k) {
        const std::size_t v = out.free_dofs[k];
        double rhs = full.rhs[v];
        for (std::size_t e = A.row_offsets[v]; e < A.row_offsets[v + 1]; ++e) {
            const std::size_t j = A.col_indices[e];
            if (reduced_index[j] == fixed)
                rhs -= A.values[e] * out.lifted[j];
            else
                rows[k].push_back(reduced_index[j]);
        }
        out.rhs[k] = rhs;
    }
    out.matrix = CsrMatrix::from_pattern(rows);
    for (std::size_t k = 0; k < out.free_dofs.size(); ++k) {
        const std::size_t v = out.free_dofs[k];
        std::size_t slot = out.matrix.row_offsets[k];
        for (std::size_t e = A.row_offsets[v]; e < A.row_offsets[v + 1]; ++e)
            if (reduced_index[A.col_indices[e]] != fixed)
                out.matrix.values[slot++] = A.values[e];
    }
    return out;
}

std::vector<double> expand_solution(const LinearSystem& reduced, std::span<const double> x) {
    if (x.size() != reduced.free_dofs.size())
        throw std::invalid_argument("expand_solution: size mismatch");
    std::vector<double> full = reduced.lifted;
    for (std::size_t k = 0; k < x.size(); ++k)
        full[reduced.free_dofs[k]] = x[k];
    return full;
}

std::vector<double> nodal_interpolant(const Mesh& mesh, const ExactSolution& exact, const InterfaceCurve& curve,
                                      double tol) {
    std::vector<double> out(mesh.num_vertices());
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        const Point2 p = mesh.vertices[v];
        const Side side = side_of_interface(curve, p, tol);
        if (mesh.vertex_marker[v] == VertexMarker::interface || side == Side::on_interface) {
            const double u1 = exact.value1(p);
            const double u2 = exact.value2(p);
            if (std::abs(u1 - u2) > 1e-9)
                throw std::domain_error("exact solution is discontinuous across the interface at " + describe(p));
            out[v] = u1;
        } else {
            out[v] = exact.value(p, side == Side::region1 ? RegionId::region1 : RegionId::region2);
        }
    }
    return out;
}

PointLocator::PointLocator(const Mesh& mesh) : mesh_(mesh) {
    if (mesh.num_vertices() == 0)
        return;
    Point2 hi = mesh.vertices.front();
    lo_ = hi;
    for (const Point2& p : mesh.vertices) {
        lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double extent = std::max(hi.x - lo_.x, hi.y - lo_.y);
    cell_ = std::max(mesh.h, extent / 512.0);
    if (!(cell_ > 0.0))
        cell_ = 1.0;
    nx_ = static_cast<std::size_t>((hi.x - lo_.x) / cell_) + 1;
    ny_ = static_cast<std::size_t>((hi.y - lo_.y) / cell_) + 1;
    buckets_.resize(nx_ * ny_);
    auto clamp_x = [&](double x) { return std::min(nx_ - 1, static_cast<std::size_t>(std::max(0.0, (x - lo_.x) / cell_))); };
    auto clamp_y = [&](double y) { return std::min(ny_ - 1, static_cast<std::size_t>(std::max(0.0, (y - lo_.y) / cell_))); };
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.corners(t);
        const double x0 = std::min({tri[0].x, tri[1].x, tri[2].x});
        const double x1 = std::max({tri[0].x, tri[1].x, tri[2].x});
        const double y0 = std::min({tri[0].y, tri[1].y, tri[2].y});
        const double y1 = std::max({tri[0].y, tri[1].y, tri[2].y});
        for (std::size_t j = clamp_y(y0); j <= clamp_y(y1); ++j)
            for (std::size_t i = clamp_x(x0); i <= clamp_x(x1); ++i)
                buckets_[j * nx_ + i].push_back(t);
    }
}

std::size_t PointLocator::locate(Point2 p) const {
    if (buckets_.empty())
        return npos;
    const double fx = (p.x - lo_.x) / cell_;
    const double fy = (p.y - lo_.y) / cell_;
    // Points just outside the bounding box may still be within the 1e-12 slack.
    const double slack = 1e-9;
    if (fx < -slack || fy < -slack || fx > static_cast<double>(nx_) + slack || fy > static_cast<double>(ny_) + slack)
        return npos;
    const std::size_t i = std::min(nx_ - 1, static_cast<std::size_t>(std::max(0.0, fx)));
    const std::size_t j = std::min(ny_ - 1, static_cast<std::size_t>(std::max(0.0, fy)));
    std::array<double, 3> lambda{};
    for (std::size_t t : buckets_[j * nx_ + i])
        if (contains(mesh_.corners(t), p, lambda))
            return t;
    return npos;
}

std::size_t locate_linear(const Mesh& mesh, Point2 p) {
    std::array<double, 3> lambda{};
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
        if (contains(mesh.corners(t), p, lambda))
            return t;
    return PointLocator::npos;
}

FieldSample evaluate_in_triangle(const Mesh& mesh, std::span<const double> coeffs, std::size_t t, Point2 p) {
    const auto tri = mesh.corners(t);
    const Gradients grad = barycentric_gradients(tri);
    std::array<double, 3> lambda{};
    contains(tri, p, lambda);
    FieldSample s;
    for (int i = 0; i < 3; ++i) {
        const double c = coeffs[mesh.triangles[t][i]];
        s.value += c * lambda[i];
        s.gradient = s.gradient + c * grad[i];
    }
    return s;
}

FieldSample evaluate_field(const Mesh& mesh, std::span<const double> coeffs, Point2 p) {
    const std::size_t t = locate_linear(mesh, p);
    if (t == PointLocator::npos)
        throw std::out_of_range("evaluate_field: point " + describe(p) + " lies outside the mesh");
    return evaluate_in_triangle(mesh, coeffs, t, p);
}

FieldSample evaluate_field(const PointLocator& locator, const Mesh& mesh, std::span<const double> coeffs, Point2 p) {
    const std::size_t t = locator.locate(p);
    if (t == PointLocator::npos)
        throw std::out_of_range("evaluate_field: point " + describe(p) + " lies outside the mesh");
    return evaluate_in_triangle(mesh, coeffs, t, p);
}

}  // namespace jumpfem
