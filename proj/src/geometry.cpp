#include "jumpfem/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace jumpfem {

namespace {

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Number of equal pieces a length must be cut into so no piece exceeds spacing.
std::size_t pieces_for(double length, double spacing) {
    // Relative slack keeps exact ratios (pi / (pi/4) = 4) from rounding up.
    const double ratio = length / spacing;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12))));
}

}  // namespace

InterfaceCurve InterfaceCurve::make_circle(Point2 center, double radius) {
    if (!finite(center) || !std::isfinite(radius))
        throw std::invalid_argument("circle interface: non-finite center or radius");
    if (radius <= 0.0)
        throw std::invalid_argument("circle interface: radius must be positive");
    return InterfaceCurve(Circle{center, radius});
}

InterfaceCurve InterfaceCurve::make_polyline(std::vector<Point2> vertices) {
    if (vertices.size() < 2)
        throw std::invalid_argument("polyline interface: need at least two vertices");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!finite(vertices[i]))
            throw std::invalid_argument("polyline interface: non-finite vertex");
        if (i > 0 && distance(vertices[i], vertices[i - 1]) == 0.0)
            throw std::invalid_argument("polyline interface: repeated consecutive vertex");
    }
    return InterfaceCurve(Polyline{std::move(vertices)});
}

Point2 closest_point_on_segment(Point2 a, Point2 b, Point2 p) {
    const Point2 d = b - a;
    const double t = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
    return a + t * d;
}

double InterfaceCurve::signed_distance(Point2 p) const {
    if (const auto* c = std::get_if<Circle>(&kind_))
        return distance(p, c->center) - c->radius;

    const auto& v = std::get<Polyline>(kind_).vertices;
    const std::size_t nseg = v.size() - 1;

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_seg = 0;
    double best_t = 0.0;
    for (std::size_t i = 0; i < nseg; ++i) {
        const Point2 d = v[i + 1] - v[i];
        const double t = std::clamp(dot(p - v[i], d) / dot(d, d), 0.0, 1.0);
        const double dist = distance(p, v[i] + t * d);
        if (dist < best) {
            best = dist;
            best_seg = i;
            best_t = t;
        }
    }

    bool left = false;
    const bool at_start = best_t == 0.0 && best_seg > 0;
    const bool at_end = best_t == 1.0 && best_seg + 1 < nseg;
    if (at_start || at_end) {
        // Closest point is an interior corner: combine the sides of both segments.
        const std::size_t k = at_start ? best_seg : best_seg + 1;
        const Point2 din = v[k] - v[k - 1];
        const Point2 dout = v[k + 1] - v[k];
        const bool left_in = cross(din, p - v[k]) > 0.0;
        const bool left_out = cross(dout, p - v[k]) > 0.0;
        left = cross(din, dout) > 0.0 ? (left_in && left_out) : (left_in || left_out);
    } else {
        left = cross(v[best_seg + 1] - v[best_seg], p - v[best_seg]) > 0.0;
    }
    return left ? -best : best;
}

double domain_diameter(const DomainSpec& domain) {
    if (const auto* disk = std::get_if<UnitDisk>(&domain.kind))
        return 2.0 * disk->radius;
    return std::numbers::sqrt2;
}

double classification_tol(const DomainSpec& domain) { return 1e-10 * domain_diameter(domain); }

Side side_of_interface(const InterfaceCurve& curve, Point2 p, double tol) {
    const double s = curve.signed_distance(p);
    if (s < -tol)
        return Side::region1;
    if (s > tol)
        return Side::region2;
    return Side::on_interface;
}

Point2 project_to_interface(const InterfaceCurve& curve, Point2 p) {
    if (const auto* c = std::get_if<Circle>(&curve.kind())) {
        const Point2 d = p - c->center;
        const double r = norm(d);
        if (r == 0.0)
            throw std::invalid_argument("ambiguous projection: point is the circle center");
        return c->center + (c->radius / r) * d;
    }
    const auto& v = curve.polyline().vertices;
    Point2 best = v.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const Point2 q = closest_point_on_segment(v[i], v[i + 1], p);
        const double dist = distance(p, q);
        if (dist < best_dist) {
            best_dist = dist;
            best = q;
        }
    }
    return best;
}

std::vector<Point2> interface_sample_points(const InterfaceCurve& curve, double spacing) {
    if (!(spacing > 0.0))
        throw std::invalid_argument("interface_sample_points: spacing must be positive");

    std::vector<Point2> out;
    if (const auto* c = std::get_if<Circle>(&curve.kind())) {
        const std::size_t n = std::max<std::size_t>(3, pieces_for(2.0 * std::numbers::pi * c->radius, spacing));
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            out.push_back({c->center.x + c->radius * std::cos(theta), c->center.y + c->radius * std::sin(theta)});
        }
        return out;
    }

    const auto& v = curve.polyline().vertices;
    out.push_back(v.front());
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const std::size_t n = pieces_for(distance(v[i], v[i + 1]), spacing);
        for (std::size_t k = 1; k < n; ++k) {
            const double t = static_cast<double>(k) / static_cast<double>(n);
            out.push_back(v[i] + t * (v[i + 1] - v[i]));
        }
        out.push_back(v[i + 1]);
    }
    return out;
}

}  // namespace jumpfem
