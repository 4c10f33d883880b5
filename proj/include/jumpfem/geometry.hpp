#pragma once

#include <cmath>
#include <variant>
#include <vector>

namespace jumpfem {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

enum class RegionId { region1 = 1, region2 = 2 };

enum class Side { region1, region2, on_interface };

struct Circle {
    Point2 center;
    double radius = 0.0;
};

/// Open oriented polyline. Region1 lies to its left.
struct Polyline {
    std::vector<Point2> vertices;
};

/// The discontinuity curve S. Construct through make_circle / make_polyline,
/// which enforce the geometric invariants.
class InterfaceCurve {
public:
    using Kind = std::variant<Circle, Polyline>;

    static InterfaceCurve make_circle(Point2 center, double radius);
    static InterfaceCurve make_polyline(std::vector<Point2> vertices);

    const Kind& kind() const { return kind_; }
    bool is_circle() const { return std::holds_alternative<Circle>(kind_); }
    const Circle& circle() const { return std::get<Circle>(kind_); }
    const Polyline& polyline() const { return std::get<Polyline>(kind_); }

    /// Signed distance: negative on the region1 side.
    double signed_distance(Point2 p) const;

private:
    explicit InterfaceCurve(Kind kind) : kind_(std::move(kind)) {}
    Kind kind_;
};

struct UnitDisk {
    Point2 center{0.0, 0.0};
    double radius = 1.0;
};

/// [0,1]^2
struct UnitSquare {};

struct DomainSpec {
    std::variant<UnitDisk, UnitSquare> kind;
    InterfaceCurve interface;
};

double domain_diameter(const DomainSpec& domain);

/// Absolute classification tolerance used for meshing and quadrature: 1e-10 x diameter.
double classification_tol(const DomainSpec& domain);

Side side_of_interface(const InterfaceCurve& curve, Point2 p, double tol);

Point2 project_to_interface(const InterfaceCurve& curve, Point2 p);

/// Points on the curve with arc-length gaps no larger than `spacing`. Polyline
/// vertices always appear. A circle yields an open list (the first point is not repeated).
std::vector<Point2> interface_sample_points(const InterfaceCurve& curve, double spacing);

/// Closest point to `p` on segment [a, b].
Point2 closest_point_on_segment(Point2 a, Point2 b, Point2 p);

}  // namespace jumpfem
