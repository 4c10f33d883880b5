#include "jumpfem/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jumpfem {

namespace {

void require_positive(double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0))
        throw std::invalid_argument(std::string(name) + " must be a positive finite number");
}

void require_unit_open(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in (0, 1)");
}

CoefficientField constant_coefficients(double B1, double B2, double f) {
    CoefficientField c;
    c.B1 = [B1](Point2) { return B1; };
    c.B2 = [B2](Point2) { return B2; };
    c.sigma = [](Point2) { return 0.0; };
    c.f = [f](Point2, RegionId) { return f; };
    return c;
}

// u = a - k s^2 with s = scale |p - c| in region1 and (1 - s^2) / B2 in region2.
ExactSolution radial_solution(double B1, double B2, double r0, Point2 c, double scale) {
    const double a = r0 * r0 / B1 + (1.0 - r0 * r0) / B2;
    const double s2 = scale * scale;
    ExactSolution u;
    u.value1 = [=](Point2 p) { return a - s2 * dot(p - c, p - c) / B1; };
    u.value2 = [=](Point2 p) { return (1.0 - s2 * dot(p - c, p - c)) / B2; };
    u.grad1 = [=](Point2 p) { return (-2.0 * s2 / B1) * (p - c); };
    u.grad2 = [=](Point2 p) { return (-2.0 * s2 / B2) * (p - c); };
    return u;
}

}  // namespace

ProblemSpec radial_problem(double B1, double B2, double r0) {
    require_positive(B1, "B1");
    require_positive(B2, "B2");
    require_unit_open(r0, "r0");
    const Point2 origin{0.0, 0.0};
    ProblemSpec spec{DomainSpec{UnitDisk{origin, 1.0}, InterfaceCurve::make_circle(origin, r0)},
                     constant_coefficients(B1, B2, 4.0), [](Point2) { return 0.0; },
                     radial_solution(B1, B2, r0, origin, 1.0)};
    return spec;
}

ProblemSpec line_problem(double B1, double B2, double x0) {
    require_positive(B1, "B1");
    require_positive(B2, "B2");
    require_unit_open(x0, "x0");

    // Flux q(x) = B u'(x) = C - x is continuous; C follows from u(1) = 0.
    const double C = (x0 * x0 / (2.0 * B1) + (1.0 - x0 * x0) / (2.0 * B2)) / (x0 / B1 + (1.0 - x0) / B2);
    auto u1 = [=](double x) { return (C * x - 0.5 * x * x) / B1; };
    const double u_at_x0 = u1(x0);
    auto u2 = [=](double x) { return u_at_x0 + (C * (x - x0) - 0.5 * (x * x - x0 * x0)) / B2; };

    ExactSolution u;
    u.value1 = [=](Point2 p) { return u1(p.x); };
    u.value2 = [=](Point2 p) { return u2(p.x); };
    u.grad1 = [=](Point2 p) { return Point2{(C - p.x) / B1, 0.0}; };
    u.grad2 = [=](Point2 p) { return Point2{(C - p.x) / B2, 0.0}; };

    ProblemSpec spec{DomainSpec{UnitSquare{}, InterfaceCurve::make_polyline({{x0, 0.0}, {x0, 1.0}})},
                     constant_coefficients(B1, B2, 1.0), [=](Point2 p) { return p.x <= x0 ? u1(p.x) : u2(p.x); }, u};
    return spec;
}

ProblemSpec smooth_problem() {
    const Point2 origin{0.0, 0.0};
    ExactSolution u;
    u.value1 = [](Point2 p) { return 1.0 - dot(p, p); };
    u.value2 = u.value1;
    u.grad1 = [](Point2 p) { return -2.0 * p; };
    u.grad2 = u.grad1;
    ProblemSpec spec{DomainSpec{UnitDisk{origin, 1.0}, InterfaceCurve::make_circle(origin, 0.5)},
                     constant_coefficients(1.0, 1.0, 4.0), [](Point2) { return 0.0; }, u};
    return spec;
}

ProblemSpec radial_unfitted_problem(double B1, double B2, double r0) {
    require_positive(B1, "B1");
    require_positive(B2, "B2");
    require_unit_open(r0, "r0");
    const Point2 centre{0.5, 0.5};
    ExactSolution u = radial_solution(B1, B2, r0, centre, 2.0);
    // The square boundary lies outside the circle, so the trace comes from the region2 branch.
    ScalarField g = u.value2;
    ProblemSpec spec{DomainSpec{UnitSquare{}, InterfaceCurve::make_circle(centre, 0.5 * r0)},
                     constant_coefficients(B1, B2, 16.0), std::move(g), std::move(u)};
    return spec;
}

}  // namespace jumpfem
