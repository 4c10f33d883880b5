#pragma once

#include "jumpfem/problem_spec.hpp"

namespace jumpfem {

/// Unit disk, circular interface of radius r0, sigma = 0, f = 4:
///   u1(r) = a - r^2 / B1 with a = r0^2 / B1 + (1 - r0^2) / B2,   u2(r) = (1 - r^2) / B2.
/// Both u and B du/dr are continuous at r0 and u vanishes on the unit circle.
ProblemSpec radial_problem(double B1, double B2, double r0);

/// Unit square split by the vertical line x = x0 (region1 on the left), sigma = 0,
/// f = 1. u depends on x only and solves -(B u')' = 1 with u(0) = u(1) = 0; the
/// Dirichlet data is its trace, nonzero on the top and bottom edges.
ProblemSpec line_problem(double B1, double B2, double x0);

/// Unit disk with B = 1 and u = 1 - r^2. The radius-0.5 circle is kept as a
/// geometric interface but carries no jump.
ProblemSpec smooth_problem();

/// The radial solution rescaled onto the unit square: s = 2 |p - (0.5, 0.5)|
/// plays the role of r, the interface is the circle of radius r0 / 2 about the
/// square centre, f = 16 and the Dirichlet data is the trace of u.
ProblemSpec radial_unfitted_problem(double B1, double B2, double r0);

}  // namespace jumpfem
