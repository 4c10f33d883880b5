#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "jumpfem/meshgen.hpp"
#include "jumpfem/problem_spec.hpp"

namespace jumpfem {

/// Errors of a discrete field against an exact solution over the mesh domain.
/// h1^2 = l2^2 + h1_semi^2 and h1_regular^2 + h1_irregular^2 = h1^2.
struct ErrorReport {
    double h = 0.0;
    double l2 = 0.0;
    double h1_semi = 0.0;
    double h1 = 0.0;
    double h1_regular = 0.0;
    double h1_irregular = 0.0;
    std::size_t dof_count = 0;
};

/// Least-squares fit of ln(error) against ln(h), plain and with the error
/// divided by |ln h|^(1/2). Residuals are RMS.
struct RateFit {
    double slope = 0.0;
    double slope_with_log = 0.0;
    double residual_pure = 0.0;
    double residual_log = 0.0;
};

/// Degree-4 quadrature on every triangle. On irregular triangles each point
/// evaluates the exact-solution branch on its side of the true curve.
/// `coeffs` holds one value per vertex.
ErrorReport error_norms(const Mesh& mesh, std::span<const double> coeffs, const ExactSolution& exact,
                        const InterfaceCurve& curve, double tol);

/// err_uh.h1 / err_uI.h1. Throws std::domain_error when the interpolation error vanishes.
double cea_ratio(const ErrorReport& err_uh, const ErrorReport& err_uI);

/// Needs at least three points with 0 < h < 1 strictly decreasing and positive errors.
RateFit fit_rate(std::span<const std::pair<double, double>> pairs);

/// ln(e_k / e_{k+1}) / ln(h_k / h_{k+1}) for consecutive rows; one fewer entry than pairs.
std::vector<double> pairwise_rates(std::span<const std::pair<double, double>> pairs);

/// 1 / (2 |ln h|), the minimiser of h^(1-eps) / sqrt(eps).
double epsilon_star(double h);

/// h^(1-eps) / sqrt(eps).
double interpolation_bound_factor(double h, double eps);

}  // namespace jumpfem
