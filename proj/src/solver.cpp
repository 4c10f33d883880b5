#include "jumpfem/solver.hpp"

#include <cmath>

namespace jumpfem {

namespace {

void validate(const SolveConfig& config) {
    if (!(config.rel_tol > 0.0 && config.rel_tol < 1.0))
        throw std::invalid_argument("cg_solve: rel_tol must lie in (0, 1)");
    if (config.max_iters && *config.max_iters < 1)
        throw std::invalid_argument("cg_solve: max_iters must be at least 1");
}

double relative_residual(const CsrMatrix& A, const std::vector<double>& b, const std::vector<double>& x,
                         double bnorm) {
    std::vector<double> r = A.multiply(x);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = b[i] - r[i];
    return norm2(r) / bnorm;
}

}  // namespace

SolveResult cg_solve(const CsrMatrix& A, const std::vector<double>& b, const SolveConfig& config) {
    validate(config);
    const std::size_t n = A.n;
    if (b.size() != n)
        throw std::invalid_argument("cg_solve: right-hand side size mismatch");
    for (double v : b)
        if (!std::isfinite(v))
            throw std::invalid_argument("cg_solve: non-finite right-hand side");

    SolveResult result;
    result.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (n == 0 || bnorm == 0.0)
        return result;

    std::vector<double> inv_diag(n, 1.0);
    if (config.preconditioner == Preconditioner::jacobi) {
        const auto d = A.diagonal();
        for (std::size_t i = 0; i < n; ++i) {
            if (!(d[i] > 0.0)) {
                result.stats.breakdown = true;
                result.stats.final_relative_residual = 1.0;
                return result;
            }
            inv_diag[i] = 1.0 / d[i];
        }
    }

    const std::size_t max_iters = config.max_iters.value_or(10 * n);
    std::vector<double>& x = result.x;
    std::vector<double> r = b;
    std::vector<double> z(n);
    std::vector<double> q(n);
    for (std::size_t i = 0; i < n; ++i)
        z[i] = inv_diag[i] * r[i];
    std::vector<double> p = z;
    double rz = dot(r, z);

    std::vector<double> best = x;
    double best_res = 1.0;

    for (std::size_t it = 1; it <= max_iters; ++it) {
        A.multiply(p, q);
        const double curvature = dot(p, q);
        if (!(curvature > 0.0)) {
            result.stats.iterations = it;
            result.stats.breakdown = true;
            result.stats.final_relative_residual = relative_residual(A, b, x, bnorm);
            return result;
        }
        const double alpha = rz / curvature;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        const double res = norm2(r) / bnorm;
        if (res <= config.rel_tol) {
            result.stats.iterations = it;
            result.stats.final_relative_residual = relative_residual(A, b, x, bnorm);
            return result;
        }
        if (res < best_res) {
            best_res = res;
            best = x;
        }
        for (std::size_t i = 0; i < n; ++i)
            z[i] = inv_diag[i] * r[i];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = z[i] + beta * p[i];
    }

    const double final_res = relative_residual(A, b, best, bnorm);
    throw SolveError("cg_solve: no convergence within " + std::to_string(max_iters) +
                         " iterations (relative residual " + std::to_string(final_res) + ")",
                     std::move(best), final_res);
}

}  // namespace jumpfem
