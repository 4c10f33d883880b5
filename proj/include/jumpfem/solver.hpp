#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jumpfem/fem.hpp"

namespace jumpfem {

enum class Preconditioner { none, jacobi };

struct SolveConfig {
    double rel_tol = 1e-10;
    std::optional<std::size_t> max_iters;  // defaults to 10 n
    Preconditioner preconditioner = Preconditioner::jacobi;
};

struct SolveStats {
    std::size_t iterations = 0;
    double final_relative_residual = 0.0;
    bool breakdown = false;  // non-positive curvature: the matrix is not SPD
};

struct SolveResult {
    std::vector<double> x;
    SolveStats stats;
};

/// Thrown when CG exhausts max_iters. Carries the iterate with the smallest residual seen.
class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, std::vector<double> best, double residual)
        : std::runtime_error(what), best_iterate(std::move(best)), relative_residual(residual) {}

    std::vector<double> best_iterate;
    double relative_residual;
};

/// Preconditioned conjugate gradients from x0 = 0. Stops when ||b - Ax|| <= rel_tol ||b||.
SolveResult cg_solve(const CsrMatrix& A, const std::vector<double>& b, const SolveConfig& config = {});

inline SolveResult cg_solve(const LinearSystem& system, const SolveConfig& config = {}) {
    return cg_solve(system.matrix, system.rhs, config);
}

}  // namespace jumpfem
