#include "jumpfem/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "jumpfem/fem.hpp"

namespace jumpfem {

namespace {

struct LineFit {
    double slope = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit fit;
    fit.slope = sxy / sxx;
    const double intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (intercept + fit.slope * x[i]);
        ss += e * e;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

void validate_pairs(std::span<const std::pair<double, double>> pairs, std::size_t min_count) {
    if (pairs.size() < min_count)
        throw std::invalid_argument("fit_rate: need at least " + std::to_string(min_count) + " (h, error) pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [h, e] = pairs[i];
        if (!(h > 0.0 && h < 1.0))
            throw std::invalid_argument("fit_rate: h must lie in (0, 1)");
        if (!(e > 0.0) || !std::isfinite(e))
            throw std::invalid_argument("fit_rate: errors must be positive");
        if (i > 0 && !(h < pairs[i - 1].first))
            throw std::invalid_argument("fit_rate: h must be strictly decreasing");
    }
}

}  // namespace

ErrorReport error_norms(const Mesh& mesh, std::span<const double> coeffs, const ExactSolution& exact,
                        const InterfaceCurve& curve, double tol) {
    if (coeffs.size() != mesh.num_vertices())
        throw std::invalid_argument("error_norms: one coefficient per vertex required");
    const QuadratureRule& rule = six_point_rule();

    double l2_sq = 0.0;
    double semi_sq = 0.0;
    double regular_sq = 0.0;
    double irregular_sq = 0.0;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = mesh.corners(t);
        const auto& idx = mesh.triangles[t];
        const Gradients grad = barycentric_gradients(tri);
        const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
        Point2 grad_h;
        for (int i = 0; i < 3; ++i)
            grad_h = grad_h + coeffs[idx[i]] * grad[i];

        const bool irregular = mesh.tri_class[t] == TriClass::irregular;
        double el_l2 = 0.0;
        double el_semi = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
            const Point2 p = rule.map(tri, q);
            const RegionId r = irregular ? select_branch(curve, p, tol, mesh.tri_region[t]) : mesh.tri_region[t];
            const auto& lam = rule.points[q];
            const double uh = lam[0] * coeffs[idx[0]] + lam[1] * coeffs[idx[1]] + lam[2] * coeffs[idx[2]];
            const double de = exact.value(p, r) - uh;
            const Point2 dg = exact.grad(p, r) - grad_h;
            const double w = rule.weights[q] * area;
            el_l2 += w * de * de;
            el_semi += w * dot(dg, dg);
        }
        l2_sq += el_l2;
        semi_sq += el_semi;
        (irregular ? irregular_sq : regular_sq) += el_l2 + el_semi;
    }

    ErrorReport rep;
    rep.h = mesh.h;
    rep.l2 = std::sqrt(l2_sq);
    rep.h1_semi = std::sqrt(semi_sq);
    rep.h1 = std::sqrt(l2_sq + semi_sq);
    rep.h1_regular = std::sqrt(regular_sq);
    rep.h1_irregular = std::sqrt(irregular_sq);
    rep.dof_count = static_cast<std::size_t>(std::count_if(mesh.vertex_marker.begin(), mesh.vertex_marker.end(),
                                                           [](VertexMarker m) { return m != VertexMarker::boundary; }));
    return rep;
}

double cea_ratio(const ErrorReport& err_uh, const ErrorReport& err_uI) {
    if (!(err_uI.h1 > 0.0))
        throw std::domain_error("exact solution is in the FE space");
    return err_uh.h1 / err_uI.h1;
}

RateFit fit_rate(std::span<const std::pair<double, double>> pairs) {
    validate_pairs(pairs, 3);
    std::vector<double> lh;
    std::vector<double> le;
    std::vector<double> le_log;
    for (const auto& [h, e] : pairs) {
        lh.push_back(std::log(h));
        le.push_back(std::log(e));
        le_log.push_back(std::log(e / std::sqrt(std::abs(std::log(h)))));
    }
    const LineFit pure = least_squares(lh, le);
    const LineFit corrected = least_squares(lh, le_log);
    return {pure.slope, corrected.slope, pure.rms, corrected.rms};
}

std::vector<double> pairwise_rates(std::span<const std::pair<double, double>> pairs) {
    validate_pairs(pairs, 1);
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        out.push_back(std::log(pairs[i].second / pairs[i + 1].second) / std::log(pairs[i].first / pairs[i + 1].first));
    return out;
}

double epsilon_star(double h) {
    if (!(h > 0.0 && h < 1.0))
        throw std::invalid_argument("epsilon_star: h must lie in (0, 1)");
    return 0.5 / std::abs(std::log(h));
}

double interpolation_bound_factor(double h, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("interpolation_bound_factor: eps must be positive");
    return std::pow(h, 1.0 - eps) / std::sqrt(eps);
}

}  // namespace jumpfem
