#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "jumpfem/analysis.hpp"
#include "jumpfem/fem.hpp"
#include "jumpfem/problems.hpp"
#include "jumpfem/solver.hpp"
#include "support/oracles.hpp"

using namespace jumpfem;

namespace {

const std::array<Point2, 3> kUnitRight{Point2{0.0, 0.0}, Point2{1.0, 0.0}, Point2{0.0, 1.0}};

CoefficientField constant_field(double B, double sigma, double f) {
    CoefficientField c;
    c.B1 = [B](Point2) { return B; };
    c.B2 = [B](Point2) { return B; };
    c.sigma = [sigma](Point2) { return sigma; };
    c.f = [f](Point2, RegionId) { return f; };
    return c;
}

const InterfaceCurve& far_circle() {
    static const InterfaceCurve c = InterfaceCurve::make_circle({10.0, 10.0}, 1.0);
    return c;
}

Mesh polar(double r0, double target) {
    const DomainSpec dom{UnitDisk{{0.0, 0.0}, 1.0}, InterfaceCurve::make_circle({0.0, 0.0}, r0)};
    return build_disk_polar_mesh(dom, target);
}

double integrate(const QuadratureRule& rule, const std::array<Point2, 3>& tri, int a, int b) {
    const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
    double s = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point2 p = rule.map(tri, q);
        s += rule.weights[q] * area * std::pow(p.x, a) * std::pow(p.y, b);
    }
    return s;
}

}  // namespace

TEST_CASE("quadrature rules: weights and exactness") {
    for (const QuadratureRule* rule : {&edge_midpoint_rule(), &six_point_rule()}) {
        const double wsum = std::accumulate(rule->weights.begin(), rule->weights.end(), 0.0);
        CHECK(std::abs(wsum - 1.0) <= 1e-14);
        for (const auto& l : rule->points) {
            CHECK(std::abs(l[0] + l[1] + l[2] - 1.0) <= 1e-15);
            for (double v : l)
                CHECK((v >= 0.0 && v <= 1.0));
        }
    }
    for (int a = 0; a <= 4; ++a) {
        for (int b = 0; a + b <= 4; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            const double exact = oracle::reference_monomial_integral(a, b);
            if (a + b <= 2)
                CHECK(integrate(edge_midpoint_rule(), kUnitRight, a, b) == doctest::Approx(exact).epsilon(1e-14));
            CHECK(integrate(six_point_rule(), kUnitRight, a, b) == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("barycentric gradients") {
    const Gradients g = barycentric_gradients(kUnitRight);
    CHECK(g[0].x == -1.0);
    CHECK(g[0].y == -1.0);
    CHECK(g[1].x == 1.0);
    CHECK(g[1].y == 0.0);
    CHECK(g[2].x == 0.0);
    CHECK(g[2].y == 1.0);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const std::array<Point2, 3> tri{Point2{u(rng), u(rng)}, Point2{u(rng), u(rng)}, Point2{u(rng), u(rng)}};
        if (std::abs(signed_area(tri[0], tri[1], tri[2])) < 1e-3)
            continue;
        const Gradients gr = barycentric_gradients(tri);
        const Point2 sum = gr[0] + gr[1] + gr[2];
        CHECK(std::abs(sum.x) <= 1e-10);
        CHECK(std::abs(sum.y) <= 1e-10);
        const std::array<Point2, 3> big{2.0 * tri[0], 2.0 * tri[1], 2.0 * tri[2]};
        const Gradients gb = barycentric_gradients(big);
        for (int i = 0; i < 3; ++i) {
            CHECK(gb[i].x == doctest::Approx(0.5 * gr[i].x));
            CHECK(gb[i].y == doctest::Approx(0.5 * gr[i].y));
        }
    }
    CHECK_THROWS_AS(barycentric_gradients({Point2{0, 0}, Point2{1, 1}, Point2{2, 2}}), std::invalid_argument);
}

TEST_CASE("element matrices of the unit right triangle") {
    const auto f0 = constant_field(1.0, 0.0, 0.0);
    const ElementData data0{f0, far_circle(), 1e-12};
    const ElementSystem el = element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data0);
    const double expected[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
    for (int i = 0; i < 3; ++i) {
        CHECK(el.load[i] == 0.0);
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(el.stiffness[i][j] - expected[i][j]) <= 1e-14);
    }

    const auto f1 = constant_field(1.0, 0.0, 1.0);
    const ElementData data1{f1, far_circle(), 1e-12};
    const ElementSystem el1 = element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data1);
    for (int i = 0; i < 3; ++i)
        CHECK(el1.load[i] == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    const auto f7 = constant_field(7.0, 0.0, 0.0);
    const ElementData data7{f7, far_circle(), 1e-12};
    const ElementSystem el7 = element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data7);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(el7.stiffness[i][j] == doctest::Approx(7.0 * el.stiffness[i][j]).epsilon(1e-15));
}

TEST_CASE("element mass term with sigma") {
    // int L_i L_j = area (1 + delta_ij) / 12.
    const auto f = constant_field(1.0, 3.0, 0.0);
    const ElementData data{f, far_circle(), 1e-12};
    const auto el = element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data);
    const auto f0 = constant_field(1.0, 0.0, 0.0);
    const ElementData data0{f0, far_circle(), 1e-12};
    const auto k0 = element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(el.stiffness[i][j] - k0.stiffness[i][j] ==
                  doctest::Approx(3.0 * 0.5 * (i == j ? 2.0 : 1.0) / 12.0).epsilon(1e-14));
}

TEST_CASE("element stiffness is PSD with constants in the kernel") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto f = constant_field(2.5, 0.0, 0.0);
    const ElementData data{f, far_circle(), 1e-12};
    for (int k = 0; k < 50; ++k) {
        const std::array<Point2, 3> tri{Point2{u(rng), u(rng)}, Point2{u(rng), u(rng)}, Point2{u(rng), u(rng)}};
        if (std::abs(signed_area(tri[0], tri[1], tri[2])) < 1e-2)
            continue;
        const auto el = element_matrices(tri, TriClass::regular, RegionId::region1, data);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(el.stiffness[i][0] + el.stiffness[i][1] + el.stiffness[i][2]) <= 1e-12);
        for (int s = 0; s < 20; ++s) {
            const double v[3] = {u(rng), u(rng), u(rng)};
            double form = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    form += v[i] * el.stiffness[i][j] * v[j];
            CHECK(form >= -1e-12);
        }
    }
}

TEST_CASE("coefficient positivity is enforced at quadrature points") {
    auto bad = constant_field(1.0, 0.0, 0.0);
    bad.B2 = [](Point2) { return -1.0; };
    const auto circle = InterfaceCurve::make_circle({0.0, 0.0}, 0.1);
    const ElementData data{bad, circle, 1e-12};
    CHECK_THROWS_WITH_AS(element_matrices(kUnitRight, TriClass::regular, RegionId::region2, data),
                         doctest::Contains("not positive at ("), std::domain_error);
    // Irregular triangles pick B per point: the region1 branch alone is fine only if no point is outside.
    CHECK_THROWS_AS(element_matrices(kUnitRight, TriClass::irregular, RegionId::region1, data), std::domain_error);

    auto neg_sigma = constant_field(1.0, -0.5, 0.0);
    const ElementData data2{neg_sigma, circle, 1e-12};
    CHECK_THROWS_WITH_AS(element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data2),
                         doctest::Contains("sigma"), std::domain_error);
}

TEST_CASE("irregular elements select the coefficient branch per quadrature point") {
    // Vertical line x = 0.4 through the unit right triangle; region1 on the left.
    CoefficientField c = constant_field(1.0, 0.0, 0.0);
    c.B2 = [](Point2) { return 100.0; };
    const auto line = InterfaceCurve::make_polyline({{0.4, -1.0}, {0.4, 2.0}});
    const ElementData data{c, line, 1e-12};
    const auto rule = six_point_rule();
    double expected00 = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point2 p = rule.map(kUnitRight, q);
        expected00 += rule.weights[q] * 0.5 * (p.x < 0.4 ? 1.0 : 100.0) * 2.0;
    }
    const auto el = element_matrices(kUnitRight, TriClass::irregular, RegionId::region1, data);
    CHECK(el.stiffness[0][0] == doctest::Approx(expected00).epsilon(1e-14));
}

TEST_CASE("assembly: single triangle, symmetry and constant kernel") {
    Mesh one;
    one.vertices = {kUnitRight[0], kUnitRight[1], kUnitRight[2]};
    one.vertex_marker.assign(3, VertexMarker::boundary);
    one.triangles = {{0, 1, 2}};
    one.tri_region = {RegionId::region1};
    one.tri_class = {TriClass::regular};
    const auto f = constant_field(1.0, 0.0, 1.0);
    const ElementData data{f, far_circle(), 1e-12};
    const auto sys = assemble(one, data);
    const auto el = element_matrices(kUnitRight, TriClass::regular, RegionId::region1, data);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(sys.rhs[i] == el.load[i]);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(sys.matrix.at(i, j) == el.stiffness[i][j]);
    }

    // All boundary: nothing to solve, the lifted boundary values are the answer.
    const auto reduced = apply_dirichlet(sys, one, [](Point2 p) { return p.x + 2.0 * p.y; });
    CHECK(reduced.matrix.n == 0);
    const auto sol = cg_solve(reduced);
    const auto full = expand_solution(reduced, sol.x);
    CHECK(full == std::vector<double>{0.0, 1.0, 2.0});

    const auto problem = radial_problem(1.0, 100.0, 0.5);
    const Mesh m = polar(0.5, 0.125);
    const auto big = assemble(m, problem);
    CHECK(big.matrix.is_symmetric(1e-12));
    const std::vector<double> ones(m.num_vertices(), 1.0);
    const auto prod = big.matrix.multiply(ones);
    double scale = 0.0;
    for (double v : big.matrix.values)
        scale = std::max(scale, std::abs(v));
    for (double v : prod)
        CHECK(std::abs(v) <= 1e-10 * scale);
}

TEST_CASE("assembly commutes with vertex renumbering") {
    const auto problem = radial_problem(1.0, 10.0, 0.5);
    const Mesh m = polar(0.5, 0.25);
    std::vector<std::size_t> perm(m.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937 rng(9);
    std::shuffle(perm.begin(), perm.end(), rng);

    Mesh p = m;
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        p.vertices[perm[v]] = m.vertices[v];
        p.vertex_marker[perm[v]] = m.vertex_marker[v];
    }
    for (auto& tri : p.triangles)
        for (auto& v : tri)
            v = perm[v];

    const auto a = assemble(m, problem);
    const auto b = assemble(p, problem);
    for (std::size_t i = 0; i < m.num_vertices(); ++i) {
        CHECK(b.rhs[perm[i]] == doctest::Approx(a.rhs[i]).epsilon(1e-14));
        for (std::size_t k = a.matrix.row_offsets[i]; k < a.matrix.row_offsets[i + 1]; ++k) {
            const std::size_t j = a.matrix.col_indices[k];
            CHECK(b.matrix.at(perm[i], perm[j]) == doctest::Approx(a.matrix.values[k]).epsilon(1e-14));
        }
    }
}

TEST_CASE("Dirichlet elimination") {
    const auto problem = line_problem(1.0, 1.0, 0.5);
    const DomainSpec& dom = problem.domain;
    const Mesh m = build_square_line_mesh(dom, 0.5);
    const auto full = assemble(m, problem);

    SUBCASE("one interior vertex: 1x1 system solved by hand") {
        const auto red = apply_dirichlet(full, m, [](Point2) { return 0.0; });
        REQUIRE(red.matrix.n == 1);
        // Centre vertex of the 2x2 diagonal-split grid: five-point stencil diagonal 4,
        // load = f * (support area 6 * 1/8) / 3 = 1/4.
        CHECK(red.matrix.at(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
        CHECK(red.rhs[0] == doctest::Approx(0.25).epsilon(1e-14));
        CHECK(red.rhs[0] == full.rhs[red.free_dofs[0]]);
        const auto sol = cg_solve(red);
        CHECK(sol.x[0] == doctest::Approx(0.0625).epsilon(1e-14));
    }

    SUBCASE("boundary data moves to the right-hand side") {
        const auto g = [](Point2 p) { return 1.0 + p.x; };
        const auto red = apply_dirichlet(full, m, g);
        const std::size_t c = red.free_dofs[0];
        double shifted = full.rhs[c];
        for (std::size_t v = 0; v < m.num_vertices(); ++v)
            if (m.vertex_marker[v] == VertexMarker::boundary)
                shifted -= full.matrix.at(c, v) * g(m.vertices[v]);
        CHECK(red.rhs[0] == doctest::Approx(shifted).epsilon(1e-14));
    }

    SUBCASE("reduced polar system is SPD") {
        const auto rp = radial_problem(1.0, 1e4, 0.5);
        const Mesh pm = polar(0.5, 0.125);
        const auto red = apply_dirichlet(assemble(pm, rp), pm, rp.dirichlet);
        CHECK(red.matrix.is_symmetric(1e-12));
        const auto sol = cg_solve(red);
        CHECK_FALSE(sol.stats.breakdown);
    }
}

TEST_CASE("nodal interpolation") {
    const Mesh m = polar(0.5, 0.125);
    const auto curve = InterfaceCurve::make_circle({0.0, 0.0}, 0.5);

    ExactSolution lin;
    lin.value1 = [](Point2 p) { return 3.0 * p.x - 2.0 * p.y + 1.0; };
    lin.value2 = lin.value1;
    lin.grad1 = [](Point2) { return Point2{3.0, -2.0}; };
    lin.grad2 = lin.grad1;
    const auto uI = nodal_interpolant(m, lin, curve, 1e-10);
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        CHECK(uI[v] == lin.value1(m.vertices[v]));
    const auto err = error_norms(m, uI, lin, curve, 1e-10);
    CHECK(err.h1 <= 1e-12);

    ExactSolution zero;
    zero.value1 = [](Point2) { return 0.0; };
    zero.value2 = zero.value1;
    zero.grad1 = [](Point2) { return Point2{}; };
    zero.grad2 = zero.grad1;
    const auto z = nodal_interpolant(m, zero, curve, 1e-10);
    CHECK(std::all_of(z.begin(), z.end(), [](double v) { return v == 0.0; }));

    // Both radial branches give (1 - r0^2)/B2 on the ring.
    const auto rp = radial_problem(1.0, 10.0, 0.5);
    const auto ur = nodal_interpolant(m, *rp.exact, curve, 1e-10);
    for (std::size_t v = 0; v < m.num_vertices(); ++v) {
        if (m.vertex_marker[v] != VertexMarker::interface)
            continue;
        CHECK(std::abs(rp.exact->value1(m.vertices[v]) - 0.075) <= 1e-12);
        CHECK(std::abs(rp.exact->value2(m.vertices[v]) - 0.075) <= 1e-12);
        CHECK(std::abs(ur[v] - 0.075) <= 1e-12);
    }

    ExactSolution broken = lin;
    broken.value2 = [](Point2 p) { return 3.0 * p.x - 2.0 * p.y + 1.1; };
    CHECK_THROWS_AS(nodal_interpolant(m, broken, curve, 1e-10), std::domain_error);
}

TEST_CASE("field evaluation and point location") {
    const Mesh m = polar(0.5, 0.125);
    std::vector<double> coeffs(m.num_vertices());
    for (std::size_t v = 0; v < m.num_vertices(); ++v)
        coeffs[v] = 3.0 * m.vertices[v].x - 2.0 * m.vertices[v].y + 1.0;

    for (std::size_t v = 0; v < m.num_vertices(); v += 17) {
        const auto s = evaluate_field(m, coeffs, m.vertices[v]);
        CHECK(s.value == doctest::Approx(coeffs[v]).epsilon(1e-12));
        CHECK(s.gradient.x == doctest::Approx(3.0).epsilon(1e-10));
        CHECK(s.gradient.y == doctest::Approx(-2.0).epsilon(1e-10));
    }

    // Value on a shared edge does not depend on the triangle used.
    std::mt19937 rng(1);
    std::vector<double> rough(m.num_vertices());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& c : rough)
        c = u(rng);
    const auto& t0 = m.triangles[10];
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
        if (t == 10)
            continue;
        int shared = 0;
        for (std::size_t a : t0)
            shared += std::count(m.triangles[t].begin(), m.triangles[t].end(), a);
        if (shared != 2)
            continue;
        std::vector<std::size_t> common;
        for (std::size_t a : t0)
            if (std::count(m.triangles[t].begin(), m.triangles[t].end(), a))
                common.push_back(a);
        const Point2 p = 0.3 * m.vertices[common[0]] + 0.7 * m.vertices[common[1]];
        const double va = evaluate_in_triangle(m, rough, 10, p).value;
        const double vb = evaluate_in_triangle(m, rough, t, p).value;
        CHECK(va == doctest::Approx(vb).epsilon(1e-13));
    }

    const PointLocator loc(m);
    std::uniform_real_distribution<double> w(-1.1, 1.1);
    for (int k = 0; k < 500; ++k) {
        const Point2 p{w(rng), w(rng)};
        const std::size_t a = loc.locate(p);
        const std::size_t b = locate_linear(m, p);
        CHECK((a == PointLocator::npos) == (b == PointLocator::npos));
        if (a != PointLocator::npos)
            CHECK(evaluate_field(loc, m, rough, p).value ==
                  doctest::Approx(evaluate_field(m, rough, p).value).epsilon(1e-12));
    }
    CHECK_THROWS_AS(evaluate_field(m, coeffs, {2.0, 0.0}), std::out_of_range);
    CHECK_THROWS_AS(evaluate_field(loc, m, coeffs, {2.0, 0.0}), std::out_of_range);
}

TEST_CASE("discrete Galerkin residual and coefficient scaling") {
    const auto problem = radial_problem(1.0, 100.0, 0.5);
    const Mesh m = polar(0.5, 0.0625);
    const auto red = apply_dirichlet(assemble(m, problem), m, problem.dirichlet);
    SolveConfig cfg;
    cfg.rel_tol = 1e-12;
    const auto sol = cg_solve(red, cfg);
    const auto Ax = red.matrix.multiply(sol.x);
    const double scale = norm2(red.rhs);
    for (std::size_t i = 0; i < Ax.size(); ++i)
        CHECK(std::abs(Ax[i] - red.rhs[i]) <= 1e-8 * scale);

    // Scaling B by c with f fixed scales u_h by 1/c.
    ProblemSpec scaled = problem;
    scaled.coeffs.B1 = [](Point2) { return 5.0; };
    scaled.coeffs.B2 = [](Point2) { return 500.0; };
    const auto red5 = apply_dirichlet(assemble(m, scaled), m, scaled.dirichlet);
    const auto sol5 = cg_solve(red5, cfg);
    for (std::size_t i = 0; i < sol.x.size(); ++i)
        CHECK(sol5.x[i] == doctest::Approx(sol.x[i] / 5.0).epsilon(1e-9));
}
