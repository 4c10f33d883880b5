#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "jumpfem/meshgen.hpp"
#include "jumpfem/problem_spec.hpp"
#include "jumpfem/sparse.hpp"

namespace jumpfem {

/// Triangle quadrature in barycentric coordinates; weights are relative to the area.
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    Point2 map(const std::array<Point2, 3>& tri, std::size_t q) const {
        const auto& l = points[q];
        return {l[0] * tri[0].x + l[1] * tri[1].x + l[2] * tri[2].x, l[0] * tri[0].y + l[1] * tri[1].y + l[2] * tri[2].y};
    }
};

/// Edge-midpoint rule, exact for quadratics.
const QuadratureRule& edge_midpoint_rule();
/// Six-point symmetric rule, exact for quartics.
const QuadratureRule& six_point_rule();

using Gradients = std::array<Point2, 3>;

/// Constant gradients of the barycentric coordinates L1, L2, L3.
Gradients barycentric_gradients(const std::array<Point2, 3>& tri);

struct ElementSystem {
    std::array<std::array<double, 3>, 3> stiffness{};
    std::array<double, 3> load{};
};

/// Context shared by all elements of one assembly.
struct ElementData {
    const CoefficientField& coeffs;
    const InterfaceCurve& curve;
    double tol;
    const QuadratureRule& rule_regular = edge_midpoint_rule();
    const QuadratureRule& rule_irregular = six_point_rule();
};

/// Local stiffness  int_K B grad L_i . grad L_j + sigma L_i L_j  and load  int_K f L_i.
/// On irregular elements each quadrature point picks its coefficient branch from
/// the true curve. Throws std::domain_error if B <= 0 or sigma < 0 at a quadrature point.
ElementSystem element_matrices(const std::array<Point2, 3>& tri, TriClass cls, RegionId region,
                               const ElementData& data);

/// Vertex-indexed system. After apply_dirichlet, `free_dofs[k]` is the mesh
/// vertex of unknown k and `lifted` carries the boundary values on the full
/// vertex set (zero at free vertices).
struct LinearSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    std::vector<std::size_t> free_dofs;
    std::vector<double> lifted;
};

LinearSystem assemble(const Mesh& mesh, const ProblemSpec& problem);

/// Assembly with explicit coefficients; used when the mesh is not tied to a ProblemSpec.
LinearSystem assemble(const Mesh& mesh, const ElementData& data);

/// Eliminates boundary vertices, moving g(v_j) A_ij to the right-hand side.
LinearSystem apply_dirichlet(const LinearSystem& full, const Mesh& mesh, const ScalarField& g);

/// Full vertex vector from reduced unknowns.
std::vector<double> expand_solution(const LinearSystem& reduced, std::span<const double> x);

/// u(vertex) for every vertex; interface vertices check that both branches agree within 1e-9.
std::vector<double> nodal_interpolant(const Mesh& mesh, const ExactSolution& exact, const InterfaceCurve& curve,
                                      double tol);

struct FieldSample {
    double value = 0.0;
    Point2 gradient;
};

/// Uniform-grid bucket index over triangle bounding boxes.
class PointLocator {
public:
    explicit PointLocator(const Mesh& mesh);

    /// Triangle containing p (barycentric coordinates >= -1e-12), or npos.
    std::size_t locate(Point2 p) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    const Mesh& mesh_;
    Point2 lo_;
    double cell_ = 1.0;
    std::size_t nx_ = 1;
    std::size_t ny_ = 1;
    std::vector<std::vector<std::size_t>> buckets_;
};

/// Triangle containing p by linear scan, or PointLocator::npos.
std::size_t locate_linear(const Mesh& mesh, Point2 p);

FieldSample evaluate_in_triangle(const Mesh& mesh, std::span<const double> coeffs, std::size_t t, Point2 p);

/// Linear-scan evaluation. Throws std::out_of_range if p lies outside the mesh.
FieldSample evaluate_field(const Mesh& mesh, std::span<const double> coeffs, Point2 p);
FieldSample evaluate_field(const PointLocator& locator, const Mesh& mesh, std::span<const double> coeffs, Point2 p);

}  // namespace jumpfem
