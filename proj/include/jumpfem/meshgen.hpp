#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "jumpfem/geometry.hpp"

namespace jumpfem {

enum class VertexMarker { interior = 0, boundary = 1, interface = 2 };

enum class TriClass { regular, irregular };

using Triangle = std::array<std::size_t, 3>;

struct Mesh {
    std::vector<Point2> vertices;
    std::vector<Triangle> triangles;  // counterclockwise
    std::vector<VertexMarker> vertex_marker;
    std::vector<RegionId> tri_region;
    std::vector<TriClass> tri_class;
    double h = 0.0;  // longest edge over all triangles

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_triangles() const { return triangles.size(); }
    std::array<Point2, 3> corners(std::size_t t) const {
        const auto& tri = triangles[t];
        return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
    }
};

struct MeshQualityReport {
    double h = 0.0;
    double min_inradius_ratio = 0.0;  // min over triangles of inradius / h
    std::size_t n_regular = 0;
    std::size_t n_irregular = 0;
    bool irregular_two_vertices_on_S = true;
};

/// Structured polar mesh of a disk with a concentric circular interface.
///
/// Ring k carries 6k vertices, so consecutive rings nest without hanging nodes.
/// Radial spacing is uniform on each side of the interface and at most target_h;
/// one ring sits exactly on the interface radius.
Mesh build_disk_polar_mesh(const DomainSpec& domain, double target_h);

/// Tensor grid of the unit square whose grid lines include an axis-aligned
/// interface chord. Every cell is split along its (0,0)-(1,1) diagonal.
Mesh build_square_line_mesh(const DomainSpec& domain, double target_h);

/// Uniform grid of the unit square that ignores the interface.
Mesh build_unfitted_square_mesh(const DomainSpec& domain, double target_h);

/// Irregular iff the curve passes through the triangle interior. Regions come
/// from the centroid.
Mesh classify_triangles(Mesh mesh, const InterfaceCurve& curve, double tol);

MeshQualityReport quality_report(const Mesh& mesh);

double signed_area(Point2 a, Point2 b, Point2 c);
double longest_edge(const std::array<Point2, 3>& tri);
double inradius(const std::array<Point2, 3>& tri);

struct ConformityReport {
    std::size_t interior_edges = 0;
    std::size_t boundary_edges = 0;
    std::size_t bad_edges = 0;  // shared by more than two triangles
    bool positive_areas = true;
};

ConformityReport check_conformity(const Mesh& mesh);

double total_area(const Mesh& mesh);

}  // namespace jumpfem
