#include "jumpfem/mesh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jumpfem {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return in;
}

std::size_t read_count(std::istream& in, const std::filesystem::path& path) {
    std::size_t n = 0;
    if (!(in >> n))
        throw std::runtime_error("malformed header in " + path.string());
    return n;
}

}  // namespace

void write_node(std::ostream& os, const Mesh& mesh) {
    os << mesh.num_vertices() << '\n';
    for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
        os << v + 1 << ' ' << format_real(mesh.vertices[v].x) << ' ' << format_real(mesh.vertices[v].y) << ' '
           << static_cast<int>(mesh.vertex_marker[v]) << '\n';
    }
}

void write_ele(std::ostream& os, const Mesh& mesh) {
    os << mesh.num_triangles() << '\n';
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        os << t + 1 << ' ' << tri[0] + 1 << ' ' << tri[1] + 1 << ' ' << tri[2] + 1 << ' '
           << static_cast<int>(mesh.tri_region[t]) << '\n';
    }
}

void write_triangle_files(const Mesh& mesh, const std::filesystem::path& dir, const std::string& basename) {
    std::filesystem::create_directories(dir);
    // Binary mode keeps LF endings on every platform.
    std::ofstream node(dir / (basename + ".node"), std::ios::binary);
    std::ofstream ele(dir / (basename + ".ele"), std::ios::binary);
    if (!node || !ele)
        throw std::runtime_error("cannot write mesh files under " + dir.string());
    write_node(node, mesh);
    write_ele(ele, mesh);
}

Mesh read_triangle_files(const std::filesystem::path& node_file, const std::filesystem::path& ele_file) {
    Mesh mesh;
    auto node = open_in(node_file);
    const std::size_t nv = read_count(node, node_file);
    mesh.vertices.resize(nv);
    mesh.vertex_marker.resize(nv);
    for (std::size_t k = 0; k < nv; ++k) {
        std::size_t index = 0;
        double x = 0.0;
        double y = 0.0;
        int marker = 0;
        if (!(node >> index >> x >> y >> marker) || index < 1 || index > nv || marker < 0 || marker > 2)
            throw std::runtime_error("malformed vertex line in " + node_file.string());
        mesh.vertices[index - 1] = {x, y};
        mesh.vertex_marker[index - 1] = static_cast<VertexMarker>(marker);
    }

    auto ele = open_in(ele_file);
    const std::size_t nt = read_count(ele, ele_file);
    mesh.triangles.resize(nt);
    mesh.tri_region.resize(nt);
    mesh.tri_class.assign(nt, TriClass::regular);
    for (std::size_t k = 0; k < nt; ++k) {
        std::size_t index = 0;
        std::size_t a = 0, b = 0, c = 0;
        int region = 0;
        if (!(ele >> index >> a >> b >> c >> region) || index < 1 || index > nt || region < 1 || region > 2)
            throw std::runtime_error("malformed triangle line in " + ele_file.string());
        for (std::size_t v : {a, b, c})
            if (v < 1 || v > nv)
                throw std::runtime_error("vertex index out of range in " + ele_file.string());
        mesh.triangles[index - 1] = {a - 1, b - 1, c - 1};
        mesh.tri_region[index - 1] = static_cast<RegionId>(region);
    }
    mesh.h = 0.0;
    for (std::size_t t = 0; t < nt; ++t)
        mesh.h = std::max(mesh.h, longest_edge(mesh.corners(t)));
    return mesh;
}

}  // namespace jumpfem
