#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "jumpfem/meshgen.hpp"

namespace jumpfem {

// Triangle-style text files, 1-based indices, LF line endings:
//   .node : "<count>" then "<index> <x> <y> <marker>"   marker 0 interior, 1 boundary, 2 interface
//   .ele  : "<count>" then "<index> <v1> <v2> <v3> <region>"   region 1 or 2

void write_node(std::ostream& os, const Mesh& mesh);
void write_ele(std::ostream& os, const Mesh& mesh);

/// Writes <dir>/<basename>.node and <dir>/<basename>.ele, creating dir if needed.
void write_triangle_files(const Mesh& mesh, const std::filesystem::path& dir, const std::string& basename);

/// Reads a mesh back. tri_class is set to regular everywhere; reclassify if needed.
Mesh read_triangle_files(const std::filesystem::path& node_file, const std::filesystem::path& ele_file);

}  // namespace jumpfem
