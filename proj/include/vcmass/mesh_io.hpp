#pragma once

#include <iosfwd>
#include <string>

#include "vcmass/mesh.hpp"

namespace vcmass {

/// Parses the ASCII mesh document format:
///
///   #nodes
///   <x> [y] [z]          one line per node
///   #elements
///   <kind> <i0> <i1> ... one line per element, kinds as printed by to_string
///   #boundary
///   <element> <localface> <dirichlet|neumann>
///
/// Blank lines and `//` comments are ignored. Every boundary facet of the
/// element graph must be tagged exactly once. Errors carry the offending
/// 1-based line number.
Mesh load_mesh(std::istream& in);
Mesh load_mesh_file(const std::string& path);

/// Writes a mesh back in the same document format.
void write_mesh(const Mesh& mesh, std::ostream& out);

}  // namespace vcmass
