#include "vcmass/mesh_io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "vcmass/errors.hpp"

namespace vcmass {

namespace {

enum class Section { none, nodes, elements, boundary };

ElementKind kind_from_string(const std::string& s, int line) {
  if (s == "interval") return ElementKind::interval;
  if (s == "triangle") return ElementKind::triangle;
  if (s == "quad") return ElementKind::quad;
  if (s == "hex") return ElementKind::hex;
  throw MeshParseError("unknown element kind '" + s + "'", line);
}

BoundaryTag tag_from_string(const std::string& s, int line) {
  if (s == "dirichlet") return BoundaryTag::dirichlet;
  if (s == "neumann") return BoundaryTag::neumann;
  throw MeshParseError("unknown boundary tag '" + s + "'", line);
}

std::string strip_comment(const std::string& raw) {
  const auto pos = raw.find("//");
  return pos == std::string::npos ? raw : raw.substr(0, pos);
}

}  // namespace

Mesh load_mesh(std::istream& in) {
  Mesh mesh;
  std::vector<Eigen::VectorXd> nodes;
  struct TagRecord {
    int face;
    BoundaryTag tag;
    int line;
  };
  std::map<std::pair<int, int>, TagRecord> tags;
  Section section = Section::none;
  int boundary_header_line = 0;

  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::istringstream ss(strip_comment(raw));
    std::string first;
    if (!(ss >> first)) continue;

    if (first == "#nodes") {
      section = Section::nodes;
      continue;
    }
    if (first == "#elements") {
      section = Section::elements;
      continue;
    }
    if (first == "#boundary") {
      section = Section::boundary;
      boundary_header_line = line;
      continue;
    }
    if (first.starts_with("#"))
      throw MeshParseError("unknown section header '" + first + "'", line);

    switch (section) {
      case Section::none:
        throw MeshParseError("data before any section header", line);
      case Section::nodes: {
        std::vector<double> coords;
        std::istringstream cs(strip_comment(raw));
        double v;
        while (cs >> v) coords.push_back(v);
        if (!cs.eof()) throw MeshParseError("malformed node coordinates", line);
        if (coords.empty() || coords.size() > 3)
          throw MeshParseError("node must list 1 to 3 coordinates", line);
        if (!nodes.empty() && static_cast<int>(coords.size()) != nodes.front().size())
          throw MeshParseError("inconsistent coordinate count", line);
        nodes.push_back(Eigen::Map<Eigen::VectorXd>(coords.data(), coords.size()));
        break;
      }
      case Section::elements: {
        const ElementKind kind = kind_from_string(first, line);
        MeshElement el{kind, {}};
        int idx;
        while (ss >> idx) el.nodes.push_back(idx);
        if (!ss.eof()) throw MeshParseError("malformed element record", line);
        if (static_cast<int>(el.nodes.size()) != kind_vertex_count(kind))
          throw MeshParseError(to_string(kind) + " element needs " +
                                   std::to_string(kind_vertex_count(kind)) + " nodes",
                               line);
        for (int nd : el.nodes)
          if (nd < 0 || nd >= static_cast<int>(nodes.size()))
            throw MeshParseError("node index " + std::to_string(nd) + " out of range", line);
        mesh.elements.push_back(std::move(el));
        break;
      }
      case Section::boundary: {
        int element = -1, face = -1;
        std::string tag_name;
        std::istringstream bs(strip_comment(raw));
        if (!(bs >> element >> face >> tag_name))
          throw MeshParseError("boundary record needs 'element face tag'", line);
        if (element < 0 || element >= static_cast<int>(mesh.elements.size()))
          throw MeshParseError("element index out of range", line);
        if (face < 0 || face >= kind_face_count(mesh.elements[element].kind))
          throw MeshParseError("face index out of range", line);
        const BoundaryTag tag = tag_from_string(tag_name, line);
        if (!tags.try_emplace({element, face}, TagRecord{face, tag, line}).second)
          throw MeshParseError("duplicate boundary tag", line);
        break;
      }
    }
  }

  if (nodes.empty()) throw MeshParseError("document lists no nodes", line);
  if (mesh.elements.empty()) throw MeshParseError("document lists no elements", line);

  mesh.dim = static_cast<int>(nodes.front().size());
  mesh.nodes.resize(static_cast<int>(nodes.size()), mesh.dim);
  for (int i = 0; i < mesh.nodes.rows(); ++i) mesh.nodes.row(i) = nodes[i].transpose();

  try {
    mesh.build_facets(nullptr);
  } catch (const std::invalid_argument& err) {
    throw MeshParseError(err.what(), line);
  }

  for (BoundaryFacet& b : mesh.boundary_facets) {
    const auto it = tags.find({b.element, b.face});
    if (it == tags.end())
      throw MeshParseError("untagged boundary facet: element " + std::to_string(b.element) +
                               " face " + std::to_string(b.face),
                           boundary_header_line ? boundary_header_line : line);
    b.tag = it->second.tag;
    tags.erase(it);
  }
  if (!tags.empty()) {
    const auto& [key, rec] = *tags.begin();
    throw MeshParseError("boundary tag does not refer to a boundary facet", rec.line);
  }
  return mesh;
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open mesh file: " + path);
  try {
    return load_mesh(in);
  } catch (const MeshParseError& err) {
    throw MeshParseError(path + ": " + err.raw_message(), err.line());
  }
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << std::setprecision(17);
  out << "#nodes\n";
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    for (int d = 0; d < mesh.dim; ++d) out << (d ? " " : "") << mesh.nodes(i, d);
    out << "\n";
  }
  out << "#elements\n";
  for (const MeshElement& el : mesh.elements) {
    out << to_string(el.kind);
    for (int nd : el.nodes) out << " " << nd;
    out << "\n";
  }
  out << "#boundary\n";
  for (const BoundaryFacet& b : mesh.boundary_facets)
    out << b.element << " " << b.face << " " << to_string(b.tag) << "\n";
}

}  // namespace vcmass
