#include "hdr/segment_map.hpp"

#include "hdr/errors.hpp"

namespace hdr {

Vertex SegmentMap::add_vertex(Vertex parent) {
  to_parent.push_back(parent);
  path_of.push_back(-1);
  return static_cast<Vertex>(to_parent.size() - 1);
}

void SegmentMap::add_path(Vertex first, Vertex last,
                          std::span<const Vertex> vertices, Cost cost) {
  Path p;
  p.first = first;
  p.last = last;
  p.offset = static_cast<int>(path_vertices.size());
  p.length = static_cast<int>(vertices.size());
  p.cost = cost;
  path_vertices.insert(path_vertices.end(), vertices.begin(), vertices.end());
  path_of[first] = path_of[last] = static_cast<int>(paths.size());
  paths.push_back(p);
}

std::vector<Vertex> SegmentMap::expand(const Tour& contracted) const {
  const int n = contracted.size();
  if (n != size()) {
    throw ContractViolation("contracted tour size does not match the map");
  }
  std::vector<Vertex> out;
  out.reserve(parent_size);
  for (int i = 0; i < n; ++i) {
    const Vertex a = contracted.at(i);
    const Vertex b = contracted.at(i + 1 == n ? 0 : i + 1);
    const int p = path_of[a];
    if (p >= 0 && path_of[b] == p) {
      const auto vs = path(p);
      if (a == paths[p].first) {
        out.insert(out.end(), vs.begin(), vs.end() - 1);
      } else {
        out.insert(out.end(), vs.rbegin(), vs.rend() - 1);
      }
    } else {
      out.push_back(to_parent[a]);
    }
  }
  if (static_cast<int>(out.size()) != parent_size) {
    throw ContractViolation(
        "contracted tour does not traverse every fixed path edge");
  }
  return out;
}

}  // namespace hdr
