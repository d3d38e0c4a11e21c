#pragma once

#include <span>
#include <vector>

#include "hdr/tour.hpp"
#include "hdr/types.hpp"

namespace hdr {

/// Maps a contracted vertex set back to its parent.
///
/// Every contracted vertex corresponds to one parent vertex. Some pairs of
/// contracted vertices are joined by an edge that stands for a whole parent
/// path; the path is stored in parent order from `first`'s image to
/// `last`'s image. Used both for destroy sub-problems (temporarily fixed
/// edges) and for hierarchy levels (permanently fixed edges).
struct SegmentMap {
  struct Path {
    Vertex first = kNoVertex;
    Vertex last = kNoVertex;
    int offset = 0;
    int length = 0;  // parent vertices, endpoints included
    Cost cost = 0;
  };

  int parent_size = 0;
  std::vector<Vertex> to_parent;
  std::vector<Path> paths;
  std::vector<Vertex> path_vertices;
  std::vector<int> path_of;  // per contracted vertex, or -1

  int size() const { return static_cast<int>(to_parent.size()); }

  std::span<const Vertex> path(int p) const {
    return std::span<const Vertex>(path_vertices)
        .subspan(paths[p].offset, paths[p].length);
  }

  /// Parent vertex order obtained by walking `contracted` and replacing each
  /// path edge by its stored path, in traversal orientation. Throws
  /// ContractViolation if a path edge is missing from the contracted tour.
  std::vector<Vertex> expand(const Tour& contracted) const;

  /// Adds a contracted vertex standing for parent vertex `parent`.
  Vertex add_vertex(Vertex parent);

  /// Records the parent path `vertices` between two contracted vertices.
  void add_path(Vertex first, Vertex last, std::span<const Vertex> vertices,
                Cost cost);
};

}  // namespace hdr
