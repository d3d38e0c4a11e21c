#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "hdr/types.hpp"

namespace hdr {

/// Rounded Euclidean distance under the given TSPLIB metric.
/// EUC_2D rounds half up (nint), CEIL_2D takes the ceiling.
inline Cost geometric_cost(Metric metric, const Point& a, const Point& b) {
  const double d = std::sqrt(squared_distance(a, b));
  if (metric == Metric::kCeil2D) return static_cast<Cost>(std::ceil(d));
  return static_cast<Cost>(std::floor(d + 0.5));
}

/// A symmetric 2-D TSP instance, possibly carrying forced edges.
///
/// Forced edges replace the geometric distance with a stored cost and must
/// appear in every feasible tour. They form vertex-disjoint simple paths; a
/// compressed hierarchy level uses them to stand in for whole fixed segments
/// of its parent. Immutable after construction.
class Instance {
 public:
  Instance() = default;

  /// Throws ContractViolation if any invariant (n >= 3, id range, path
  /// structure, nonnegative forced costs) is violated.
  Instance(std::vector<Point> coords, Metric metric,
           std::vector<ForcedEdge> forced = {}, int level = 0,
           std::string name = {});

  int size() const { return static_cast<int>(coords_.size()); }
  Metric metric() const { return metric_; }
  int level() const { return level_; }
  const std::string& name() const { return name_; }

  std::span<const Point> coords() const { return coords_; }
  const Point& coord(Vertex v) const { return coords_[v]; }
  std::span<const ForcedEdge> forced_edges() const { return forced_; }
  bool has_forced_edges() const { return !forced_.empty(); }

  /// Checked distance: rejects out-of-range ids and u == v.
  Cost edge_cost(Vertex u, Vertex v) const;

  /// Hot-path distance without argument checks.
  Cost cost(Vertex u, Vertex v) const {
    const auto& s = slots_[u];
    if (s[0].partner == v) return s[0].cost;
    if (s[1].partner == v) return s[1].cost;
    return geometric_cost(metric_, coords_[u], coords_[v]);
  }

  bool is_forced(Vertex u, Vertex v) const {
    const auto& s = slots_[u];
    return s[0].partner == v || s[1].partner == v;
  }

  /// Number of forced edges incident to v (0, 1 or 2).
  int forced_degree(Vertex v) const {
    return (slots_[v][0].partner != kNoVertex) +
           (slots_[v][1].partner != kNoVertex);
  }

  /// i-th forced partner of v (i in {0, 1}), or kNoVertex.
  Vertex forced_partner(Vertex v, int i) const { return slots_[v][i].partner; }

 private:
  struct Slot {
    Vertex partner = kNoVertex;
    Cost cost = 0;
  };

  std::vector<Point> coords_;
  Metric metric_ = Metric::kEuc2D;
  std::vector<ForcedEdge> forced_;
  std::vector<std::array<Slot, 2>> slots_;
  int level_ = 0;
  std::string name_;
};

}  // namespace hdr
