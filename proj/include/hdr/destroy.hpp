#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hdr/instance.hpp"
#include "hdr/rng.hpp"
#include "hdr/segment_map.hpp"
#include "hdr/spatial_index.hpp"
#include "hdr/tour.hpp"
#include "hdr/types.hpp"

namespace hdr {

/// How often each vertex has taken part in a destroy. Picking the center
/// among the least-used vertices spreads the search over the instance.
class SelectionCounters {
 public:
  explicit SelectionCounters(int n);

  int size() const { return static_cast<int>(count_.size()); }
  std::int64_t count(Vertex v) const { return count_[v]; }
  std::int64_t min_count() const { return min_; }

  void increment(Vertex v);

  /// Uniform draw from the vertices with the minimum count.
  Vertex pick(Rng& rng);

 private:
  void refill();

  std::vector<std::int64_t> count_;
  std::int64_t min_ = 0;
  std::vector<Vertex> pool_;    // vertices whose count == min_
  std::vector<int> pool_slot_;  // index in pool_ or -1
};

Vertex pick_center(SelectionCounters& counters, Rng& rng);

/// Up to m non-forced tour edges nearest to `center`.
///
/// Vertices are visited in k-nearest order (center first); each contributes
/// its incident non-forced tour edges not yet chosen, in canonical edge
/// order, until m edges are collected. Throws DestroyInfeasible when the tour
/// has fewer than two non-forced edges.
std::vector<Edge> select_edges_to_delete(const Instance& inst, const Tour& t,
                                         Vertex center, int m,
                                         const GridIndex& idx);

/// Bounded sub-problem left after deleting tour edges.
///
/// Sub vertices are numbered along the parent tour, so the tour inherited
/// from the parent is the identity order. Each maximal remaining segment with
/// two or more vertices becomes one temporarily fixed edge (a forced edge of
/// `instance`) whose cost is the segment's total cost; `map` records the
/// parent path behind it.
struct SubProblem {
  Instance instance;
  SegmentMap map;
  int deleted_count = 0;
  Cost deleted_cost = 0;

  int size() const { return instance.size(); }
  Cost temp_fixed_cost() const;

  /// The sub-tour induced by the parent tour.
  Tour warm_start() const;
};

/// Throws ContractViolation if a deleted edge is not a tour edge, is forced,
/// is repeated, or fewer than two edges are given.
SubProblem build_subproblem(const Instance& inst, const Tour& t,
                            std::span<const Edge> deleted);

/// Increments the counter of every parent vertex present in the sub-problem.
void update_counters(SelectionCounters& counters, const SubProblem& sub);

}  // namespace hdr
