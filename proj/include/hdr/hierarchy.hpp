#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdr/config.hpp"
#include "hdr/destroy.hpp"
#include "hdr/instance.hpp"
#include "hdr/repair.hpp"
#include "hdr/rng.hpp"
#include "hdr/segment_map.hpp"
#include "hdr/spatial_index.hpp"
#include "hdr/tour.hpp"

namespace hdr {

using Clock = std::chrono::steady_clock;

/// Link between a hierarchy level and the compressed level below it. Each
/// child forced edge stands for a parent path of permanently fixed edges.
struct CompressionMap {
  SegmentMap segments;         // child -> parent
  std::vector<Vertex> to_child;  // parent -> child, -1 for path interiors
};

struct Compression {
  Instance child;
  CompressionMap map;
};

/// Edges shared by every tour, canonical and sorted. When all tours are the
/// same cycle the lexicographically largest edge is dropped so the result is
/// never a full cycle. Throws ContractViolation on size mismatch or k = 0.
std::vector<Edge> fix_common_edges(std::span<const Tour> solutions);

/// Vertex count of the instance compress_instance would produce.
int compressed_size(const Instance& inst, std::span<const Edge> fixed);

/// Contracts every maximal path of `fixed` into one forced edge whose cost is
/// the path cost. Child vertices are the surviving parent vertices in
/// increasing id order. Throws ContractViolation if `fixed` is not a subset
/// of the representative's edges, omits a forced edge of `inst`, is not a
/// union of paths, or would leave fewer than 3 vertices.
Compression compress_instance(const Instance& inst, std::span<const Edge> fixed,
                              const Tour& representative);

/// Image of a parent tour (containing every fixed edge) in the child level.
/// The cost carries over unchanged.
Tour project_tour(const Tour& parent_tour, const CompressionMap& map);

/// Parent tour obtained by re-inserting every fixed path; same cost.
/// Throws ContractViolation if the child tour misses a child forced edge.
Tour expand_to_parent(const Tour& child_tour, const CompressionMap& map);

/// Hooks for instrumentation and tests. With threads > 1, on_subproblem and
/// on_accept are called from worker threads.
class SolverObserver {
 public:
  virtual ~SolverObserver() = default;
  virtual void on_subproblem(const Instance& /*level*/,
                             const SubProblem& /*sub*/, int /*m*/) {}
  virtual void on_accept(const Instance& /*level*/, const Tour& /*tour*/) {}
  virtual void on_local_optimum(const Instance& /*level*/,
                                const Tour& /*tour*/) {}
  virtual void on_compression(const Instance& /*parent*/,
                              const Tour& /*representative*/,
                              const Compression& /*result*/,
                              const Tour& /*child_tour*/) {}
  virtual void on_best(const Tour& /*level0_tour*/) {}
};

/// Shared, read-only context for the destroy-repair loop on one level.
struct LocalOptContext {
  const GridIndex* index = nullptr;
  const RepairEngine* engine = nullptr;
  Clock::time_point deadline = Clock::time_point::max();
  SolverObserver* observer = nullptr;
};

struct LocalOptResult {
  Tour tour;
  std::int64_t rounds = 0;
  std::int64_t improvements = 0;
  bool saturated = false;  // every edge of the level is fixed
  bool timed_out = false;
};

/// Accept-if-strictly-better destroy/repair loop for at most `rounds` rounds.
LocalOptResult run_local_opt(const Instance& inst, const Tour& start,
                             std::int64_t rounds, const SolverConfig& cfg,
                             Rng& rng, const LocalOptContext& ctx);

/// Convenience overload that builds its own index and engine.
Tour run_local_opt(const Instance& inst, const Tour& start,
                   std::int64_t rounds, const SolverConfig& cfg, Rng& rng);

/// Destroy-repair rounds per local opt on a level with n vertices.
std::int64_t rounds_for_level(const SolverConfig& cfg, int n);

struct LevelStats {
  int epoch = 0;
  int level = 0;
  int n = 0;
  std::int64_t rounds = 0;
  std::int64_t improvements = 0;
  int fixed_edges = 0;
  Cost best_cost = 0;
  double seconds = 0.0;
  bool saturated = false;
};

struct RunStats {
  std::vector<LevelStats> levels;
  std::vector<std::pair<double, Cost>> trajectory;  // (elapsed s, best cost)
  std::int64_t total_rounds = 0;
  std::int64_t total_improvements = 0;
  int epochs = 0;
  int max_level = 0;
  Cost initial_cost = 0;
  Cost best_cost = 0;
  double init_seconds = 0.0;
  double total_seconds = 0.0;
  bool timed_out = false;
  bool hierarchy_enabled = true;

  /// Structured key = value text, one record per line.
  std::string to_report() const;
};

struct SolveResult {
  Tour tour;
  RunStats stats;
};

/// Full hierarchical destroy-and-repair solve of a level-0 instance.
SolveResult hdr_solve(const Instance& inst, const SolverConfig& cfg,
                      SolverObserver* observer = nullptr);

}  // namespace hdr
