#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hdr/config.hpp"
#include "hdr/destroy.hpp"
#include "hdr/instance.hpp"
#include "hdr/rng.hpp"
#include "hdr/tour.hpp"

namespace hdr {

/// Solver for small instances whose forced edges must be kept.
///
/// Any engine works as long as it returns a feasible tour that contains every
/// forced edge, is no worse than `warm`, and is a deterministic function of
/// (instance, warm, budget, rng state).
class RepairEngine {
 public:
  virtual ~RepairEngine() = default;
  virtual std::string name() const = 0;
  virtual Tour improve(const Instance& inst, const Tour& warm,
                       std::int64_t budget, Rng& rng) const = 0;
};

/// Iterated local search: 2-opt and Or-opt (segments of 1-3 vertices) on
/// neighbor lists with a work queue, segment-swap kicks, and accept-if-better.
/// Forced edges are never removed by any move, so every intermediate tour is
/// feasible. `budget` counts vertex neighborhood scans plus kicks.
class IlsEngine final : public RepairEngine {
 public:
  explicit IlsEngine(int neighbors = 8) : neighbors_(neighbors) {}
  std::string name() const override { return "ils"; }
  Tour improve(const Instance& inst, const Tour& warm, std::int64_t budget,
               Rng& rng) const override;

 private:
  int neighbors_;
};

/// Engine registry. Known names: "ils". Throws ContractViolation otherwise.
std::unique_ptr<RepairEngine> make_repair_engine(const RepairConfig& cfg);

/// Default work budget for a sub-problem of the given size.
std::int64_t repair_budget(const RepairConfig& cfg, int sub_n);

/// Repairs a destroyed tour: improves `warm_start` on the sub-problem while
/// keeping every temporarily fixed edge. Throws ContractViolation if the warm
/// start is not a feasible sub-tour containing them, or budget < 1.
Tour solve_subproblem(const SubProblem& sub, std::int64_t budget, Rng& rng,
                      const Tour& warm_start, const RepairEngine& engine);

/// Parent tour equivalent to `sub_tour`. Its cost equals the sub-tour's cost,
/// so the parent improves by exactly cost(warm) - cost(sub_tour).
Tour expand_solution(const SubProblem& sub, const Tour& sub_tour,
                     const Tour& parent);

/// Exact minimum tour containing every forced edge, by subset dynamic
/// programming. Throws SizeLimitError above 16 vertices and InfeasibleError
/// if no such tour exists.
Tour held_karp_forced(const Instance& inst);
Tour held_karp_forced(const SubProblem& sub);

inline constexpr int kHeldKarpMaxVertices = 16;

}  // namespace hdr
