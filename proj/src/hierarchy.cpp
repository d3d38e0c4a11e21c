#include "hdr/hierarchy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <iomanip>
#include <sstream>
#include <thread>

#include "hdr/errors.hpp"
#include "hdr/init.hpp"

namespace hdr {
namespace {

// Stream tags keep the random streams of different solver stages apart.
enum StreamTag : std::uint64_t { kInitStream = 1, kRunStream = 2, kDirectStream = 3 };

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Clock::time_point deadline_after(Clock::time_point t0, double seconds) {
  if (!std::isfinite(seconds)) return Clock::time_point::max();
  const auto budget = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(std::max(seconds, 0.0)));
  return t0 + budget;
}

bool past(Clock::time_point deadline) { return Clock::now() >= deadline; }

// Exact solve for tiny levels, the repair engine otherwise.
Tour solve_directly(const Instance& inst, const Tour& warm,
                    const SolverConfig& cfg, const RepairEngine& engine,
                    Rng& rng) {
  if (inst.size() <= kHeldKarpMaxVertices) {
    Tour exact = held_karp_forced(inst);
    return exact.cost() < warm.cost() ? exact : warm;
  }
  return engine.improve(inst, warm, repair_budget(cfg.repair, inst.size()),
                        rng);
}

// Runs k local opts from the same start, in run-index order of results.
std::vector<LocalOptResult> run_batch(const Instance& inst, const Tour& start,
                                      const SolverConfig& cfg, int epoch,
                                      int level, const LocalOptContext& ctx) {
  const int k = cfg.k;
  const std::int64_t rounds = rounds_for_level(cfg, inst.size());
  std::vector<LocalOptResult> results(k);
  auto work = [&](int run) {
    Rng rng(derive_seed({cfg.seed, kRunStream, static_cast<std::uint64_t>(epoch),
                         static_cast<std::uint64_t>(level),
                         static_cast<std::uint64_t>(run)}));
    results[run] = run_local_opt(inst, start, rounds, cfg, rng, ctx);
  };
  const int threads = std::clamp(cfg.threads, 1, k);
  if (threads == 1) {
    for (int run = 0; run < k; ++run) work(run);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int run = next++; run < k; run = next++) work(run);
    });
  }
  pool.clear();  // joins
  return results;
}

class Solver {
 public:
  Solver(const Instance& inst, const SolverConfig& cfg, SolverObserver* obs)
      : inst_(inst),
        cfg_(cfg),
        observer_(obs),
        engine_(make_repair_engine(cfg.repair)),
        t0_(Clock::now()),
        deadline_(deadline_after(t0_, cfg.time_limit)) {}

  SolveResult run() {
    stats_.hierarchy_enabled = cfg_.hierarchy_enabled;
    Rng init_rng(derive_seed({cfg_.seed, kInitStream}));
    best_ = build_initial_tour(inst_, cfg_.init, init_rng);
    stats_.init_seconds = seconds_since(t0_);
    stats_.initial_cost = best_.cost();
    stats_.trajectory.emplace_back(stats_.init_seconds, best_.cost());
    if (observer_) observer_->on_best(best_);

    int stall = 0;
    for (int epoch = 0;; ++epoch) {
      if (past(deadline_)) {
        stats_.timed_out = true;
        break;
      }
      if (cfg_.max_epochs > 0 && epoch >= cfg_.max_epochs) break;
      const Cost before = best_.cost();
      if (inst_.size() < cfg_.direct_solve_threshold) {
        direct_pass(epoch);
      } else if (cfg_.hierarchy_enabled) {
        descend(epoch);
      } else {
        flat_pass(epoch);
      }
      stats_.epochs = epoch + 1;
      stall = best_.cost() < before ? 0 : stall + 1;
      if (stall >= cfg_.max_stall_epochs) break;
    }
    if (past(deadline_)) stats_.timed_out = true;

    stats_.best_cost = best_.cost();
    stats_.total_seconds = seconds_since(t0_);
    best_.normalize();
    return {std::move(best_), std::move(stats_)};
  }

 private:
  void offer(Tour level0) {
    if (level0.cost() >= best_.cost()) return;
    best_ = std::move(level0);
    stats_.trajectory.emplace_back(seconds_since(t0_), best_.cost());
    if (observer_) observer_->on_best(best_);
  }

  Tour to_level0(Tour t, const std::deque<CompressionMap>& maps) const {
    for (auto it = maps.rbegin(); it != maps.rend(); ++it) {
      t = expand_to_parent(t, *it);
    }
    return t;
  }

  // Runs k local opts on `inst` and records the level. Returns the results.
  std::vector<LocalOptResult> local_opts(const Instance& inst,
                                         const Tour& start, int epoch,
                                         int level) {
    const auto t_level = Clock::now();
    const GridIndex index(inst);
    LocalOptContext ctx{&index, engine_.get(), deadline_, observer_};
    auto results = run_batch(inst, start, cfg_, epoch, level, ctx);

    LevelStats ls;
    ls.epoch = epoch;
    ls.level = level;
    ls.n = inst.size();
    ls.best_cost = start.cost();
    for (const auto& r : results) {
      ls.rounds += r.rounds;
      ls.improvements += r.improvements;
      ls.saturated = ls.saturated || r.saturated;
      ls.best_cost = std::min(ls.best_cost, r.tour.cost());
      if (r.timed_out) stats_.timed_out = true;
      if (observer_) observer_->on_local_optimum(inst, r.tour);
    }
    ls.seconds = seconds_since(t_level);
    stats_.total_rounds += ls.rounds;
    stats_.total_improvements += ls.improvements;
    stats_.max_level = std::max(stats_.max_level, level);
    stats_.levels.push_back(ls);
    return results;
  }

  static const Tour& best_of(const std::vector<LocalOptResult>& results) {
    const LocalOptResult* best = &results.front();
    for (const auto& r : results) {
      if (r.tour.cost() < best->tour.cost()) best = &r;
    }
    return best->tour;
  }

  void direct_pass(int epoch) {
    Rng rng(derive_seed({cfg_.seed, kDirectStream,
                         static_cast<std::uint64_t>(epoch), 0}));
    const auto t_level = Clock::now();
    Tour t = solve_directly(inst_, best_, cfg_, *engine_, rng);
    LevelStats ls;
    ls.epoch = epoch;
    ls.n = inst_.size();
    ls.best_cost = std::min(t.cost(), best_.cost());
    ls.seconds = seconds_since(t_level);
    stats_.levels.push_back(ls);
    offer(std::move(t));
  }

  // One pass without permanent fixing: k local opts from the incumbent.
  void flat_pass(int epoch) {
    auto results = local_opts(inst_, best_, epoch, 0);
    offer(best_of(results));
  }

  // One descent through the hierarchy, starting from the incumbent.
  void descend(int epoch) {
    std::deque<Instance> levels;  // compressed levels 1, 2, ...
    std::deque<CompressionMap> maps;
    const Instance* cur = &inst_;
    Tour cur_tour = best_;
    for (int level = 0;; ++level) {
      if (past(deadline_)) return;
      auto results = local_opts(*cur, cur_tour, epoch, level);
      const Tour& level_best = best_of(results);
      if (level_best.cost() < best_.cost()) offer(to_level0(level_best, maps));
      if (past(deadline_)) return;

      std::vector<Tour> tours;
      tours.reserve(results.size());
      for (auto& r : results) tours.push_back(std::move(r.tour));
      const Tour& rep = tours[representative_index(tours)];
      const auto fixed = fix_common_edges(tours);
      stats_.levels.back().fixed_edges = static_cast<int>(fixed.size());
      const int child_n = compressed_size(*cur, fixed);
      if (child_n < 3) return;  // the fixed path already determines the tour
      if (child_n == cur->size() &&
          fixed.size() == cur->forced_edges().size()) {
        return;  // nothing new to fix
      }

      Compression comp = compress_instance(*cur, fixed, rep);
      Tour child_tour = project_tour(rep, comp.map);
      if (observer_) observer_->on_compression(*cur, rep, comp, child_tour);
      levels.push_back(std::move(comp.child));
      maps.push_back(std::move(comp.map));
      cur = &levels.back();
      cur_tour = std::move(child_tour);

      if (cur->size() < cfg_.direct_solve_threshold) {
        Rng rng(derive_seed({cfg_.seed, kDirectStream,
                             static_cast<std::uint64_t>(epoch),
                             static_cast<std::uint64_t>(level + 1)}));
        const auto t_level = Clock::now();
        Tour solved = solve_directly(*cur, cur_tour, cfg_, *engine_, rng);
        LevelStats ls;
        ls.epoch = epoch;
        ls.level = level + 1;
        ls.n = cur->size();
        ls.best_cost = solved.cost();
        ls.seconds = seconds_since(t_level);
        stats_.levels.push_back(ls);
        stats_.max_level = std::max(stats_.max_level, level + 1);
        if (observer_) observer_->on_local_optimum(*cur, solved);
        if (solved.cost() < best_.cost()) offer(to_level0(std::move(solved), maps));
        return;
      }
    }
  }

  static std::size_t representative_index(const std::vector<Tour>& tours) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < tours.size(); ++i) {
      if (tours[i].cost() < tours[best].cost()) best = i;
    }
    return best;
  }

  const Instance& inst_;
  const SolverConfig& cfg_;
  SolverObserver* observer_;
  std::unique_ptr<RepairEngine> engine_;
  Clock::time_point t0_;
  Clock::time_point deadline_;
  Tour best_;
  RunStats stats_;
};

}  // namespace

void SolverConfig::validate() const {
  if (m < 2) throw ContractViolation("m must be >= 2");
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (l_divisor < 1) throw ContractViolation("l divisor must be >= 1");
  if (direct_solve_threshold < 4) {
    throw ContractViolation("direct-solve threshold must be >= 4");
  }
  if (threads < 1) throw ContractViolation("threads must be >= 1");
  if (max_stall_epochs < 1) throw ContractViolation("stall limit must be >= 1");
  if (max_epochs < 0) throw ContractViolation("epoch cap must be >= 0");
  if (!(init.samples_exponent > 0.0 && init.samples_exponent <= 1.0)) {
    throw ContractViolation("sample exponent must be in (0, 1]");
  }
  if (init.window_subpaths < 1) {
    throw ContractViolation("window must span at least one sub-path");
  }
  if (repair.budget_per_vertex < 1 || repair.neighbors < 1) {
    throw ContractViolation("repair budget and neighbor count must be >= 1");
  }
  if (std::isnan(time_limit) || time_limit < 0.0) {
    throw ContractViolation("time limit must be >= 0");
  }
}

std::int64_t rounds_for_level(const SolverConfig& cfg, int n) {
  return std::max<std::int64_t>(1, (n + cfg.l_divisor - 1) / cfg.l_divisor);
}

LocalOptResult run_local_opt(const Instance& inst, const Tour& start,
                             std::int64_t rounds, const SolverConfig& cfg,
                             Rng& rng, const LocalOptContext& ctx) {
  LocalOptResult res;
  res.tour = start;
  if (rounds <= 0) return res;
  SelectionCounters counters(inst.size());
  for (std::int64_t r = 0; r < rounds; ++r) {
    if (past(ctx.deadline)) {
      res.timed_out = true;
      break;
    }
    const Vertex center = pick_center(counters, rng);
    std::vector<Edge> deleted;
    try {
      deleted = select_edges_to_delete(inst, res.tour, center, cfg.m,
                                       *ctx.index);
    } catch (const DestroyInfeasible&) {
      res.saturated = true;
      break;
    }
    const SubProblem sub = build_subproblem(inst, res.tour, deleted);
    update_counters(counters, sub);
    if (ctx.observer) ctx.observer->on_subproblem(inst, sub, cfg.m);
    const Tour warm = sub.warm_start();
    const Tour repaired =
        solve_subproblem(sub, repair_budget(cfg.repair, sub.size()), rng, warm,
                         *ctx.engine);
    ++res.rounds;
    if (repaired.cost() < warm.cost()) {
      res.tour = expand_solution(sub, repaired, res.tour);
      ++res.improvements;
      if (ctx.observer) ctx.observer->on_accept(inst, res.tour);
    }
  }
  return res;
}

Tour run_local_opt(const Instance& inst, const Tour& start,
                   std::int64_t rounds, const SolverConfig& cfg, Rng& rng) {
  const GridIndex index(inst);
  const auto engine = make_repair_engine(cfg.repair);
  LocalOptContext ctx{&index, engine.get(), Clock::time_point::max(), nullptr};
  return run_local_opt(inst, start, rounds, cfg, rng, ctx).tour;
}

SolveResult hdr_solve(const Instance& inst, const SolverConfig& cfg,
                      SolverObserver* observer) {
  cfg.validate();
  if (inst.level() != 0 || inst.has_forced_edges()) {
    throw ContractViolation("hdr_solve expects a level-0 instance");
  }
  return Solver(inst, cfg, observer).run();
}

std::string RunStats::to_report() const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "hierarchy = " << (hierarchy_enabled ? "on" : "off") << '\n';
  os << "initial_cost = " << initial_cost << '\n';
  os << "best_cost = " << best_cost << '\n';
  os << "init_seconds = " << init_seconds << '\n';
  os << "total_seconds = " << total_seconds << '\n';
  os << "total_rounds = " << total_rounds << '\n';
  os << "total_improvements = " << total_improvements << '\n';
  os << "epochs = " << epochs << '\n';
  os << "max_level = " << max_level << '\n';
  os << "timed_out = " << (timed_out ? "true" : "false") << '\n';
  for (const auto& l : levels) {
    os << "level epoch=" << l.epoch << " level=" << l.level << " n=" << l.n
       << " rounds=" << l.rounds << " improvements=" << l.improvements
       << " fixed_edges=" << l.fixed_edges << " best_cost=" << l.best_cost
       << " seconds=" << l.seconds
       << " saturated=" << (l.saturated ? "true" : "false") << '\n';
  }
  for (const auto& [t, c] : trajectory) {
    os << "trajectory seconds=" << t << " cost=" << c << '\n';
  }
  return os.str();
}

}  // namespace hdr
