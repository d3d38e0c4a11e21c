#include "hdr/destroy.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "hdr/errors.hpp"

namespace hdr {

SelectionCounters::SelectionCounters(int n) : count_(n, 0), pool_slot_(n, -1) {
  if (n <= 0) throw ContractViolation("selection counters need n > 0");
  refill();
}

void SelectionCounters::refill() {
  min_ = *std::min_element(count_.begin(), count_.end());
  pool_.clear();
  for (Vertex v = 0; v < size(); ++v) {
    if (count_[v] == min_) {
      pool_slot_[v] = static_cast<int>(pool_.size());
      pool_.push_back(v);
    } else {
      pool_slot_[v] = -1;
    }
  }
}

void SelectionCounters::increment(Vertex v) {
  ++count_[v];
  const int slot = pool_slot_[v];
  if (slot < 0) return;
  const Vertex last = pool_.back();
  pool_[slot] = last;
  pool_slot_[last] = slot;
  pool_.pop_back();
  pool_slot_[v] = -1;
  if (pool_.empty()) refill();
}

Vertex SelectionCounters::pick(Rng& rng) {
  return pool_[uniform_below(rng, pool_.size())];
}

Vertex pick_center(SelectionCounters& counters, Rng& rng) {
  return counters.pick(rng);
}

std::vector<Edge> select_edges_to_delete(const Instance& inst, const Tour& t,
                                         Vertex center, int m,
                                         const GridIndex& idx) {
  const int n = t.size();
  if (m < 2) throw ContractViolation("m must be at least 2");
  if (center < 0 || center >= n) {
    throw ContractViolation("destroy center out of range");
  }
  const int free_edges = n - static_cast<int>(inst.forced_edges().size());
  if (free_edges < 2) {
    throw DestroyInfeasible("only " + std::to_string(free_edges) +
                            " non-forced edges remain");
  }
  const int want = std::min(m, free_edges);

  std::vector<Edge> chosen;
  chosen.reserve(want);
  std::unordered_set<int> taken;  // edge (order[i], order[i+1]) keyed by i
  taken.reserve(static_cast<std::size_t>(want) * 2);

  auto visit = [&](Vertex v) {
    const Vertex a = t.prev(v);
    const Vertex b = t.next(v);
    Edge cand[2] = {Edge::canonical(v, a), Edge::canonical(v, b)};
    int key[2] = {t.pos(a), t.pos(v)};
    if (cand[1] < cand[0]) {
      std::swap(cand[0], cand[1]);
      std::swap(key[0], key[1]);
    }
    for (int i = 0; i < 2 && static_cast<int>(chosen.size()) < want; ++i) {
      if (inst.is_forced(cand[i].u, cand[i].v)) continue;
      if (!taken.insert(key[i]).second) continue;
      chosen.push_back(cand[i]);
    }
  };

  visit(center);
  std::size_t processed = 0;
  std::size_t ask = static_cast<std::size_t>(want);
  while (static_cast<int>(chosen.size()) < want) {
    const auto near = idx.query_knn(center, ask);
    for (; processed < near.size() && static_cast<int>(chosen.size()) < want;
         ++processed) {
      visit(near[processed]);
    }
    if (near.size() < ask) break;  // every member has been visited
    ask *= 2;
  }
  return chosen;
}

Cost SubProblem::temp_fixed_cost() const {
  Cost total = 0;
  for (const auto& p : map.paths) total += p.cost;
  return total;
}

Tour SubProblem::warm_start() const { return Tour::identity(instance); }

SubProblem build_subproblem(const Instance& inst, const Tour& t,
                            std::span<const Edge> deleted) {
  const int n = t.size();
  if (deleted.size() < 2) {
    throw ContractViolation("a sub-problem needs at least two deleted edges");
  }
  std::vector<int> cuts;  // edge (order[i], order[i+1]) is cut
  cuts.reserve(deleted.size());
  Cost deleted_cost = 0;
  for (const Edge& e : deleted) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw ContractViolation("deleted edge has invalid endpoints");
    }
    if (inst.is_forced(e.u, e.v)) {
      throw ContractViolation("forced edge (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) + ") cannot be deleted");
    }
    if (t.next(e.u) == e.v) {
      cuts.push_back(t.pos(e.u));
    } else if (t.next(e.v) == e.u) {
      cuts.push_back(t.pos(e.v));
    } else {
      throw ContractViolation("deleted edge (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) + ") is not a tour edge");
    }
    deleted_cost += inst.cost(e.u, e.v);
  }
  std::sort(cuts.begin(), cuts.end());
  if (std::adjacent_find(cuts.begin(), cuts.end()) != cuts.end()) {
    throw ContractViolation("deleted edges contain a duplicate");
  }

  SubProblem sub;
  sub.deleted_count = static_cast<int>(cuts.size());
  sub.deleted_cost = deleted_cost;
  SegmentMap& map = sub.map;
  map.parent_size = n;
  const int r = static_cast<int>(cuts.size());
  map.to_parent.reserve(2 * r);
  map.path_of.reserve(2 * r);

  std::vector<Vertex> path;
  std::vector<ForcedEdge> fixed;
  for (int i = 0; i < r; ++i) {
    const int begin = cuts[i] + 1;
    const int end = i + 1 < r ? cuts[i + 1] : cuts[0] + n;  // inclusive
    if (begin == end) {
      map.add_vertex(t.at(begin % n));
      continue;
    }
    path.clear();
    Cost cost = 0;
    for (int p = begin; p <= end; ++p) {
      const Vertex v = t.at(p % n);
      if (!path.empty()) cost += inst.cost(path.back(), v);
      path.push_back(v);
    }
    const Vertex first = map.add_vertex(path.front());
    const Vertex last = map.add_vertex(path.back());
    map.add_path(first, last, path, cost);
    fixed.push_back({first, last, cost});
  }
  std::vector<Point> coords;
  coords.reserve(map.to_parent.size());
  for (Vertex p : map.to_parent) coords.push_back(inst.coord(p));
  sub.instance =
      Instance(std::move(coords), inst.metric(), std::move(fixed), inst.level());
  return sub;
}

void update_counters(SelectionCounters& counters, const SubProblem& sub) {
  for (Vertex p : sub.map.to_parent) counters.increment(p);
}

}  // namespace hdr
