#include "hdr/repair.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "hdr/errors.hpp"
#include "hdr/spatial_index.hpp"

namespace hdr {
namespace {

constexpr int kMaxOrSegment = 3;
constexpr int kKickSpan = 50;
constexpr int kKickAttempts = 16;

// Array tour with a FIFO work queue of vertices whose surroundings changed.
class LocalSearch {
 public:
  LocalSearch(const Instance& inst, const Tour& warm, int neighbors)
      : inst_(inst),
        n_(inst.size()),
        order_(warm.order().begin(), warm.order().end()),
        pos_(warm.positions().begin(), warm.positions().end()),
        cost_(warm.cost()),
        queued_(n_, 0) {
    build_neighbors(neighbors);
    for (Vertex v : order_) push(v);
  }

  Cost cost() const { return cost_; }
  const std::vector<Vertex>& order() const { return order_; }

  // Processes queued vertices until the queue drains or `budget` runs out.
  void descend(std::int64_t& budget) {
    while (head_ < queue_.size() && budget > 0) {
      const Vertex a = queue_[head_++];
      queued_[a] = 0;
      --budget;
      if (try_two_opt(a) || try_or_opt(a)) push(a);
      if (head_ > 4096 && head_ * 2 > queue_.size()) {
        queue_.erase(queue_.begin(), queue_.begin() + head_);
        head_ = 0;
      }
    }
  }

  // Random perturbation touching only non-forced edges.
  void kick(Rng& rng) {
    if (n_ >= 5 && swap_segments(rng)) return;
    random_reversal(rng);
  }

  void restore(const std::vector<Vertex>& order, Cost cost) {
    order_ = order;
    for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
    cost_ = cost;
    queue_.clear();
    head_ = 0;
    std::fill(queued_.begin(), queued_.end(), 0);
  }

 private:
  Vertex next(Vertex v) const {
    const int i = pos_[v] + 1;
    return order_[i == n_ ? 0 : i];
  }
  Vertex prev(Vertex v) const {
    const int i = pos_[v];
    return order_[i == 0 ? n_ - 1 : i - 1];
  }
  Vertex step(Vertex v, bool forward) const {
    return forward ? next(v) : prev(v);
  }
  Cost d(Vertex a, Vertex b) const { return inst_.cost(a, b); }
  bool fixed(Vertex a, Vertex b) const { return inst_.is_forced(a, b); }

  void push(Vertex v) {
    if (queued_[v]) return;
    queued_[v] = 1;
    queue_.push_back(v);
  }

  void build_neighbors(int k) {
    k = std::min(k, n_ - 1);
    stride_ = k;
    neigh_.assign(static_cast<std::size_t>(n_) * k, kNoVertex);
    const GridIndex idx(inst_);
    for (Vertex v = 0; v < n_; ++v) {
      // Forced partners are never new edges; leave them out so costs along
      // the list stay nondecreasing.
      const auto near = idx.query_knn(v, k + 2);
      int filled = 0;
      for (Vertex c : near) {
        if (filled == k) break;
        if (fixed(v, c)) continue;
        neigh_[static_cast<std::size_t>(v) * k + filled++] = c;
      }
    }
  }

  std::span<const Vertex> neighbors(Vertex v) const {
    std::span<const Vertex> s(neigh_.data() + static_cast<std::size_t>(v) * stride_,
                              stride_);
    const auto end = std::find(s.begin(), s.end(), kNoVertex);
    return s.first(static_cast<std::size_t>(end - s.begin()));
  }

  // Reverses the path at positions i..j (forward, cyclic), or equivalently
  // its complement, whichever is shorter.
  void reverse_path(int i, int j) {
    int len = (j - i + n_) % n_ + 1;
    if (2 * len > n_) {
      const int ni = j + 1 == n_ ? 0 : j + 1;
      const int nj = i == 0 ? n_ - 1 : i - 1;
      i = ni;
      j = nj;
      len = n_ - len;
    }
    for (int s = 0; s < len / 2; ++s) {
      const Vertex a = order_[i];
      const Vertex b = order_[j];
      order_[i] = b;
      pos_[b] = i;
      order_[j] = a;
      pos_[a] = j;
      if (++i == n_) i = 0;
      if (--j < 0) j = n_ - 1;
    }
  }

  bool try_two_opt(Vertex a) {
    if (n_ < 4) return false;
    for (const bool forward : {true, false}) {
      const Vertex b = step(a, forward);
      if (fixed(a, b)) continue;
      const Cost dab = d(a, b);
      for (Vertex c : neighbors(a)) {
        const Cost g1 = dab - d(a, c);
        if (g1 <= 0) break;
        const Vertex e = step(c, forward);
        if (c == b || e == a || fixed(c, e)) continue;
        const Cost delta = g1 + d(c, e) - d(b, e);
        if (delta <= 0) continue;
        if (forward) {
          reverse_path(pos_[b], pos_[c]);
        } else {
          reverse_path(pos_[a], pos_[e]);
        }
        cost_ -= delta;
        push(b);
        push(c);
        push(e);
        return true;
      }
    }
    return false;
  }

  // Moves the segment that starts at `a` and extends `len` vertices in
  // direction `forward` between a neighbor c of `a` and one of c's tour
  // neighbors, so that `a` ends up next to c.
  bool try_or_opt(Vertex a) {
    for (const bool forward : {true, false}) {
      Vertex seg[kMaxOrSegment];
      seg[0] = a;
      for (int len = 1; len <= kMaxOrSegment && len + 3 <= n_; ++len) {
        if (len > 1) {
          seg[len - 1] = step(seg[len - 2], forward);
          // Segments may contain forced edges; only the cut edges matter.
        }
        const Vertex s2 = seg[len - 1];
        const Vertex p = step(a, !forward);
        const Vertex nx = step(s2, forward);
        if (fixed(p, a) || fixed(s2, nx)) continue;
        const Cost g1 = d(p, a) + d(s2, nx) - d(p, nx);
        if (g1 <= 0) continue;
        auto in_segment = [&](Vertex x) {
          const int off = forward ? (pos_[x] - pos_[a] + n_) % n_
                                  : (pos_[a] - pos_[x] + n_) % n_;
          return off < len;
        };
        for (Vertex c : neighbors(a)) {
          const Cost g2 = g1 - d(a, c);
          if (g2 <= 0) break;
          if (in_segment(c)) continue;
          for (const Vertex e : {next(c), prev(c)}) {
            if (in_segment(e) || fixed(c, e)) continue;
            if ((c == p && e == nx) || (c == nx && e == p)) continue;
            const Cost delta = g2 + d(c, e) - d(s2, e);
            if (delta <= 0) continue;
            move_segment(std::span<const Vertex>(seg, len), forward, c, e);
            cost_ -= delta;
            push(p);
            push(nx);
            push(c);
            push(e);
            push(s2);
            return true;
          }
        }
      }
    }
    return false;
  }

  // Rebuilds the order with `seg` (listed from the vertex to sit next to c)
  // placed between the adjacent vertices c and e.
  void move_segment(std::span<const Vertex> seg, bool forward, Vertex c,
                    Vertex e) {
    const int len = static_cast<int>(seg.size());
    const Vertex tail = forward ? seg.back() : seg.front();  // last in array
    std::vector<Vertex> rest;
    rest.reserve(n_);
    for (int i = 0, p = pos_[tail]; i < n_ - len; ++i) {
      if (++p == n_) p = 0;
      rest.push_back(order_[p]);
    }
    std::vector<Vertex> out;
    out.reserve(n_);
    const int m = static_cast<int>(rest.size());
    bool placed = false;
    for (int i = 0; i < m; ++i) {
      const Vertex x = rest[i];
      const Vertex y = rest[i + 1 == m ? 0 : i + 1];
      out.push_back(x);
      if (placed) continue;
      if (x == c && y == e) {
        out.insert(out.end(), seg.begin(), seg.end());
        placed = true;
      } else if (x == e && y == c) {
        out.insert(out.end(), seg.rbegin(), seg.rend());
        placed = true;
      }
    }
    order_ = std::move(out);
    for (int i = 0; i < n_; ++i) pos_[order_[i]] = i;
  }

  // Exchanges two consecutive short segments X1 X2 -> X2 X1 behind a random
  // position; three non-forced edges change.
  bool swap_segments(Rng& rng) {
    const int span = std::min(kKickSpan, n_ - 2);
    if (span < 2) return false;
    for (int attempt = 0; attempt < kKickAttempts; ++attempt) {
      const int i = static_cast<int>(uniform_below(rng, n_));
      int a = 1 + static_cast<int>(uniform_below(rng, span));
      int b = 1 + static_cast<int>(uniform_below(rng, span));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      auto at = [&](int k) { return order_[(i + k) % n_]; };
      const Vertex r0 = at(0), x1f = at(1), x1l = at(a), x2f = at(a + 1),
                   x2l = at(b), r1 = at(b + 1);
      if (fixed(r0, x1f) || fixed(x1l, x2f) || fixed(x2l, r1)) continue;
      const Cost delta = d(r0, x1f) + d(x1l, x2f) + d(x2l, r1) - d(r0, x2f) -
                         d(x2l, x1f) - d(x1l, r1);
      std::vector<Vertex> block;
      block.reserve(b);
      for (int k = a + 1; k <= b; ++k) block.push_back(at(k));
      for (int k = 1; k <= a; ++k) block.push_back(at(k));
      for (int k = 0; k < b; ++k) {
        const int p = (i + 1 + k) % n_;
        order_[p] = block[k];
        pos_[block[k]] = p;
      }
      cost_ -= delta;
      for (Vertex v : {r0, x1f, x1l, x2f, x2l, r1}) push(v);
      return true;
    }
    return false;
  }

  void random_reversal(Rng& rng) {
    if (n_ < 4) return;
    for (int attempt = 0; attempt < kKickAttempts; ++attempt) {
      int i = static_cast<int>(uniform_below(rng, n_));
      int j = static_cast<int>(uniform_below(rng, n_));
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      const Vertex a = order_[i], b = order_[i + 1], c = order_[j],
                   e = order_[(j + 1) % n_];
      if (b == c || e == a || fixed(a, b) || fixed(c, e)) continue;
      const Cost delta = d(a, b) + d(c, e) - d(a, c) - d(b, e);
      reverse_path(i + 1, j);
      cost_ -= delta;
      for (Vertex v : {a, b, c, e}) push(v);
      return;
    }
  }

  const Instance& inst_;
  int n_;
  std::vector<Vertex> order_;
  std::vector<Vertex> pos_;
  Cost cost_;
  int stride_ = 0;
  std::vector<Vertex> neigh_;
  std::vector<Vertex> queue_;
  std::size_t head_ = 0;
  std::vector<char> queued_;
};

bool contains_forced_edges(const Instance& inst, const Tour& t) {
  for (const auto& e : inst.forced_edges()) {
    if (!t.adjacent(e.u, e.v)) return false;
  }
  return true;
}

}  // namespace

Tour IlsEngine::improve(const Instance& inst, const Tour& warm,
                        std::int64_t budget, Rng& rng) const {
  if (inst.size() <= 3) return warm;
  LocalSearch ls(inst, warm, neighbors_);
  ls.descend(budget);
  std::vector<Vertex> best = ls.order();
  Cost best_cost = ls.cost();
  while (budget > 0) {
    --budget;
    ls.kick(rng);
    ls.descend(budget);
    if (ls.cost() < best_cost) {
      best = ls.order();
      best_cost = ls.cost();
    } else {
      ls.restore(best, best_cost);
    }
  }
  if (best_cost >= warm.cost()) return warm;
  return Tour::from_order_with_cost(std::move(best), best_cost);
}

std::unique_ptr<RepairEngine> make_repair_engine(const RepairConfig& cfg) {
  if (cfg.engine == "ils") return std::make_unique<IlsEngine>(cfg.neighbors);
  throw ContractViolation("unknown repair engine '" + cfg.engine + "'");
}

std::int64_t repair_budget(const RepairConfig& cfg, int sub_n) {
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(cfg.budget_per_vertex) * sub_n);
}

Tour solve_subproblem(const SubProblem& sub, std::int64_t budget, Rng& rng,
                      const Tour& warm_start, const RepairEngine& engine) {
  if (budget < 1) throw ContractViolation("repair budget must be >= 1");
  const Instance& inst = sub.instance;
  if (!validate_tour(inst, warm_start).ok() ||
      !contains_forced_edges(inst, warm_start)) {
    throw ContractViolation(
        "warm start is not a feasible sub-tour with all fixed edges");
  }
  Tour out = engine.improve(inst, warm_start, budget, rng);
  if (out.cost() > warm_start.cost() || !contains_forced_edges(inst, out)) {
    throw ContractViolation("repair engine '" + engine.name() +
                            "' broke its contract");
  }
  return out;
}

Tour expand_solution(const SubProblem& sub, const Tour& sub_tour,
                     const Tour& parent) {
  if (sub_tour.size() != sub.size() ||
      !contains_forced_edges(sub.instance, sub_tour)) {
    throw ContractViolation("sub-tour misses a temporarily fixed edge");
  }
  if (parent.size() != sub.map.parent_size) {
    throw ContractViolation("parent tour does not match the sub-problem");
  }
  return Tour::from_order_with_cost(sub.map.expand(sub_tour), sub_tour.cost());
}

}  // namespace hdr
