#include "hdr/init.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hdr/errors.hpp"
#include "hdr/spatial_index.hpp"

namespace hdr {
namespace {

// A unit is either a free vertex or a maximal forced path, stored as a span
// of `vertices`.
struct Units {
  std::vector<Vertex> vertices;
  std::vector<int> offset;  // size count()+1

  int count() const { return static_cast<int>(offset.size()) - 1; }
  std::span<const Vertex> path(int u) const {
    return std::span<const Vertex>(vertices).subspan(offset[u],
                                                     offset[u + 1] - offset[u]);
  }
  Vertex head(int u) const { return vertices[offset[u]]; }
};

Units collect_units(const Instance& inst) {
  const int n = inst.size();
  Units units;
  units.offset.push_back(0);
  std::vector<char> used(n, 0);
  auto walk_from = [&](Vertex start) {
    Vertex prev = kNoVertex;
    Vertex cur = start;
    while (cur != kNoVertex && !used[cur]) {
      used[cur] = 1;
      units.vertices.push_back(cur);
      Vertex nxt = kNoVertex;
      for (int i = 0; i < 2; ++i) {
        const Vertex p = inst.forced_partner(cur, i);
        if (p != kNoVertex && p != prev && !used[p]) nxt = p;
      }
      prev = cur;
      cur = nxt;
    }
    units.offset.push_back(static_cast<int>(units.vertices.size()));
  };
  for (Vertex v = 0; v < n; ++v) {
    if (!used[v] && inst.forced_degree(v) < 2) walk_from(v);
  }
  // Whatever is left lies on a forced Hamiltonian cycle.
  for (Vertex v = 0; v < n; ++v) {
    if (!used[v]) walk_from(v);
  }
  return units;
}

// Nearest-neighbor chaining over a point set with removal, on a private grid.
class ShrinkingGrid {
 public:
  ShrinkingGrid(std::span<const Point> pts) : pts_(pts) {
    double x1 = -std::numeric_limits<double>::infinity(), y1 = x1;
    x0_ = y0_ = std::numeric_limits<double>::infinity();
    for (const Point& p : pts) {
      x0_ = std::min(x0_, p.x);
      y0_ = std::min(y0_, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    const double extent = std::max(x1 - x0_, y1 - y0_);
    side_ = extent > 0.0 ? static_cast<int>(std::ceil(
                               std::sqrt(static_cast<double>(pts.size()))))
                         : 1;
    cs_ = extent > 0.0 ? extent / side_ : 1.0;
    cells_.resize(static_cast<std::size_t>(side_) * side_);
    slot_.resize(pts.size());
    cell_.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto [cx, cy] = cell_of(pts[i]);
      cell_[i] = cy * side_ + cx;
      slot_[i] = static_cast<int>(cells_[cell_[i]].size());
      cells_[cell_[i]].push_back(static_cast<int>(i));
    }
    remaining_ = static_cast<int>(pts.size());
  }

  void remove(int i) {
    auto& c = cells_[cell_[i]];
    const int last = c.back();
    c[slot_[i]] = last;
    slot_[last] = slot_[i];
    c.pop_back();
    --remaining_;
  }

  // Nearest remaining point to pts[i]; ties by lower index.
  int nearest(int i) const {
    const Point& p = pts_[i];
    const auto [cx, cy] = cell_of(p);
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    auto scan = [&](int x, int y) {
      for (int j : cells_[y * side_ + x]) {
        const double d2 = squared_distance(p, pts_[j]);
        if (d2 < best_d2 || (d2 == best_d2 && j < best)) {
          best_d2 = d2;
          best = j;
        }
      }
    };
    for (int r = 0;; ++r) {
      const int xlo = cx - r, xhi = cx + r, ylo = cy - r, yhi = cy + r;
      for (int x = std::max(xlo, 0); x <= std::min(xhi, side_ - 1); ++x) {
        if (ylo >= 0) scan(x, ylo);
        if (r > 0 && yhi < side_) scan(x, yhi);
      }
      for (int y = std::max(ylo + 1, 0); y <= std::min(yhi - 1, side_ - 1);
           ++y) {
        if (xlo >= 0) scan(xlo, y);
        if (xhi < side_) scan(xhi, y);
      }
      double bound = std::numeric_limits<double>::infinity();
      if (xlo - 1 >= 0) bound = std::min(bound, p.x - (x0_ + xlo * cs_));
      if (xhi + 1 < side_) bound = std::min(bound, x0_ + (xhi + 1) * cs_ - p.x);
      if (ylo - 1 >= 0) bound = std::min(bound, p.y - (y0_ + ylo * cs_));
      if (yhi + 1 < side_) bound = std::min(bound, y0_ + (yhi + 1) * cs_ - p.y);
      if (bound == std::numeric_limits<double>::infinity()) break;
      bound = std::max(bound * (1.0 - 1e-12), 0.0);
      if (best >= 0 && best_d2 < bound * bound) break;
    }
    return best;
  }

  int remaining() const { return remaining_; }

 private:
  std::pair<int, int> cell_of(const Point& p) const {
    auto f = [this](double t) {
      if (!(t > 0.0)) return 0;
      const double c = std::floor(t / cs_);
      return c >= side_ ? side_ - 1 : static_cast<int>(c);
    };
    return {f(p.x - x0_), f(p.y - y0_)};
  }

  std::span<const Point> pts_;
  double x0_, y0_, cs_;
  int side_;
  int remaining_ = 0;
  std::vector<std::vector<int>> cells_;
  std::vector<int> slot_;
  std::vector<int> cell_;
};

// Bucket grid over the vertices of one 2-opt window, tracking each vertex's
// current window position.
class WindowGrid {
 public:
  WindowGrid(const Instance& inst, std::span<const Vertex> w) : inst_(inst) {
    double x1 = -std::numeric_limits<double>::infinity(), y1 = x1;
    x0_ = y0_ = std::numeric_limits<double>::infinity();
    for (Vertex v : w) {
      const Point& p = inst.coord(v);
      x0_ = std::min(x0_, p.x);
      y0_ = std::min(y0_, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
    const double extent = std::max(x1 - x0_, y1 - y0_);
    side_ = extent > 0.0
                ? std::max(1, static_cast<int>(std::sqrt(w.size() / 2.0)))
                : 1;
    cs_ = extent > 0.0 ? extent / side_ : 1.0;
    start_.assign(static_cast<std::size_t>(side_) * side_ + 1, 0);
    std::vector<int> cell(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      cell[i] = cell_index(inst.coord(w[i]));
      ++start_[cell[i] + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    members_.resize(w.size());
    auto fill = start_;
    for (std::size_t i = 0; i < w.size(); ++i) members_[fill[cell[i]]++] = w[i];
    // Scratch indexed by vertex id; only window entries are meaningful.
    thread_local std::vector<int> scratch;
    if (static_cast<int>(scratch.size()) < inst.size()) scratch.resize(inst.size());
    pos_ = scratch.data();
    for (std::size_t i = 0; i < w.size(); ++i) pos_[w[i]] = static_cast<int>(i);
  }

  void set_pos(Vertex v, int p) { pos_[v] = p; }

  // Window positions of vertices strictly closer to `a` than `radius`.
  void within(Vertex a, Cost radius, std::vector<int>& out) const {
    out.clear();
    const Point& p = inst_.coord(a);
    const double r = static_cast<double>(radius);
    const double r2 = r * r;
    const int cx0 = coord_cell(p.x - r - x0_), cx1 = coord_cell(p.x + r - x0_);
    const int cy0 = coord_cell(p.y - r - y0_), cy1 = coord_cell(p.y + r - y0_);
    for (int cy = cy0; cy <= cy1; ++cy) {
      for (int cx = cx0; cx <= cx1; ++cx) {
        const int c = cy * side_ + cx;
        for (int k = start_[c]; k < start_[c + 1]; ++k) {
          const Vertex v = members_[k];
          if (v != a && squared_distance(p, inst_.coord(v)) < r2) {
            out.push_back(pos_[v]);
          }
        }
      }
    }
  }

 private:
  int coord_cell(double t) const {
    if (!(t > 0.0)) return 0;
    const double c = std::floor(t / cs_);
    return c >= side_ ? side_ - 1 : static_cast<int>(c);
  }
  int cell_index(const Point& p) const {
    return coord_cell(p.y - y0_) * side_ + coord_cell(p.x - x0_);
  }

  const Instance& inst_;
  double x0_, y0_, cs_;
  int side_;
  std::vector<int> start_;
  std::vector<Vertex> members_;
  int* pos_ = nullptr;
};

// Appends unit u to `order`, flipping a path so its nearer end comes first.
void emit_unit(const Instance& inst, const Units& units, int u,
               std::vector<Vertex>& order) {
  const auto path = units.path(u);
  bool reverse = false;
  if (path.size() > 1 && !order.empty()) {
    const Point& last = inst.coord(order.back());
    reverse = squared_distance(last, inst.coord(path.back())) <
              squared_distance(last, inst.coord(path.front()));
  }
  if (reverse) {
    order.insert(order.end(), path.rbegin(), path.rend());
  } else {
    order.insert(order.end(), path.begin(), path.end());
  }
}

}  // namespace

Cost two_opt_window(const Instance& inst, Tour& t, int window_start,
                    int window_len) {
  const int n = t.size();
  if (window_len < 4 || window_len > n) {
    throw ContractViolation("2-opt window length must be in [4, n]");
  }
  if (window_start < 0 || window_start >= n) {
    throw ContractViolation("2-opt window start out of range");
  }
  std::vector<Vertex> w(window_len);
  for (int i = 0; i < window_len; ++i) w[i] = t.at((window_start + i) % n);
  WindowGrid grid(inst, w);

  const int last = window_len - 1;  // edges are (w[i], w[i+1]), i < last
  Cost gain_total = 0;
  // Exchanges edges (w[p], w[p+1]) and (w[q], w[q+1]), p + 2 <= q < last.
  auto try_move = [&](int p, int q) {
    if (inst.is_forced(w[p], w[p + 1]) || inst.is_forced(w[q], w[q + 1])) {
      return false;
    }
    const Cost delta = inst.cost(w[p], w[p + 1]) + inst.cost(w[q], w[q + 1]) -
                       inst.cost(w[p], w[q]) - inst.cost(w[p + 1], w[q + 1]);
    if (delta <= 0) return false;
    std::reverse(w.begin() + p + 1, w.begin() + q + 1);
    for (int k = p + 1; k <= q; ++k) grid.set_pos(w[k], k);
    gain_total += delta;
    return true;
  };

  // An improving exchange has a new edge cheaper than the removed edge it
  // shares an endpoint with, so only closer vertices need to be tried.
  std::vector<int> cand;
  auto improve_at = [&](int i) {
    const Vertex a = w[i];
    if (i < last) {
      const Cost ab = inst.cost(a, w[i + 1]);
      grid.within(a, ab, cand);
      for (int j : cand) {
        if (j >= i + 2 && j < last && inst.cost(a, w[j]) < ab && try_move(i, j)) {
          return std::pair{i, j};
        }
      }
    }
    if (i >= 1) {
      const Cost ab = inst.cost(a, w[i - 1]);
      grid.within(a, ab, cand);
      for (int j : cand) {
        if (j >= 1 && j <= i - 2 && inst.cost(a, w[j]) < ab &&
            try_move(j - 1, i - 1)) {
          return std::pair{j - 1, i - 1};
        }
      }
    }
    return std::pair{-1, -1};
  };

  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < window_len; ++i) {
      while (improve_at(i).first >= 0) improved = true;
    }
  }
  if (gain_total > 0) t.rewrite(window_start, w, t.cost() - gain_total);
  return gain_total;
}

Tour build_initial_tour(const Instance& inst, const InitConfig& cfg,
                        Rng& rng) {
  const Units units = collect_units(inst);
  const int u_count = units.count();

  std::vector<Vertex> order;
  order.reserve(inst.size());
  if (u_count <= 3) {
    for (int u = 0; u < u_count; ++u) emit_unit(inst, units, u, order);
    return Tour::from_order(inst, std::move(order));
  }

  // (1) random distinct samples.
  const int s = std::clamp(
      static_cast<int>(std::ceil(std::pow(static_cast<double>(u_count),
                                          cfg.samples_exponent) -
                                 1e-9)),
      3, u_count);
  std::vector<int> perm(u_count);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(uniform_below(rng, u_count - i));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> samples(perm.begin(), perm.begin() + s);

  // Nearest-neighbor chain over the samples.
  std::vector<Point> sample_pts(s);
  for (int i = 0; i < s; ++i) sample_pts[i] = inst.coord(units.head(samples[i]));
  std::vector<int> chain;
  chain.reserve(s);
  {
    ShrinkingGrid grid(sample_pts);
    int cur = 0;
    grid.remove(cur);
    chain.push_back(cur);
    while (grid.remaining() > 0) {
      cur = grid.nearest(cur);
      grid.remove(cur);
      chain.push_back(cur);
    }
  }

  // (2) every other unit goes behind its closest sample.
  std::vector<int> sample_slot(u_count, -1);
  std::vector<Vertex> heads(s);
  for (int i = 0; i < s; ++i) {
    sample_slot[samples[i]] = i;
    heads[i] = units.head(samples[i]);
  }
  std::vector<int> head_to_sample(inst.size(), -1);
  for (int i = 0; i < s; ++i) head_to_sample[heads[i]] = i;
  const GridIndex sample_index(inst, heads);
  std::vector<std::vector<int>> bucket(s);
  for (int u = 0; u < u_count; ++u) {
    if (sample_slot[u] >= 0) continue;
    const Vertex h = units.head(u);
    const auto near = sample_index.query_knn(inst.coord(h), 1, h);
    bucket[head_to_sample[near.front()]].push_back(u);
  }

  std::vector<int> boundary;  // tour position of each sample, in chain order
  boundary.reserve(s);
  for (int c : chain) {
    boundary.push_back(static_cast<int>(order.size()));
    emit_unit(inst, units, samples[c], order);
    for (int u : bucket[c]) emit_unit(inst, units, u, order);
  }
  Tour tour = Tour::from_order(inst, std::move(order));

  // (3) windowed 2-opt, one sweep.
  const int n = inst.size();
  const int span = std::max(1, cfg.window_subpaths);
  if (s <= span) {
    if (n >= 4) two_opt_window(inst, tour, 0, n);
    return tour;
  }
  for (int i = 0; i < s; ++i) {
    const int start = boundary[i];
    const int end = boundary[(i + span) % s];
    const int len = std::min(n, (end - start + n) % n + 1);
    if (len >= 4) two_opt_window(inst, tour, start, len);
  }
  return tour;
}

}  // namespace hdr
