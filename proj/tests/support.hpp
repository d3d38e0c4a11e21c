#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "hdr/instance.hpp"
#include "hdr/rng.hpp"
#include "hdr/tour.hpp"

namespace hdr::testing {

// n points with integer coordinates uniform on [0, side]^2.
inline Instance random_instance(int n, std::uint64_t seed, int side = 1000) {
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = static_cast<double>(uniform_below(rng, side + 1));
    p.y = static_cast<double>(uniform_below(rng, side + 1));
  }
  return Instance(std::move(pts), Metric::kEuc2D);
}

// Random vertex-disjoint forced paths drawn along a random cyclic order,
// leaving at least one edge of that cycle free. Costs are geometric plus a
// random surcharge so they differ from the coordinates.
inline std::vector<ForcedEdge> random_forced_paths(const std::vector<Point>& pts,
                                                   Rng& rng, double density) {
  const int n = static_cast<int>(pts.size());
  std::vector<Vertex> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(cyc[i], cyc[uniform_below(rng, i + 1)]);
  }
  std::vector<ForcedEdge> forced;
  for (int i = 0; i + 1 < n; ++i) {  // the closing edge stays free
    if (uniform_unit(rng) < density) {
      const Vertex a = cyc[i], b = cyc[i + 1];
      const Cost c = geometric_cost(Metric::kEuc2D, pts[a], pts[b]) +
                     static_cast<Cost>(uniform_below(rng, 5));
      forced.push_back({a, b, c});
    }
  }
  return forced;
}

// Exhaustive optimum over tours containing every forced edge (vertex 0
// fixed first, one orientation of each cycle). Usable up to n = 10.
inline Cost brute_force_optimum(const Instance& inst) {
  const int n = inst.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  Cost best = std::numeric_limits<Cost>::max();
  do {
    if (order[1] > order[n - 1]) continue;
    bool ok = true;
    for (const auto& e : inst.forced_edges()) {
      std::vector<Vertex> pos(n);
      for (int i = 0; i < n; ++i) pos[order[i]] = i;
      const int d = std::abs(pos[e.u] - pos[e.v]);
      if (d != 1 && d != n - 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Cost c = 0;
    for (int i = 0; i < n; ++i) c += inst.edge_cost(order[i], order[(i + 1) % n]);
    best = std::min(best, c);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return best;
}

}  // namespace hdr::testing
