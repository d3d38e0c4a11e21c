#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <vector>

#include "hdr/errors.hpp"
#include "hdr/repair.hpp"

namespace hdr {

// Paths start at vertex 0 and grow one vertex at a time. Forced adjacency is
// enforced on the fly:
//  - leaving u for v: every forced partner of u not yet visited must be v;
//  - entering v from u: every forced partner of v already visited must be u,
//    except vertex 0, which may only be reached by the closing edge.
// If 0 has a forced partner the path is oriented to take it first.
Tour held_karp_forced(const Instance& inst) {
  const int n = inst.size();
  if (n > kHeldKarpMaxVertices) {
    throw SizeLimitError("exact solver is limited to " +
                         std::to_string(kHeldKarpMaxVertices) +
                         " vertices, got " + std::to_string(n));
  }
  constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;
  const int full = (1 << n) - 1;
  std::vector<Cost> dp;
  dp.assign(static_cast<std::size_t>(full + 1) * n, kInf);
  std::vector<std::int8_t> from(dp.size(), -1);
  auto at = [n](int mask, int v) { return static_cast<std::size_t>(mask) * n + v; };

  auto partners = [&](Vertex v) {
    std::array<Vertex, 2> p{inst.forced_partner(v, 0), inst.forced_partner(v, 1)};
    return p;
  };
  auto can_leave = [&](int mask, Vertex u, Vertex v) {
    for (Vertex f : partners(u)) {
      if (f != kNoVertex && !(mask >> f & 1) && f != v) return false;
    }
    return true;
  };
  auto can_enter = [&](int mask, Vertex u, Vertex v) {
    const bool last = (mask | (1 << v)) == full;
    for (Vertex f : partners(v)) {
      if (f == kNoVertex || !(mask >> f & 1) || f == u) continue;
      if (f == 0 && last) continue;
      return false;
    }
    return true;
  };

  const Vertex first_partner = inst.forced_partner(0, 0);
  for (Vertex v = 1; v < n; ++v) {
    if (first_partner != kNoVertex && v != first_partner) continue;
    if (!can_enter(1, 0, v)) continue;
    dp[at(1 | (1 << v), v)] = inst.cost(0, v);
    from[at(1 | (1 << v), v)] = 0;
  }
  for (int mask = 1; mask <= full; mask += 2) {
    for (Vertex u = 1; u < n; ++u) {
      if (!(mask >> u & 1)) continue;
      const Cost base = dp[at(mask, u)];
      if (base >= kInf) continue;
      for (Vertex v = 1; v < n; ++v) {
        if (mask >> v & 1) continue;
        if (!can_leave(mask, u, v) || !can_enter(mask, u, v)) continue;
        const int next = mask | (1 << v);
        const Cost c = base + inst.cost(u, v);
        if (c < dp[at(next, v)]) {
          dp[at(next, v)] = c;
          from[at(next, v)] = static_cast<std::int8_t>(u);
        }
      }
    }
  }

  Cost best = kInf;
  Vertex last = kNoVertex;
  for (Vertex u = 1; u < n; ++u) {
    const Cost base = dp[at(full, u)];
    if (base >= kInf) continue;
    const Cost c = base + inst.cost(u, 0);
    if (c < best) {
      best = c;
      last = u;
    }
  }
  if (last == kNoVertex) {
    throw InfeasibleError("no tour contains every forced edge");
  }
  std::vector<Vertex> order(n);
  int mask = full;
  Vertex v = last;
  for (int i = n - 1; i >= 1; --i) {
    order[i] = v;
    const Vertex u = from[at(mask, v)];
    mask &= ~(1 << v);
    v = u;
  }
  order[0] = 0;
  return Tour::from_order_with_cost(std::move(order), best);
}

Tour held_karp_forced(const SubProblem& sub) {
  return held_karp_forced(sub.instance);
}

}  // namespace hdr
