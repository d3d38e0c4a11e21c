#include <algorithm>
#include <array>
#include <string>

#include "hdr/errors.hpp"
#include "hdr/hierarchy.hpp"

namespace hdr {
namespace {

// Up to two fixed neighbors per vertex; throws if a vertex has more.
std::vector<std::array<Vertex, 2>> fixed_adjacency(int n,
                                                   std::span<const Edge> fixed) {
  std::vector<std::array<Vertex, 2>> adj(n, {kNoVertex, kNoVertex});
  for (const Edge& e : fixed) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n || e.u == e.v) {
      throw ContractViolation("fixed edge has invalid endpoints");
    }
    for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      auto& slot = adj[a];
      if (slot[0] == b || slot[1] == b) {
        throw ContractViolation("duplicate fixed edge");
      }
      if (slot[0] == kNoVertex) {
        slot[0] = b;
      } else if (slot[1] == kNoVertex) {
        slot[1] = b;
      } else {
        throw ContractViolation("fixed edges are not a union of paths");
      }
    }
  }
  return adj;
}

int degree(const std::array<Vertex, 2>& s) {
  return (s[0] != kNoVertex) + (s[1] != kNoVertex);
}

}  // namespace

std::vector<Edge> fix_common_edges(std::span<const Tour> solutions) {
  if (solutions.empty()) {
    throw ContractViolation("need at least one tour to intersect");
  }
  const int n = solutions.front().size();
  for (const Tour& t : solutions) {
    if (t.size() != n) {
      throw ContractViolation("tours are over instances of different sizes");
    }
  }
  std::vector<Edge> common;
  const Tour& first = solutions.front();
  for (int i = 0; i < n; ++i) {
    const Vertex a = first.at(i);
    const Vertex b = first.at(i + 1 == n ? 0 : i + 1);
    bool everywhere = true;
    for (std::size_t t = 1; t < solutions.size() && everywhere; ++t) {
      everywhere = solutions[t].adjacent(a, b);
    }
    if (everywhere) common.push_back(Edge::canonical(a, b));
  }
  std::sort(common.begin(), common.end());
  if (static_cast<int>(common.size()) == n) common.pop_back();
  return common;
}

int compressed_size(const Instance& inst, std::span<const Edge> fixed) {
  const auto adj = fixed_adjacency(inst.size(), fixed);
  int kept = 0;
  for (const auto& s : adj) kept += degree(s) < 2;
  return kept;
}

Compression compress_instance(const Instance& inst, std::span<const Edge> fixed,
                              const Tour& representative) {
  const int n = inst.size();
  if (representative.size() != n) {
    throw ContractViolation("representative tour does not match instance");
  }
  const auto adj = fixed_adjacency(n, fixed);
  for (const Edge& e : fixed) {
    if (!representative.adjacent(e.u, e.v)) {
      throw ContractViolation("fixed edge (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) +
                              ") is not in the representative tour");
    }
  }
  for (const auto& f : inst.forced_edges()) {
    if (adj[f.u][0] != f.v && adj[f.u][1] != f.v) {
      throw ContractViolation("fixed set omits an existing forced edge");
    }
  }

  Compression out;
  CompressionMap& map = out.map;
  SegmentMap& seg = map.segments;
  seg.parent_size = n;
  map.to_child.assign(n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (degree(adj[v]) < 2) map.to_child[v] = seg.add_vertex(v);
  }
  if (seg.size() < 3) {
    throw ContractViolation("compression would leave fewer than 3 vertices");
  }

  std::vector<char> seen(n, 0);
  std::vector<Vertex> path;
  std::vector<ForcedEdge> forced;
  for (Vertex v = 0; v < n; ++v) {
    if (degree(adj[v]) != 1 || seen[v]) continue;
    path.assign(1, v);
    seen[v] = 1;
    Cost cost = 0;
    Vertex prev = kNoVertex, cur = v;
    while (true) {
      const Vertex nxt = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      if (nxt == kNoVertex) break;
      cost += inst.cost(cur, nxt);
      path.push_back(nxt);
      seen[nxt] = 1;
      prev = cur;
      cur = nxt;
    }
    const Vertex a = map.to_child[path.front()];
    const Vertex b = map.to_child[path.back()];
    seg.add_path(a, b, path, cost);
    forced.push_back({a, b, cost});
  }
  for (Vertex v = 0; v < n; ++v) {
    if (degree(adj[v]) == 2 && !seen[v]) {
      throw ContractViolation("fixed edges contain a cycle");
    }
  }

  std::vector<Point> coords;
  coords.reserve(seg.size());
  for (Vertex p : seg.to_parent) coords.push_back(inst.coord(p));
  out.child = Instance(std::move(coords), inst.metric(), std::move(forced),
                       inst.level() + 1, inst.name());
  return out;
}

Tour project_tour(const Tour& parent_tour, const CompressionMap& map) {
  if (parent_tour.size() != map.segments.parent_size) {
    throw ContractViolation("tour does not match the compression map");
  }
  for (std::size_t p = 0; p < map.segments.paths.size(); ++p) {
    const auto path = map.segments.path(static_cast<int>(p));
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (!parent_tour.adjacent(path[i], path[i + 1])) {
        throw ContractViolation("tour misses a permanently fixed edge");
      }
    }
  }
  std::vector<Vertex> order;
  order.reserve(map.segments.size());
  for (Vertex v : parent_tour.order()) {
    if (map.to_child[v] != kNoVertex) order.push_back(map.to_child[v]);
  }
  return Tour::from_order_with_cost(std::move(order), parent_tour.cost());
}

Tour expand_to_parent(const Tour& child_tour, const CompressionMap& map) {
  return Tour::from_order_with_cost(map.segments.expand(child_tour),
                                    child_tour.cost());
}

}  // namespace hdr
