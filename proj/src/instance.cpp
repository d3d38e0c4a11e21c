#include "hdr/instance.hpp"

#include <numeric>
#include <string>

#include "hdr/errors.hpp"

namespace hdr {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return size_[a];
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return size_[a];
  }

  int component_size(int x) { return size_[find(x)]; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

std::string edge_name(Vertex u, Vertex v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

Instance::Instance(std::vector<Point> coords, Metric metric,
                   std::vector<ForcedEdge> forced, int level, std::string name)
    : coords_(std::move(coords)),
      metric_(metric),
      forced_(std::move(forced)),
      slots_(coords_.size()),
      level_(level),
      name_(std::move(name)) {
  const int n = size();
  if (n < 3) {
    throw ContractViolation("instance needs at least 3 vertices, got " +
                            std::to_string(n));
  }
  DisjointSets sets(n);
  for (const auto& e : forced_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw ContractViolation("forced edge " + edge_name(e.u, e.v) +
                              " has an out-of-range endpoint");
    }
    if (e.u == e.v) {
      throw ContractViolation("forced edge " + edge_name(e.u, e.v) +
                              " is a self-loop");
    }
    if (e.cost < 0) {
      throw ContractViolation("forced edge " + edge_name(e.u, e.v) +
                              " has negative cost");
    }
    if (is_forced(e.u, e.v)) {
      throw ContractViolation("duplicate forced edge " + edge_name(e.u, e.v));
    }
    for (Vertex w : {e.u, e.v}) {
      if (forced_degree(w) == 2) {
        throw ContractViolation("vertex " + std::to_string(w) +
                                " has more than two forced edges");
      }
    }
    if (sets.find(e.u) == sets.find(e.v) && sets.component_size(e.u) < n) {
      throw ContractViolation("forced edges close a cycle shorter than n at " +
                              edge_name(e.u, e.v));
    }
    sets.unite(e.u, e.v);
    auto& su = slots_[e.u][slots_[e.u][0].partner == kNoVertex ? 0 : 1];
    su = {e.v, e.cost};
    auto& sv = slots_[e.v][slots_[e.v][0].partner == kNoVertex ? 0 : 1];
    sv = {e.u, e.cost};
  }
}

Cost Instance::edge_cost(Vertex u, Vertex v) const {
  const int n = size();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw ContractViolation("vertex id out of range in edge_cost" +
                            edge_name(u, v));
  }
  if (u == v) {
    throw ContractViolation("edge_cost called with u == v = " +
                            std::to_string(u));
  }
  return cost(u, v);
}

}  // namespace hdr
