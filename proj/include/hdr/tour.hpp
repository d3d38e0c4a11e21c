#pragma once

#include <span>
#include <string>
#include <vector>

#include "hdr/instance.hpp"
#include "hdr/types.hpp"

namespace hdr {

/// Hamiltonian cycle stored as an order array plus its inverse.
///
/// `pos()[order()[i]] == i`. Successor and predecessor follow the array
/// orientation; the cycle itself is undirected.
class Tour {
 public:
  Tour() = default;

  /// Builds a tour from a permutation and computes its cost.
  /// Throws ValidationError if `order` is not a permutation of [0, n).
  static Tour from_order(const Instance& inst, std::vector<Vertex> order);

  /// Builds a tour from a permutation with a cost supplied by the caller.
  static Tour from_order_with_cost(std::vector<Vertex> order, Cost cost);

  /// Identity order 0, 1, ..., n-1.
  static Tour identity(const Instance& inst);

  /// Unchecked construction, used to inspect corrupted states.
  static Tour from_raw(std::vector<Vertex> order, std::vector<Vertex> pos,
                       Cost cost) {
    Tour t;
    t.order_ = std::move(order);
    t.pos_ = std::move(pos);
    t.cost_ = cost;
    return t;
  }

  int size() const { return static_cast<int>(order_.size()); }
  Cost cost() const { return cost_; }
  std::span<const Vertex> order() const { return order_; }
  std::span<const Vertex> positions() const { return pos_; }

  Vertex at(int i) const { return order_[i]; }
  int pos(Vertex v) const { return pos_[v]; }

  Vertex next(Vertex v) const {
    const int i = pos_[v] + 1;
    return order_[i == size() ? 0 : i];
  }
  Vertex prev(Vertex v) const {
    const int i = pos_[v];
    return order_[i == 0 ? size() - 1 : i - 1];
  }
  bool adjacent(Vertex u, Vertex v) const {
    return next(u) == v || prev(u) == v;
  }

  /// Rotates and orients the cycle to start at vertex 0 and continue toward
  /// its smaller-id neighbor. Cost is unchanged.
  void normalize();

  /// Replaces the vertex order; recomputes positions, keeps the given cost.
  void assign(std::vector<Vertex> order, Cost cost);

  /// Overwrites positions start, start+1, ... (cyclically) with `seq`, which
  /// must be a rearrangement of the vertices currently there. Only the
  /// positions of those vertices are updated.
  void rewrite(int start, std::span<const Vertex> seq, Cost cost);

  /// Undirected tour edges in canonical form, sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Tour& a, const Tour& b) {
    return a.order_ == b.order_ && a.cost_ == b.cost_;
  }

 private:
  std::vector<Vertex> order_;
  std::vector<Vertex> pos_;
  Cost cost_ = 0;
};

/// Sum of edge costs around the cycle. Throws ValidationError when the order
/// is not a permutation of the instance vertices.
Cost tour_cost(const Instance& inst, const Tour& t);
Cost tour_cost(const Instance& inst, std::span<const Vertex> order);

enum class Violation {
  kNotPermutation,
  kPositionMismatch,
  kCostMismatch,
  kMissingForcedEdge,
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> messages;

  bool ok() const { return violations.empty(); }
  bool has(Violation v) const;
  std::string to_string() const;
};

ValidationReport validate_tour(const Instance& inst, const Tour& t);

const char* to_string(Violation v);

}  // namespace hdr
