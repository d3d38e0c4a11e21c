#pragma once

#include <compare>
#include <cstdint>
#include <utility>

namespace hdr {

using Vertex = std::int32_t;
using Cost = std::int64_t;

inline constexpr Vertex kNoVertex = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// TSPLIB integer distance conventions.
enum class Metric { kEuc2D, kCeil2D };

/// Undirected edge with canonical endpoint order (u < v).
struct Edge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;

  static constexpr Edge canonical(Vertex a, Vertex b) {
    return a < b ? Edge{a, b} : Edge{b, a};
  }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct ForcedEdge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  Cost cost = 0;

  friend bool operator==(const ForcedEdge&, const ForcedEdge&) = default;
};

}  // namespace hdr
