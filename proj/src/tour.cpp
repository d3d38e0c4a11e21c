#include "hdr/tour.hpp"

#include <algorithm>
#include <sstream>

#include "hdr/errors.hpp"

namespace hdr {
namespace {

bool is_permutation_of_range(std::span<const Vertex> order, int n) {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<Vertex> inverse(std::span<const Vertex> order) {
  std::vector<Vertex> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = static_cast<Vertex>(i);
  }
  return pos;
}

}  // namespace

Tour Tour::from_order(const Instance& inst, std::vector<Vertex> order) {
  const Cost c = tour_cost(inst, order);
  Tour t;
  t.pos_ = inverse(order);
  t.order_ = std::move(order);
  t.cost_ = c;
  return t;
}

Tour Tour::from_order_with_cost(std::vector<Vertex> order, Cost cost) {
  if (!is_permutation_of_range(order, static_cast<int>(order.size()))) {
    throw ValidationError("tour order is not a permutation");
  }
  Tour t;
  t.pos_ = inverse(order);
  t.order_ = std::move(order);
  t.cost_ = cost;
  return t;
}

Tour Tour::identity(const Instance& inst) {
  std::vector<Vertex> order(inst.size());
  for (int i = 0; i < inst.size(); ++i) order[i] = i;
  return from_order(inst, std::move(order));
}

void Tour::assign(std::vector<Vertex> order, Cost cost) {
  order_ = std::move(order);
  pos_.resize(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    pos_[order_[i]] = static_cast<Vertex>(i);
  }
  cost_ = cost;
}

void Tour::rewrite(int start, std::span<const Vertex> seq, Cost cost) {
  const int n = size();
  int i = start;
  for (Vertex v : seq) {
    order_[i] = v;
    pos_[v] = i;
    if (++i == n) i = 0;
  }
  cost_ = cost;
}

void Tour::normalize() {
  const int n = size();
  if (n == 0) return;
  const int start = pos_[0];
  const bool forward = next(0) < prev(0);
  std::vector<Vertex> out(n);
  for (int k = 0; k < n; ++k) {
    const int i = forward ? (start + k) % n : (start - k + n) % n;
    out[k] = order_[i];
  }
  assign(std::move(out), cost_);
}

std::vector<Edge> Tour::edges() const {
  std::vector<Edge> out;
  out.reserve(order_.size());
  for (int i = 0; i < size(); ++i) {
    out.push_back(Edge::canonical(order_[i], order_[(i + 1) % size()]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cost tour_cost(const Instance& inst, std::span<const Vertex> order) {
  const int n = inst.size();
  if (!is_permutation_of_range(order, n)) {
    throw ValidationError("tour order is not a permutation of [0, " +
                          std::to_string(n) + ")");
  }
  Cost total = 0;
  for (int i = 0; i + 1 < n; ++i) total += inst.cost(order[i], order[i + 1]);
  total += inst.cost(order[n - 1], order[0]);
  return total;
}

Cost tour_cost(const Instance& inst, const Tour& t) {
  return tour_cost(inst, t.order());
}

bool ValidationReport::has(Violation v) const {
  return std::find(violations.begin(), violations.end(), v) !=
         violations.end();
}

std::string ValidationReport::to_string() const {
  if (ok()) return "feasible";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << '\n';
    os << hdr::to_string(violations[i]) << ": " << messages[i];
  }
  return os.str();
}

const char* to_string(Violation v) {
  switch (v) {
    case Violation::kNotPermutation: return "not-a-permutation";
    case Violation::kPositionMismatch: return "position-mismatch";
    case Violation::kCostMismatch: return "cost-mismatch";
    case Violation::kMissingForcedEdge: return "missing-forced-edge";
  }
  return "unknown";
}

ValidationReport validate_tour(const Instance& inst, const Tour& t) {
  ValidationReport report;
  auto flag = [&](Violation v, std::string msg) {
    report.violations.push_back(v);
    report.messages.push_back(std::move(msg));
  };

  const int n = inst.size();
  const auto order = t.order();
  const auto pos = t.positions();
  if (!is_permutation_of_range(order, n)) {
    flag(Violation::kNotPermutation,
         "order has " + std::to_string(order.size()) +
             " entries and is not a permutation of [0, " + std::to_string(n) +
             ")");
    // Without a permutation neither positions nor costs are meaningful.
    return report;
  }

  bool pos_ok = static_cast<int>(pos.size()) == n;
  for (int i = 0; pos_ok && i < n; ++i) pos_ok = pos[order[i]] == i;
  if (!pos_ok) {
    flag(Violation::kPositionMismatch, "pos is not the inverse of order");
  }

  const Cost actual = tour_cost(inst, order);
  if (actual != t.cost()) {
    flag(Violation::kCostMismatch, "stored cost " + std::to_string(t.cost()) +
                                       " != recomputed " +
                                       std::to_string(actual));
  }

  std::vector<Vertex> where(n);
  for (int i = 0; i < n; ++i) where[order[i]] = i;
  for (const auto& e : inst.forced_edges()) {
    const int d = std::abs(where[e.u] - where[e.v]);
    if (d != 1 && d != n - 1) {
      flag(Violation::kMissingForcedEdge,
           "forced edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
               ") is not a tour adjacency");
    }
  }
  return report;
}

}  // namespace hdr
