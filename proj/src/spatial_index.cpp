#include "hdr/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "hdr/errors.hpp"

namespace hdr {
namespace {

struct Candidate {
  double d2;
  Vertex id;
  bool operator<(const Candidate& o) const {
    return d2 < o.d2 || (d2 == o.d2 && id < o.id);
  }
};

}  // namespace

GridIndex::GridIndex(const Instance& inst)
    : GridIndex(inst, [&] {
        std::vector<Vertex> all(inst.size());
        std::iota(all.begin(), all.end(), 0);
        return all;
      }()) {}

GridIndex::GridIndex(const Instance& inst, std::span<const Vertex> members)
    : inst_(&inst) {
  if (members.empty()) {
    throw ContractViolation("spatial index needs at least one member");
  }
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = x1;
  x0_ = y0_ = std::numeric_limits<double>::infinity();
  for (Vertex v : members) {
    if (v < 0 || v >= inst.size()) {
      throw ContractViolation("spatial index member out of range");
    }
    const Point& p = inst.coord(v);
    x0_ = std::min(x0_, p.x);
    y0_ = std::min(y0_, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  const double extent = std::max(x1 - x0_, y1 - y0_);
  if (extent > 0.0) {
    side_ = static_cast<int>(
        std::ceil(std::sqrt(static_cast<double>(members.size()))));
    cell_size_ = extent / side_;
    slack_ = 1e-9 * (extent + std::abs(x0_) + std::abs(y0_));
  } else {
    // All members coincide: one bucket, linear scan.
    side_ = 1;
    cell_size_ = 1.0;
  }

  const std::size_t cells = static_cast<std::size_t>(side_) * side_;
  std::vector<std::size_t> cell_of_member(members.size());
  cell_start_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto [cx, cy] = cell_of(inst.coord(members[i]));
    cell_of_member[i] = static_cast<std::size_t>(cy) * side_ + cx;
    ++cell_start_[cell_of_member[i] + 1];
  }
  std::partial_sum(cell_start_.begin(), cell_start_.end(), cell_start_.begin());
  entries_.resize(members.size());
  ids_.resize(members.size());
  std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::size_t slot = fill[cell_of_member[i]]++;
    entries_[slot] = {inst.coord(members[i]), members[i]};
    ids_[slot] = members[i];
  }
}

std::pair<int, int> GridIndex::cell_of(const Point& p) const {
  auto clamp_cell = [this](double t) {
    if (!(t > 0.0)) return 0;
    const double c = std::floor(t / cell_size_);
    return c >= side_ ? side_ - 1 : static_cast<int>(c);
  };
  return {clamp_cell(p.x - x0_), clamp_cell(p.y - y0_)};
}

std::span<const Vertex> GridIndex::bucket(int cx, int cy) const {
  const std::size_t c = static_cast<std::size_t>(cy) * side_ + cx;
  return std::span<const Vertex>(ids_).subspan(
      cell_start_[c], cell_start_[c + 1] - cell_start_[c]);
}

std::vector<Vertex> GridIndex::query_knn(Vertex center,
                                         std::size_t count) const {
  if (center < 0 || center >= inst_->size()) {
    throw ContractViolation("query center out of range");
  }
  return query_knn(inst_->coord(center), count, center);
}

std::vector<Vertex> GridIndex::query_knn(const Point& p, std::size_t count,
                                         Vertex exclude) const {
  std::vector<Vertex> out;
  if (count == 0) return out;

  // Max-heap of the best `count` candidates seen so far.
  std::priority_queue<Candidate> best;
  const auto [cx, cy] = cell_of(p);

  auto scan_cell = [&](int x, int y) {
    const std::size_t c = static_cast<std::size_t>(y) * side_ + x;
    for (std::size_t i = cell_start_[c]; i < cell_start_[c + 1]; ++i) {
      const Entry& e = entries_[i];
      if (e.id == exclude) continue;
      const Candidate cand{squared_distance(p, e.p), e.id};
      if (best.size() < count) {
        best.push(cand);
      } else if (cand < best.top()) {
        best.pop();
        best.push(cand);
      }
    }
  };

  for (int r = 0;; ++r) {
    const int xlo = cx - r, xhi = cx + r, ylo = cy - r, yhi = cy + r;
    if (r == 0) {
      scan_cell(cx, cy);
    } else {
      for (int x = std::max(xlo, 0); x <= std::min(xhi, side_ - 1); ++x) {
        if (ylo >= 0) scan_cell(x, ylo);
        if (yhi < side_) scan_cell(x, yhi);
      }
      for (int y = std::max(ylo + 1, 0); y <= std::min(yhi - 1, side_ - 1);
           ++y) {
        if (xlo >= 0) scan_cell(xlo, y);
        if (xhi < side_) scan_cell(xhi, y);
      }
    }

    // Lower bound on the distance to any unscanned cell; sides already at the
    // grid border contribute nothing.
    double bound = std::numeric_limits<double>::infinity();
    if (xlo - 1 >= 0) bound = std::min(bound, p.x - (x0_ + xlo * cell_size_));
    if (xhi + 1 < side_)
      bound = std::min(bound, (x0_ + (xhi + 1) * cell_size_) - p.x);
    if (ylo - 1 >= 0) bound = std::min(bound, p.y - (y0_ + ylo * cell_size_));
    if (yhi + 1 < side_)
      bound = std::min(bound, (y0_ + (yhi + 1) * cell_size_) - p.y);
    if (bound == std::numeric_limits<double>::infinity()) break;
    // Slack absorbs rounding between cell assignment and boundary arithmetic.
    bound = std::max(bound - slack_, 0.0);
    if (best.size() == count && best.top().d2 < bound * bound) break;
  }

  out.resize(best.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = best.top().id;
    best.pop();
  }
  return out;
}

}  // namespace hdr
