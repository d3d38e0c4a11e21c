#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hdr/instance.hpp"
#include "hdr/types.hpp"

namespace hdr {

/// Uniform grid over a subset of instance vertices answering k-nearest
/// queries by expanding rings of cells.
///
/// Results are ordered by exact squared Euclidean distance, ties broken by
/// lower vertex id. The index keeps a pointer to the instance, which must
/// outlive it.
class GridIndex {
 public:
  /// Throws ContractViolation if `members` is empty.
  GridIndex(const Instance& inst, std::span<const Vertex> members);

  /// Index over every vertex of the instance.
  explicit GridIndex(const Instance& inst);

  std::size_t size() const { return entries_.size(); }
  int grid_side() const { return side_; }
  double cell_size() const { return cell_size_; }

  /// Up to `count` members nearest to `center`, excluding `center` itself.
  std::vector<Vertex> query_knn(Vertex center, std::size_t count) const;

  /// Up to `count` members nearest to an arbitrary point, skipping `exclude`.
  std::vector<Vertex> query_knn(const Point& p, std::size_t count,
                                Vertex exclude = kNoVertex) const;

  /// Members stored in the bucket of cell (cx, cy).
  std::span<const Vertex> bucket(int cx, int cy) const;

  /// Cell coordinates of a point (clamped to the grid).
  std::pair<int, int> cell_of(const Point& p) const;

 private:
  struct Entry {
    Point p;
    Vertex id;
  };

  const Instance* inst_ = nullptr;
  double x0_ = 0.0;
  double y0_ = 0.0;
  double cell_size_ = 1.0;
  double slack_ = 0.0;
  int side_ = 1;
  std::vector<std::size_t> cell_start_;  // CSR offsets, side_*side_ + 1
  std::vector<Entry> entries_;
  std::vector<Vertex> ids_;  // ids in bucket order, parallel to entries_
};

}  // namespace hdr
