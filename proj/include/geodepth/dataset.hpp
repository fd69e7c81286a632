#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "geodepth/geometry.hpp"

namespace geodepth {

/// A validated sample of points sharing one manifold, stored row-major in one
/// contiguous buffer.
class Dataset {
 public:
  /// Validates (and canonicalizes) every point.
  Dataset(ManifoldSpec spec, const std::vector<Point>& points);
  /// Validates `n` rows of `spec.coord_count()` values each.
  Dataset(ManifoldSpec spec, std::span<const double> rows);

  const ManifoldSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t stride() const noexcept { return stride_; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * stride_, stride_);
  }
  Point point_copy(std::size_t i) const;
  std::span<const double> flat() const noexcept { return data_; }

 private:
  ManifoldSpec spec_;
  std::size_t stride_;
  std::size_t n_ = 0;
  std::vector<double> data_;
};

}  // namespace geodepth
