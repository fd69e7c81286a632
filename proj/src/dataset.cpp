#include "geodepth/dataset.hpp"

#include <algorithm>

#include "geodepth/error.hpp"

namespace geodepth {

Dataset::Dataset(ManifoldSpec spec, const std::vector<Point>& points)
    : spec_(std::move(spec)), stride_(spec_.coord_count()), n_(points.size()) {
  data_.reserve(n_ * stride_);
  for (const Point& p : points) {
    const Point v = validate(spec_, p.coords());
    data_.insert(data_.end(), v.coords().begin(), v.coords().end());
  }
}

Dataset::Dataset(ManifoldSpec spec, std::span<const double> rows)
    : spec_(std::move(spec)), stride_(spec_.coord_count()) {
  if (rows.size() % stride_ != 0) {
    throw Error(Errc::WrongDimension, "row storage is not a multiple of " + std::to_string(stride_));
  }
  n_ = rows.size() / stride_;
  data_.reserve(rows.size());
  for (std::size_t i = 0; i < n_; ++i) {
    const Point v = validate(spec_, rows.subspan(i * stride_, stride_));
    data_.insert(data_.end(), v.coords().begin(), v.coords().end());
  }
}

Point Dataset::point_copy(std::size_t i) const {
  const auto p = point(i);
  return Point(std::vector<double>(p.begin(), p.end()));
}

}  // namespace geodepth
