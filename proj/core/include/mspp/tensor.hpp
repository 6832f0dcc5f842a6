#pragma once

#include <cstddef>
#include <vector>

#include "mspp/errors.hpp"

namespace mspp {

/// Extents of a rank-3 tensor: rows x cols x maps, all >= 1.
struct Shape {
  int rows = 0;
  int cols = 0;
  int maps = 0;

  Shape() = default;
  Shape(int r, int c, int m);

  std::size_t count() const {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols) *
           static_cast<std::size_t>(maps);
  }
  std::size_t plane() const {
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  bool operator==(const Shape&) const = default;
};

// Dense rank-3 tensor of doubles. Storage is map-major planes: each map is a
// contiguous row-major image, so the pixels-by-maps matrix used by the
// encoding layer is a view, not a copy. Values are treated as immutable once
// an operation has produced the tensor.
class Tensor {
public:
  Tensor() = default;
  Tensor(Shape shape, double fill);

  const Shape& shape() const { return shape_; }
  int rows() const { return shape_.rows; }
  int cols() const { return shape_.cols; }
  int maps() const { return shape_.maps; }
  std::size_t size() const { return data_.size(); }

  std::size_t index(int r, int c, int m) const {
    return static_cast<std::size_t>(m) * shape_.plane() +
           static_cast<std::size_t>(r) * shape_.cols +
           static_cast<std::size_t>(c);
  }
  double at(int r, int c, int m) const { return data_[index(r, c, m)]; }
  double& at(int r, int c, int m) { return data_[index(r, c, m)]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Tensor&) const = default;

private:
  Shape shape_;
  std::vector<double> data_;
};

/// Tensor with every element set to `fill`.
Tensor new_tensor(Shape shape, double fill);

/// Same data, new extents; element order is preserved.
Tensor reshape(const Tensor& t, Shape new_shape);

// Shifts and scales to zero mean and unit population variance. A
// zero-variance input maps to all zeros rather than erroring so that blank
// patches survive preprocessing.
Tensor normalize_zmuv(const Tensor& t);

} // namespace mspp
