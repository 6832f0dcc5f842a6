#include "mspp/tensor.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mspp {

namespace {

std::size_t checked_count(int rows, int cols, int maps) {
  if (rows < 1 || cols < 1 || maps < 1) {
    throw ShapeError("shape extents must all be >= 1, got " +
                     std::to_string(rows) + "x" + std::to_string(cols) + "x" +
                     std::to_string(maps));
  }
  const std::size_t limit = std::numeric_limits<std::size_t>::max();
  std::size_t n = static_cast<std::size_t>(rows);
  if (n > limit / static_cast<std::size_t>(cols)) {
    throw SizeError("element count overflows");
  }
  n *= static_cast<std::size_t>(cols);
  if (n > limit / static_cast<std::size_t>(maps)) {
    throw SizeError("element count overflows");
  }
  return n * static_cast<std::size_t>(maps);
}

} // namespace

Shape::Shape(int r, int c, int m) : rows(r), cols(c), maps(m) {
  checked_count(r, c, m);
}

Tensor::Tensor(Shape shape, double fill)
    : shape_(shape), data_(shape.count(), fill) {}

Tensor new_tensor(Shape shape, double fill) { return Tensor(shape, fill); }

Tensor reshape(const Tensor& t, Shape new_shape) {
  if (new_shape.count() != t.size()) {
    throw ShapeError("reshape element count mismatch: " +
                     std::to_string(t.size()) + " vs " +
                     std::to_string(new_shape.count()));
  }
  Tensor out(new_shape, 0.0);
  out.data() = t.data();
  return out;
}

Tensor normalize_zmuv(const Tensor& t) {
  const std::size_t n = t.size();
  if (n < 2) {
    throw DomainError("normalize_zmuv needs at least 2 elements");
  }
  double mean = 0.0;
  for (double v : t.data()) mean += v;
  mean /= static_cast<double>(n);

  double var = 0.0;
  for (double v : t.data()) {
    const double d = v - mean;
    var += d * d;
  }
  var /= static_cast<double>(n); // population variance

  Tensor out(t.shape(), 0.0);
  if (var <= 0.0) return out; // blank patch: all zeros by decision
  const double inv_std = 1.0 / std::sqrt(var);
  for (std::size_t i = 0; i < n; ++i) {
    out.data()[i] = (t.data()[i] - mean) * inv_std;
  }
  return out;
}

} // namespace mspp
