#include "lexseq/tensor.hpp"

#include <cmath>
#include <utility>

#include "lexseq/check.hpp"

namespace lexseq {

Tensor::Tensor(int rows, int cols, double fill)
    : shape{rows, cols}, data(static_cast<std::size_t>(rows) * cols, fill) {
  check(rows > 0 && cols > 0, "tensor: extents must be positive, got " + shape_str());
}

Tensor Tensor::row(std::vector<double> values) {
  check(!values.empty(), "tensor: empty row vector");
  Tensor t;
  t.shape = {1, static_cast<int>(values.size())};
  t.data = std::move(values);
  return t;
}

Tensor Tensor::from_values(int rows, int cols, std::vector<double> values) {
  check(values.size() == static_cast<std::size_t>(rows) * cols,
        "tensor: value count does not match shape");
  Tensor t;
  t.shape = {rows, cols};
  t.data = std::move(values);
  return t;
}

Tensor Tensor::randn(int rows, int cols, double stddev, Rng& rng) {
  Tensor t(rows, cols);
  for (double& x : t.data) x = rng.normal(0.0, stddev);
  return t;
}

Tensor Tensor::truncated_normal(int rows, int cols, double stddev, Rng& rng) {
  Tensor t(rows, cols);
  for (double& x : t.data) x = rng.truncated_normal(stddev);
  return t;
}

bool Tensor::all_finite() const {
  for (double x : data) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

std::string Tensor::shape_str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

}  // namespace lexseq
