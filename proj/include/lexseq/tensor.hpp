#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lexseq/rng.hpp"

namespace lexseq {

// Dense row-major tensor of doubles. Everything the model touches is rank 2;
// a row vector is [1 x n] and a scalar is [1 x 1].
struct Tensor {
  std::vector<int> shape;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int rows, int cols, double fill = 0.0);

  static Tensor row(std::vector<double> values);
  static Tensor from_values(int rows, int cols, std::vector<double> values);
  static Tensor randn(int rows, int cols, double stddev, Rng& rng);
  static Tensor truncated_normal(int rows, int cols, double stddev, Rng& rng);

  int rows() const { return shape.empty() ? 0 : shape[0]; }
  int cols() const { return shape.size() < 2 ? 1 : shape[1]; }
  std::size_t numel() const { return data.size(); }

  double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols() + c]; }
  double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols() + c]; }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }
  bool all_finite() const;
  std::string shape_str() const;
};

}  // namespace lexseq
