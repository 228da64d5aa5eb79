#pragma once

#include <string>

#include "lexseq/tensor.hpp"

namespace lexseq {

// Learning-rate group. Bert covers the embedder and transformer stack;
// Adapter covers everything introduced on top (adapters, word table, CRF).
enum class ParamGroup { Bert, Adapter };

struct Param {
  std::string name;
  Tensor value;
  Tensor grad;  // same shape as value once touched
  ParamGroup group = ParamGroup::Adapter;
  bool frozen = false;

  Param() = default;
  Param(std::string n, Tensor v, ParamGroup g)
      : name(std::move(n)), value(std::move(v)), group(g) {}

  void ensure_grad() {
    if (!grad.same_shape(value)) grad = Tensor(value.rows(), value.cols());
  }

  void zero_grad() {
    ensure_grad();
    for (double& x : grad.data) x = 0.0;
  }
};

}  // namespace lexseq
