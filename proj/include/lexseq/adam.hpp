#pragma once

#include <utility>
#include <vector>

#include "lexseq/param.hpp"

namespace lexseq {

// Adam with canonical constants. Each param carries its own learning rate
// (resolved from its group by the caller). Frozen params are never touched.
class Adam {
 public:
  explicit Adam(std::vector<std::pair<Param*, double>> params, double beta1 = 0.9,
                double beta2 = 0.999, double eps = 1e-8);

  void zero_grad();
  void step();

  int steps_taken() const { return t_; }

 private:
  struct Slot {
    Param* param;
    double lr;
    Tensor m;
    Tensor v;
  };
  std::vector<Slot> slots_;
  double beta1_, beta2_, eps_;
  int t_ = 0;
};

}  // namespace lexseq
