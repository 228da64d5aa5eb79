#include "lexseq/adam.hpp"

#include <cmath>

namespace lexseq {

Adam::Adam(std::vector<std::pair<Param*, double>> params, double beta1, double beta2,
           double eps)
    : beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (auto& [p, lr] : params) {
    p->ensure_grad();
    slots_.push_back(Slot{p, lr, Tensor(p->value.rows(), p->value.cols()),
                          Tensor(p->value.rows(), p->value.cols())});
  }
}

void Adam::zero_grad() {
  for (Slot& s : slots_) s.param->zero_grad();
}

void Adam::step() {
  ++t_;
  const double bc1 = 1.0 - std::pow(beta1_, t_);
  const double bc2 = 1.0 - std::pow(beta2_, t_);
  for (Slot& s : slots_) {
    if (s.param->frozen) continue;
    Tensor& w = s.param->value;
    const Tensor& g = s.param->grad;
    for (std::size_t i = 0; i < w.data.size(); ++i) {
      s.m.data[i] = beta1_ * s.m.data[i] + (1.0 - beta1_) * g.data[i];
      s.v.data[i] = beta2_ * s.v.data[i] + (1.0 - beta2_) * g.data[i] * g.data[i];
      const double mhat = s.m.data[i] / bc1;
      const double vhat = s.v.data[i] / bc2;
      w.data[i] -= s.lr * mhat / (std::sqrt(vhat) + eps_);
    }
  }
}

}  // namespace lexseq
