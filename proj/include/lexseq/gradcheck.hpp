#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lexseq/param.hpp"

namespace lexseq {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  int worst_index = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t coords_checked = 0;

  bool passed(double tol) const { return max_rel_err <= tol; }
};

// Central-difference check of reverse-mode gradients.
//
// loss_fn(accumulate) must rebuild the computation from scratch on every
// call, read parameter values live, and be deterministic (dropout off).
// When accumulate is true it must also run backward so gradients land in
// the params' grad slots.
//
// Per coordinate: numeric = (f(t+h) - f(t-h)) / 2h, and
// rel = |analytic - numeric| / max(|analytic|, |numeric|). Coordinates with
// |analytic - numeric| <= abs_guard count as exact; the guard keeps
// zero-gradient coordinates from reporting pure roundoff noise.
GradCheckReport gradcheck(const std::function<double(bool)>& loss_fn,
                          const std::vector<Param*>& params, double h = 1e-4,
                          double abs_guard = 1e-8);

}  // namespace lexseq
