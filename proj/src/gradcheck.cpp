#include "lexseq/gradcheck.hpp"

#include <cmath>

#include "lexseq/check.hpp"

namespace lexseq {

GradCheckReport gradcheck(const std::function<double(bool)>& loss_fn,
                          const std::vector<Param*>& params, double h,
                          double abs_guard) {
  for (Param* p : params) p->zero_grad();
  const double base = loss_fn(true);
  check(std::isfinite(base), "gradcheck: non-finite loss");

  GradCheckReport report;
  for (Param* p : params) {
    for (std::size_t i = 0; i < p->value.data.size(); ++i) {
      double& theta = p->value.data[i];
      const double saved = theta;
      theta = saved + h;
      const double up = loss_fn(false);
      theta = saved - h;
      const double down = loss_fn(false);
      theta = saved;
      check(std::isfinite(up) && std::isfinite(down),
            "gradcheck: non-finite loss while perturbing " + p->name);

      const double numeric = (up - down) / (2.0 * h);
      const double analytic = p->grad.data[i];
      const double diff = std::fabs(analytic - numeric);
      double rel = 0.0;
      if (diff > abs_guard) rel = diff / std::max(std::fabs(analytic), std::fabs(numeric));
      ++report.coords_checked;
      if (rel > report.max_rel_err) {
        report.max_rel_err = rel;
        report.worst_param = p->name;
        report.worst_index = static_cast<int>(i);
        report.worst_analytic = analytic;
        report.worst_numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace lexseq
