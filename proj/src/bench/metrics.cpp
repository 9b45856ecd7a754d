#include "vmc/bench/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "vmc/error.hpp"

namespace vmc::bench {

double error_pct(double f_h, double f_star) {
  if (!(f_star > 0.0)) throw InvalidModel("error_pct needs a positive reference value");
  return 100.0 * (f_h - f_star) / f_star;
}

CellAggregate aggregate_cell(std::span<const double> errors, std::span<const double> times) {
  if (errors.empty() || times.empty()) throw InvalidModel("aggregate_cell needs data");
  CellAggregate a;
  double log_sum = 0.0;
  double sum = 0.0;
  a.wgp = errors[0];
  for (double e : errors) {
    if (!(e > -1.0)) throw InvalidModel("shifted geometric mean needs errors above -1");
    log_sum += std::log1p(e);
    sum += e;
    a.wgp = std::max(a.wgp, e);
  }
  const double n = static_cast<double>(errors.size());
  a.gp = std::expm1(log_sum / n);
  a.gp_arith = sum / n;
  double log_t = 0.0;
  for (double t : times) {
    if (!(t > 0.0)) throw InvalidModel("aggregate_cell needs positive times");
    log_t += std::log(t);
  }
  a.tt = std::exp(log_t / static_cast<double>(times.size()));
  return a;
}

}  // namespace vmc::bench
