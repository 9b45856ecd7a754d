#pragma once

#include <span>

namespace vmc::bench {

// 100 (f_h - f_star) / f_star. Throws InvalidModel unless f_star > 0.
double error_pct(double f_h, double f_star);

struct CellAggregate {
  double gp = 0.0;        // exp(mean ln(1 + e)) - 1
  double gp_arith = 0.0;  // plain mean, reported alongside
  double wgp = 0.0;       // worst error
  double tt = 0.0;        // geometric mean time
};

// Errors in percent, times in seconds (> 0).
CellAggregate aggregate_cell(std::span<const double> errors, std::span<const double> times);

}  // namespace vmc::bench
