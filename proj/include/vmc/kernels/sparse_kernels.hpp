#pragma once

// Data-parallel inner loops of the simplex solver. Every kernel has a serial
// reference implementation and an OpenMP implementation that writes each
// output element from exactly one thread, so both produce bit-identical
// results. Tests compare the two; bench/ times them.

#include <span>
#include <vector>

namespace vmc::kernels {

enum class Exec { Serial, Parallel };

// Compressed sparse column storage.
struct CscMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_start{0};
  std::vector<int> row_index;
  std::vector<double> value;

  int nnz() const { return static_cast<int>(row_index.size()); }
};

// out[j] = cost[j] - <y, A_j> for every column j.
void price_serial(const CscMatrix& a, std::span<const double> cost, std::span<const double> y,
                  std::span<double> out);
void price_parallel(const CscMatrix& a, std::span<const double> cost, std::span<const double> y,
                    std::span<double> out);

// out[j] = <v, A_j> for every column j (pivot row of B^-1 A).
void transpose_product_serial(const CscMatrix& a, std::span<const double> v, std::span<double> out);
void transpose_product_parallel(const CscMatrix& a, std::span<const double> v,
                                std::span<double> out);

// Product-form update of a dense column-major m x m basis inverse after the
// column with representation `alpha` replaces the basic variable in
// `pivot_row`. `alpha_nz` lists the nonzero positions of alpha.
void eta_update_serial(std::span<double> binv, int m, int pivot_row, std::span<const double> alpha,
                       std::span<const int> alpha_nz);
void eta_update_parallel(std::span<double> binv, int m, int pivot_row,
                         std::span<const double> alpha, std::span<const int> alpha_nz);

// y[k] = sum_i weights[i] * binv(i, k) over the listed nonzero weights.
void weighted_row_sum_serial(std::span<const double> binv, int m, std::span<const double> weights,
                             std::span<const int> weight_nz, std::span<double> y);
void weighted_row_sum_parallel(std::span<const double> binv, int m,
                               std::span<const double> weights, std::span<const int> weight_nz,
                               std::span<double> y);

inline void price(Exec e, const CscMatrix& a, std::span<const double> cost,
                  std::span<const double> y, std::span<double> out) {
  e == Exec::Parallel ? price_parallel(a, cost, y, out) : price_serial(a, cost, y, out);
}

inline void transpose_product(Exec e, const CscMatrix& a, std::span<const double> v,
                              std::span<double> out) {
  e == Exec::Parallel ? transpose_product_parallel(a, v, out) : transpose_product_serial(a, v, out);
}

inline void eta_update(Exec e, std::span<double> binv, int m, int pivot_row,
                       std::span<const double> alpha, std::span<const int> alpha_nz) {
  e == Exec::Parallel ? eta_update_parallel(binv, m, pivot_row, alpha, alpha_nz)
                      : eta_update_serial(binv, m, pivot_row, alpha, alpha_nz);
}

inline void weighted_row_sum(Exec e, std::span<const double> binv, int m,
                             std::span<const double> weights, std::span<const int> weight_nz,
                             std::span<double> y) {
  e == Exec::Parallel ? weighted_row_sum_parallel(binv, m, weights, weight_nz, y)
                      : weighted_row_sum_serial(binv, m, weights, weight_nz, y);
}

}  // namespace vmc::kernels
