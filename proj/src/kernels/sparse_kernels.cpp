#include "vmc/kernels/sparse_kernels.hpp"

#include <cstddef>

namespace vmc::kernels {

namespace {

// Below these sizes the fork/join overhead dominates.
constexpr int kMinParallelCols = 2048;
constexpr int kMinParallelWork = 1 << 15;

inline double column_dot(const CscMatrix& a, int j, std::span<const double> v) {
  double s = 0.0;
  for (int p = a.col_start[j]; p < a.col_start[j + 1]; ++p) s += a.value[p] * v[a.row_index[p]];
  return s;
}

inline void eta_column(double* col, int pivot_row, double inv_pivot, std::span<const double> alpha,
                       std::span<const int> alpha_nz) {
  const double p = col[pivot_row] * inv_pivot;
  if (p == 0.0) return;
  for (int i : alpha_nz) col[i] -= alpha[i] * p;
  col[pivot_row] = p;
}

}  // namespace

void price_serial(const CscMatrix& a, std::span<const double> cost, std::span<const double> y,
                  std::span<double> out) {
  for (int j = 0; j < a.cols; ++j) out[j] = cost[j] - column_dot(a, j, y);
}

void price_parallel(const CscMatrix& a, std::span<const double> cost, std::span<const double> y,
                    std::span<double> out) {
  const int n = a.cols;
#pragma omp parallel for schedule(static) if (n >= kMinParallelCols)
  for (int j = 0; j < n; ++j) out[j] = cost[j] - column_dot(a, j, y);
}

void transpose_product_serial(const CscMatrix& a, std::span<const double> v,
                              std::span<double> out) {
  for (int j = 0; j < a.cols; ++j) out[j] = column_dot(a, j, v);
}

void transpose_product_parallel(const CscMatrix& a, std::span<const double> v,
                                std::span<double> out) {
  const int n = a.cols;
#pragma omp parallel for schedule(static) if (n >= kMinParallelCols)
  for (int j = 0; j < n; ++j) out[j] = column_dot(a, j, v);
}

void eta_update_serial(std::span<double> binv, int m, int pivot_row, std::span<const double> alpha,
                       std::span<const int> alpha_nz) {
  const double inv_pivot = 1.0 / alpha[pivot_row];
  for (int k = 0; k < m; ++k) {
    eta_column(binv.data() + static_cast<std::size_t>(k) * m, pivot_row, inv_pivot, alpha,
               alpha_nz);
  }
}

void eta_update_parallel(std::span<double> binv, int m, int pivot_row,
                         std::span<const double> alpha, std::span<const int> alpha_nz) {
  const double inv_pivot = 1.0 / alpha[pivot_row];
  const long work = static_cast<long>(m) * static_cast<long>(alpha_nz.size());
#pragma omp parallel for schedule(static) if (work >= kMinParallelWork)
  for (int k = 0; k < m; ++k) {
    eta_column(binv.data() + static_cast<std::size_t>(k) * m, pivot_row, inv_pivot, alpha,
               alpha_nz);
  }
}

void weighted_row_sum_serial(std::span<const double> binv, int m, std::span<const double> weights,
                             std::span<const int> weight_nz, std::span<double> y) {
  for (int k = 0; k < m; ++k) {
    const double* col = binv.data() + static_cast<std::size_t>(k) * m;
    double s = 0.0;
    for (int i : weight_nz) s += weights[i] * col[i];
    y[k] = s;
  }
}

void weighted_row_sum_parallel(std::span<const double> binv, int m,
                               std::span<const double> weights, std::span<const int> weight_nz,
                               std::span<double> y) {
  const long work = static_cast<long>(m) * static_cast<long>(weight_nz.size());
#pragma omp parallel for schedule(static) if (work >= kMinParallelWork)
  for (int k = 0; k < m; ++k) {
    const double* col = binv.data() + static_cast<std::size_t>(k) * m;
    double s = 0.0;
    for (int i : weight_nz) s += weights[i] * col[i];
    y[k] = s;
  }
}

}  // namespace vmc::kernels
