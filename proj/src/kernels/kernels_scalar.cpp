#include "credible/kernels.hpp"

#include <cmath>

namespace credible::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double abs_sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double weighted_abs_sum_scalar(const double* w, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * std::fabs(x[i]);
  return s;
}

double weighted_sq_sum_scalar(const double* w, const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = w[i] * x[i];
    s += t * t;
  }
  return s;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend table{
      "scalar",    dot_scalar,         axpy_scalar,
      abs_sum_scalar, weighted_abs_sum_scalar, weighted_sq_sum_scalar,
  };
  return table;
}

}  // namespace credible::kernels
