#pragma once

// Reduction and update primitives behind every linear-algebra hot loop in the
// library. Each primitive has a scalar reference implementation and, on x86-64
// with AVX2, a vectorized variant selected once at startup. The two kernel
// tables compute the same quantities with different summation order, so they
// agree to rounding, not bitwise; the equivalence tests pin the tolerance.

#include <cstddef>
#include <string_view>

namespace credible::kernels {

struct Backend {
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // sum_i |x[i]|
  double (*abs_sum)(const double* x, std::size_t n);
  // sum_i w[i] * |x[i]|
  double (*weighted_abs_sum)(const double* w, const double* x, std::size_t n);
  // sum_i (w[i] * x[i])^2
  double (*weighted_sq_sum)(const double* w, const double* x, std::size_t n);
};

enum class Isa { Auto, Scalar, Avx2 };

const Backend& scalar_backend();
// Backend for an explicit ISA; throws std::invalid_argument if unavailable.
const Backend& backend_for(Isa isa);
// Currently active backend. Resolved on first use: CREDIBLE_KERNELS
// environment variable ("scalar", "avx2", "auto") if set, else CPU detection.
const Backend& active_backend();
// Override the active backend (test hook); Isa::Auto restores detection.
void force_isa(Isa isa);
std::string_view active_isa_name();

inline double dot(const double* a, const double* b, std::size_t n) {
  return active_backend().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active_backend().axpy(alpha, x, y, n);
}
inline double abs_sum(const double* x, std::size_t n) {
  return active_backend().abs_sum(x, n);
}
inline double weighted_abs_sum(const double* w, const double* x, std::size_t n) {
  return active_backend().weighted_abs_sum(w, x, n);
}
inline double weighted_sq_sum(const double* w, const double* x, std::size_t n) {
  return active_backend().weighted_sq_sum(w, x, n);
}

}  // namespace credible::kernels
