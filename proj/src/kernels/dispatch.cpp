#include "credible/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace credible::kernels {

#if defined(CREDIBLE_KERNELS_AVX2)
const Backend& avx2_backend();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(CREDIBLE_KERNELS_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Backend* detect() {
  if (const char* env = std::getenv("CREDIBLE_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return &scalar_backend();
#if defined(CREDIBLE_KERNELS_AVX2)
    if (v == "avx2" && cpu_has_avx2()) return &avx2_backend();
#endif
    // unknown value or unsupported request: fall through to detection
  }
#if defined(CREDIBLE_KERNELS_AVX2)
  if (cpu_has_avx2()) return &avx2_backend();
#endif
  return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

}  // namespace

const Backend& backend_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return scalar_backend();
    case Isa::Avx2:
#if defined(CREDIBLE_KERNELS_AVX2)
      if (cpu_has_avx2()) return avx2_backend();
#endif
      throw std::invalid_argument("avx2 kernels not available on this host");
    case Isa::Auto:
      break;
  }
  return *detect();
}

const Backend& active_backend() {
  const Backend* b = g_active.load(std::memory_order_acquire);
  if (b == nullptr) {
    b = detect();
    g_active.store(b, std::memory_order_release);
  }
  return *b;
}

void force_isa(Isa isa) {
  if (isa == Isa::Auto) {
    g_active.store(detect(), std::memory_order_release);
  } else {
    g_active.store(&backend_for(isa), std::memory_order_release);
  }
}

std::string_view active_isa_name() { return active_backend().name; }

}  // namespace credible::kernels
