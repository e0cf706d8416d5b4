#include <cstdlib>
#include <cstring>
#include <mutex>
#include <string>

#include "markev/errors.hpp"
#include "markev/kernels.hpp"

namespace markev::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  const char* name;
};

constexpr Table kScalar{scalar::dot, scalar::axpy, scalar::scal, scalar::sum,
                        "scalar"};

#ifdef MARKEV_HAVE_AVX2_KERNELS
constexpr Table kAvx2{avx2::dot, avx2::axpy, avx2::scal, avx2::sum, "avx2"};
bool avx2_supported() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

#ifdef MARKEV_HAVE_NEON_KERNELS
constexpr Table kNeon{neon::dot, neon::axpy, neon::scal, neon::sum, "neon"};
#endif

const Table* g_active = nullptr;
std::once_flag g_once;

const Table* best_available() {
#ifdef MARKEV_HAVE_AVX2_KERNELS
  if (avx2_supported()) return &kAvx2;
#endif
#ifdef MARKEV_HAVE_NEON_KERNELS
  return &kNeon;
#endif
  return &kScalar;
}

const Table* by_name(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &kScalar;
#ifdef MARKEV_HAVE_AVX2_KERNELS
  if (std::strcmp(name, "avx2") == 0) {
    if (!avx2_supported())
      throw ValidationError("avx2 kernels are not supported on this CPU");
    return &kAvx2;
  }
#endif
#ifdef MARKEV_HAVE_NEON_KERNELS
  if (std::strcmp(name, "neon") == 0) return &kNeon;
#endif
  throw ValidationError(std::string("unknown kernel variant: ") + name);
}

const Table& active() {
  std::call_once(g_once, [] {
    if (const char* env = std::getenv("MARKEV_KERNELS")) {
      g_active = by_name(env);
    } else {
      g_active = best_available();
    }
  });
  return *g_active;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  return active().dot(a, b, n);
}
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  active().axpy(alpha, x, y, n);
}
void scal(double alpha, double* x, std::size_t n) {
  active().scal(alpha, x, n);
}
double sum(const double* x, std::size_t n) { return active().sum(x, n); }

const char* active_variant() { return active().name; }

void force_variant(const char* name) {
  active();  // ensure initialized before overriding
  g_active = by_name(name);
}

}  // namespace markev::kernels
