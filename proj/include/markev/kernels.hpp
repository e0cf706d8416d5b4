#pragma once

#include <cstddef>

// Data-parallel inner loops shared by the factorizations and the
// expectation evaluator. A scalar reference implementation always
// exists; on x86-64 an AVX2/FMA variant is selected at runtime when the
// CPU supports it, on aarch64 a NEON variant. The active variant can be
// forced with the MARKEV_KERNELS environment variable ("scalar", "avx2",
// "neon") or programmatically, which the equivalence tests rely on.

namespace markev::kernels {

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
double sum(const double* x, std::size_t n);

// Name of the variant currently in use ("scalar", "avx2", "neon").
const char* active_variant();

// Force a specific variant; throws markev::ValidationError if the name is
// unknown or the variant is unavailable on this machine.
void force_variant(const char* name);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define MARKEV_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define MARKEV_HAVE_NEON_KERNELS 1
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scal(double alpha, double* x, std::size_t n);
double sum(const double* x, std::size_t n);
}  // namespace neon
#endif

}  // namespace markev::kernels
