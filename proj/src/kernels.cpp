#include "gelasso/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gelasso::kern {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double sum_abs(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] < 0.0 ? -x[i] : x[i];
  return acc;
}

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = x[i] - y[i];
    if (d < 0.0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GELASSO_HAVE_AVX2_TU 1
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);
}  // namespace avx2
#endif

namespace {

struct DispatchTable {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*sum_abs)(const double*, std::size_t);
  double (*max_abs_diff)(const double*, const double*, std::size_t);
  Level level;
};

constexpr DispatchTable kScalarTable = {
    scalar::dot, scalar::axpy, scalar::sum, scalar::sum_abs,
    scalar::max_abs_diff, Level::scalar};

#ifdef GELASSO_HAVE_AVX2_TU
constexpr DispatchTable kAvx2Table = {
    avx2::dot, avx2::axpy, avx2::sum, avx2::sum_abs,
    avx2::max_abs_diff, Level::avx2};
#endif

bool cpu_has_avx2() {
#ifdef GELASSO_HAVE_AVX2_TU
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

DispatchTable detect_table() {
  const char* env = std::getenv("GELASSO_SIMD");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return kScalarTable;
#ifdef GELASSO_HAVE_AVX2_TU
  if (cpu_has_avx2()) return kAvx2Table;
#endif
  return kScalarTable;
}

DispatchTable& table() {
  static DispatchTable t = detect_table();
  return t;
}

}  // namespace

Level active_level() { return table().level; }

bool force_level(Level level) {
  switch (level) {
    case Level::scalar:
      table() = kScalarTable;
      return true;
    case Level::avx2:
#ifdef GELASSO_HAVE_AVX2_TU
      if (cpu_has_avx2()) {
        table() = kAvx2Table;
        return true;
      }
#endif
      return false;
  }
  return false;
}

const char* level_name(Level level) {
  return level == Level::avx2 ? "avx2" : "scalar";
}

double dot(const double* x, const double* y, std::size_t n) {
  return table().dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  table().axpy(a, x, y, n);
}

double sum(const double* x, std::size_t n) { return table().sum(x, n); }

double sum_abs(const double* x, std::size_t n) { return table().sum_abs(x, n); }

double max_abs_diff(const double* x, const double* y, std::size_t n) {
  return table().max_abs_diff(x, y, n);
}

}  // namespace gelasso::kern
