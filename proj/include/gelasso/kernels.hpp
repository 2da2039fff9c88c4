#pragma once

#include <cstddef>

// Low-level arithmetic kernels used by the inner loops of the estimators
// (coordinate descent, correlation accumulation, sampling transforms).
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant. The active variant is picked once at
// runtime from cpuid; setting GELASSO_SIMD=scalar in the environment (or
// calling force_level) pins the scalar path.
namespace gelasso::kern {

enum class Level { scalar, avx2 };

Level active_level();

// Returns false (and leaves the dispatch table unchanged) if the requested
// level is not supported on this machine.
bool force_level(Level level);

const char* level_name(Level level);

// sum_i x[i] * y[i]
double dot(const double* x, const double* y, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// sum_i x[i]
double sum(const double* x, std::size_t n);

// sum_i |x[i]|
double sum_abs(const double* x, std::size_t n);

// max_i |x[i] - y[i]|
double max_abs_diff(const double* x, const double* y, std::size_t n);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_abs(const double* x, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);
}  // namespace scalar

}  // namespace gelasso::kern
