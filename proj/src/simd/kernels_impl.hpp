#pragma once

#include <cstddef>

// Internal declarations of the per-ISA kernel sets.

namespace nejl::simd::avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* a, std::size_t n);
}  // namespace nejl::simd::avx2

namespace nejl::simd::neon {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* a, std::size_t n);
}  // namespace nejl::simd::neon
