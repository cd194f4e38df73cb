#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version;
// vector variants are picked once at startup from what the CPU reports.
//
// Set NEJL_ISA=scalar|avx2|neon in the environment to pin a variant.

#include <cstddef>
#include <span>
#include <string_view>

namespace nejl::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
};

/// Kernel table for `isa`, or nullptr if it was not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa) noexcept;

/// Currently active table.
const KernelTable& active() noexcept;

/// Pin the active variant. Returns false (and changes nothing) if unavailable.
bool force_isa(Isa isa) noexcept;

/// Restore the best variant the CPU supports.
void reset_isa() noexcept;

std::string_view isa_name(Isa isa) noexcept;
bool parse_isa(std::string_view name, Isa& out) noexcept;

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
double sum(const double* a, std::size_t n);
}  // namespace scalar

// Span front-ends over the active table. Lengths must match.

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double sum(std::span<const double> a) { return active().sum(a.data(), a.size()); }

}  // namespace nejl::simd
