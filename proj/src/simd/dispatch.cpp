#include <atomic>
#include <cstdlib>

#include "kernels_impl.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl::simd {
namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::dot, &scalar::squared_distance, &scalar::axpy,
                              &scalar::sum};

#if defined(NEJL_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::dot, &avx2::squared_distance, &avx2::axpy, &avx2::sum};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

#if defined(NEJL_HAVE_NEON)
constexpr KernelTable kNeon{Isa::neon, &neon::dot, &neon::squared_distance, &neon::axpy, &neon::sum};
#endif

const KernelTable* best_available() noexcept {
#if defined(NEJL_HAVE_AVX2)
  if (cpu_has_avx2()) return &kAvx2;
#endif
#if defined(NEJL_HAVE_NEON)
  return &kNeon;
#endif
  return &kScalar;
}

const KernelTable* initial_table() noexcept {
  if (const char* env = std::getenv("NEJL_ISA")) {
    Isa isa{};
    if (parse_isa(env, isa)) {
      if (const KernelTable* t = kernels_for(isa)) return t;
    }
  }
  return best_available();
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable* kernels_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return &kScalar;
    case Isa::avx2:
#if defined(NEJL_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2;
#endif
      return nullptr;
    case Isa::neon:
#if defined(NEJL_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) noexcept {
  const KernelTable* t = kernels_for(isa);
  if (t == nullptr) return false;
  current().store(t, std::memory_order_relaxed);
  return true;
}

void reset_isa() noexcept { current().store(best_available(), std::memory_order_relaxed); }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

bool parse_isa(std::string_view name, Isa& out) noexcept {
  if (name == "scalar") {
    out = Isa::scalar;
  } else if (name == "avx2") {
    out = Isa::avx2;
  } else if (name == "neon") {
    out = Isa::neon;
  } else {
    return false;
  }
  return true;
}

}  // namespace nejl::simd
