#include <cstdlib>
#include <cstring>

#include "hclab/kernels.hpp"

namespace hclab::kernels {

namespace {

constexpr KernelTable kScalar{Isa::Scalar, scalar::axpy, scalar::max_abs, scalar::sum_abs,
                              scalar::sum_sq_scaled, scalar::poly_sup};

#if defined(HCLAB_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, avx2::axpy, avx2::max_abs, avx2::sum_abs,
                            avx2::sum_sq_scaled, avx2::poly_sup};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
}
#endif

const KernelTable& select() {
  const char* forced = std::getenv("HCLAB_SIMD");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) return kScalar;
#if defined(HCLAB_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return &kScalar;
    case Isa::Avx2:
#if defined(HCLAB_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2;
#endif
      return nullptr;
  }
  return nullptr;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  if (table_for(Isa::Avx2) != nullptr) out.push_back(Isa::Avx2);
  return out;
}

}  // namespace hclab::kernels
