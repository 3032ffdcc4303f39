#include "exactdiff/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace exactdiff::kern {

const Ops* avx2_ops_impl();  // defined in kernels_avx2.cpp (nullptr when not built)

bool avx2_available() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops& select() {
  const char* pref = std::getenv("EXACTDIFF_SIMD");
  if (pref != nullptr) {
    if (std::strcmp(pref, "scalar") == 0) return scalar_ops();
    if (std::strcmp(pref, "avx2") == 0) {
      const Ops* ops = avx2_ops_impl();
      if (ops != nullptr && avx2_available()) return *ops;
      return scalar_ops();
    }
    // anything else (including "auto") falls through to detection
  }
  const Ops* ops = avx2_ops_impl();
  if (ops != nullptr && avx2_available()) return *ops;
  return scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  static const Ops& ops = select();
  return ops;
}

}  // namespace exactdiff::kern
