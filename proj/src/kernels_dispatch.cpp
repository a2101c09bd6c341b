#include "renorm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace renorm::kern {

#if !defined(RENORM_HAVE_AVX2) && !defined(RENORM_HAVE_NEON)
const Ops* simd_ops_or_null() { return nullptr; }
#endif

namespace {

std::atomic<const Ops*> g_forced{nullptr};

const Ops* resolve() {
  if (const char* env = std::getenv("RENORM_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    const Ops* simd = simd_ops_or_null();
    if (simd && std::strcmp(env, simd->name) == 0) return simd;
  }
  if (const Ops* simd = simd_ops_or_null()) return simd;
  return &scalar_ops();
}

}  // namespace

const Ops& active_ops() {
  if (const Ops* f = g_forced.load(std::memory_order_relaxed)) return *f;
  static const Ops* selected = resolve();
  return *selected;
}

void set_forced(const char* name) {
  if (!name) {
    g_forced.store(nullptr, std::memory_order_relaxed);
    return;
  }
  if (std::strcmp(name, "scalar") == 0) {
    g_forced.store(&scalar_ops(), std::memory_order_relaxed);
    return;
  }
  const Ops* simd = simd_ops_or_null();
  if (simd && std::strcmp(name, simd->name) == 0)
    g_forced.store(simd, std::memory_order_relaxed);
}

}  // namespace renorm::kern
