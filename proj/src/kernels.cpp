#include "teamsel/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

// Runtime backend selection. This translation unit is built without AVX2
// flags so the cpuid probe itself never executes AVX2 instructions.

namespace teamsel::kernels {

const Ops* avx2_ops_table();  // kernels_avx2.cpp; nullptr when not built in

namespace {

bool host_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* resolve(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &scalar_ops();
    case Backend::avx2:
      if (avx2_ops_table() != nullptr && host_has_avx2()) return avx2_ops_table();
      return nullptr;
  }
  return nullptr;
}

const Ops* default_table() {
  if (const char* env = std::getenv("TEAMSEL_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(env, "avx2") == 0) {
      if (const Ops* t = resolve(Backend::avx2)) return t;
    }
  }
  if (const Ops* t = resolve(Backend::avx2)) return t;
  return &scalar_ops();
}

std::atomic<const Ops*>& active_slot() {
  static std::atomic<const Ops*> slot{default_table()};
  return slot;
}

}  // namespace

const Ops* backend_ops(Backend b) { return resolve(b); }

bool backend_available(Backend b) { return resolve(b) != nullptr; }

const Ops& active() { return *active_slot().load(std::memory_order_acquire); }

Backend active_backend() {
  return &active() == &scalar_ops() ? Backend::scalar : Backend::avx2;
}

bool set_backend(Backend b) {
  const Ops* t = resolve(b);
  if (t == nullptr) return false;
  active_slot().store(t, std::memory_order_release);
  return true;
}

const char* backend_name(Backend b) {
  return b == Backend::scalar ? "scalar" : "avx2";
}

}  // namespace teamsel::kernels
