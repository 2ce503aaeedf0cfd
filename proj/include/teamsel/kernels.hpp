#pragma once

#include <cstddef>

// Inner-loop primitives shared by the objective evaluators, the Gram build,
// the QP solver and the subset enumerators. A scalar reference table defines
// the semantics; an AVX2 table is selected at runtime when the host supports
// it. Results of the two tables agree to rounding (the SIMD variants use
// lane-partial accumulation and FMA), which the test suite checks; exact
// accumulation order is only guaranteed by the scalar table.

namespace teamsel::kernels {

enum class Backend { scalar, avx2 };

struct Ops {
  const char* name;
  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i a[i]^2
  double (*sum_squares)(const double* a, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // dst[i] = a[i] + b[i]
  void (*add)(double* dst, const double* a, const double* b, std::size_t n);
  // y[i] *= alpha
  void (*scale)(double* y, double alpha, std::size_t n);
  // sum_t (sums[t]*inv_m - x[t])^2
  double (*mean_sse)(const double* sums, double inv_m, const double* x,
                     std::size_t n);
};

/// Reference implementation; always available, fixed ascending-index order.
const Ops& scalar_ops();

/// Table for a given backend, or nullptr when this host cannot run it.
const Ops* backend_ops(Backend b);

bool backend_available(Backend b);

/// Table the library routes through. Defaults to the fastest available
/// backend; the TEAMSEL_KERNELS environment variable ("scalar" or "avx2")
/// overrides the default at first use.
const Ops& active();

Backend active_backend();

/// Switch the active table. Returns false (and changes nothing) when the
/// requested backend is unavailable.
bool set_backend(Backend b);

const char* backend_name(Backend b);

}  // namespace teamsel::kernels
