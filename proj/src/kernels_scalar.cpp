#include "teamsel/kernels.hpp"

// Reference kernels. Plain ascending loops; every sum accumulates in index
// order so results are reproducible across runs of the same build.

namespace teamsel::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum_squares_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * a[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void add_scalar(double* dst, const double* a, const double* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] + b[i];
}

void scale_scalar(double* y, double alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= alpha;
}

double mean_sse_scalar(const double* sums, double inv_m, const double* x,
                       std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = sums[i] * inv_m - x[i];
    acc += e * e;
  }
  return acc;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{
      "scalar",     dot_scalar,   sum_squares_scalar,
      axpy_scalar,  add_scalar,   scale_scalar,
      mean_sse_scalar,
  };
  return table;
}

}  // namespace teamsel::kernels
