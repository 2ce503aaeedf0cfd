#include <cmath>
#include <vector>

#include "doctest.h"
#include "teamsel/kernels.hpp"
#include "teamsel/rng.hpp"

using teamsel::kernels::Backend;
using teamsel::kernels::Ops;

namespace {

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

std::vector<double> random_vec(teamsel::rng::SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.next_uniform(-100.0, 100.0);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar basics") {
  const auto& ops = teamsel::kernels::scalar_ops();
  const double a[] = {1.0, 2.0, 3.0};
  const double b[] = {4.0, -5.0, 6.0};
  CHECK(ops.dot(a, b, 3) == 12.0);
  CHECK(ops.sum_squares(a, 3) == 14.0);

  double y[] = {1.0, 1.0, 1.0};
  ops.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);

  double dst[3];
  ops.add(dst, a, b, 3);
  CHECK(dst[1] == -3.0);

  ops.scale(dst, 0.5, 3);
  CHECK(dst[0] == 2.5);

  const double sums[] = {2.0, 6.0};
  const double x[] = {0.0, 2.0};
  // (2/2 - 0)^2 + (6/2 - 2)^2 = 1 + 1
  CHECK(ops.mean_sse(sums, 0.5, x, 2) == 2.0);
}

TEST_CASE("zero length") {
  const auto& ops = teamsel::kernels::scalar_ops();
  CHECK(ops.dot(nullptr, nullptr, 0) == 0.0);
  CHECK(ops.sum_squares(nullptr, 0) == 0.0);
}

TEST_CASE("avx2 matches scalar across lengths") {
  const Ops* simd = teamsel::kernels::backend_ops(Backend::avx2);
  if (simd == nullptr) return;  // host without AVX2
  const auto& ref = teamsel::kernels::scalar_ops();

  auto rng = teamsel::rng::derive(42, "kernel-equiv");
  std::vector<std::size_t> lengths;
  for (std::size_t n = 1; n <= 40; ++n) lengths.push_back(n);
  lengths.insert(lengths.end(), {63, 64, 65, 129, 1000});

  for (std::size_t n : lengths) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    CAPTURE(n);

    CHECK(rel_diff(ref.dot(a.data(), b.data(), n),
                   simd->dot(a.data(), b.data(), n)) < 1e-12);
    CHECK(rel_diff(ref.sum_squares(a.data(), n),
                   simd->sum_squares(a.data(), n)) < 1e-12);
    CHECK(rel_diff(ref.mean_sse(a.data(), 0.25, b.data(), n),
                   simd->mean_sse(a.data(), 0.25, b.data(), n)) < 1e-12);

    auto y1 = b;
    auto y2 = b;
    ref.axpy(1.75, a.data(), y1.data(), n);
    simd->axpy(1.75, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(rel_diff(y1[i], y2[i]) < 1e-14);

    std::vector<double> d1(n);
    std::vector<double> d2(n);
    ref.add(d1.data(), a.data(), b.data(), n);
    simd->add(d2.data(), a.data(), b.data(), n);
    CHECK(d1 == d2);  // plain adds, no reassociation

    auto s1 = a;
    auto s2 = a;
    ref.scale(s1.data(), -0.3, n);
    simd->scale(s2.data(), -0.3, n);
    CHECK(s1 == s2);
  }
}

TEST_CASE("backend switching") {
  const Backend initial = teamsel::kernels::active_backend();
  REQUIRE(teamsel::kernels::set_backend(Backend::scalar));
  CHECK(teamsel::kernels::active_backend() == Backend::scalar);
  CHECK(&teamsel::kernels::active() == &teamsel::kernels::scalar_ops());
  if (teamsel::kernels::backend_available(Backend::avx2)) {
    REQUIRE(teamsel::kernels::set_backend(Backend::avx2));
    CHECK(teamsel::kernels::active_backend() == Backend::avx2);
  }
  REQUIRE(teamsel::kernels::set_backend(initial));
}

}  // TEST_SUITE
