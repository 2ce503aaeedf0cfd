#include "teamsel/subset_enum.hpp"

#include <limits>
#include <stdexcept>

#include "teamsel/kernels.hpp"

namespace teamsel {

namespace {

struct Walker {
  const ErrorMatrix& errors;
  const kernels::Ops& ops;
  std::size_t n;
  std::size_t k;
  std::vector<std::vector<double>> sums;  // one buffer per recursion depth
  std::vector<int> stack;
  BestBySize out;

  explicit Walker(const ErrorMatrix& e)
      : errors(e),
        ops(kernels::active()),
        n(e.n_experts()),
        k(e.n_rounds()),
        sums(n + 1, std::vector<double>(k, 0.0)) {
    out.sse.assign(n, std::numeric_limits<double>::infinity());
    out.members.resize(n);
    stack.reserve(n);
  }

  // Depth-first with include-before-exclude in ascending index order, so for
  // each size the first subset reaching a given value is the
  // lexicographically smallest.
  void visit(std::size_t next, std::size_t depth) {
    for (std::size_t i = next; i < n; ++i) {
      ops.add(sums[depth + 1].data(), sums[depth].data(), errors.row(i), k);
      stack.push_back(static_cast<int>(i));
      const std::size_t m = depth + 1;
      const double inv = 1.0 / static_cast<double>(m);
      const double f = inv * inv * ops.sum_squares(sums[m].data(), k);
      if (f < out.sse[m - 1]) {
        out.sse[m - 1] = f;
        out.members[m - 1] = stack;
      }
      visit(i + 1, m);
      stack.pop_back();
    }
  }
};

}  // namespace

BestBySize best_teams_by_size(const ErrorMatrix& errors) {
  if (errors.n_experts() > 30)
    throw std::invalid_argument("best_teams_by_size: n > 30");
  Walker w(errors);
  w.visit(0, 0);
  return w.out;
}

}  // namespace teamsel
