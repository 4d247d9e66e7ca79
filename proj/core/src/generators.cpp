#include "qapmap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qapmap/error.hpp"
#include "qapmap/rng.hpp"

namespace qapmap {

WeightedGraph gen_rgg(int exponent, uint64_t seed) {
  if (exponent < 0 || exponent > 24)
    throw Error(ErrorCode::InvalidArgument, "rgg exponent must lie in 0..24");
  const int n = 1 << exponent;
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.next_unit();
    y[i] = rng.next_unit();
  }

  GraphBuilder builder(n);
  const double r = n > 1 ? 0.55 * std::sqrt(std::log(static_cast<double>(n)) / n) : 0.0;
  if (r > 0.0) {
    const double r2 = r * r;
    const int cols = std::max(1, static_cast<int>(std::floor(1.0 / r)));
    auto cell_of = [&](double coord) {
      return std::min(cols - 1, static_cast<int>(coord * cols));
    };
    std::vector<std::vector<int>> bucket(static_cast<size_t>(cols) * cols);
    for (int i = 0; i < n; ++i)
      bucket[static_cast<size_t>(cell_of(y[i])) * cols + cell_of(x[i])].push_back(i);

    for (int i = 0; i < n; ++i) {
      const int cx = cell_of(x[i]);
      const int cy = cell_of(y[i]);
      for (int by = std::max(0, cy - 1); by <= std::min(cols - 1, cy + 1); ++by) {
        for (int bx = std::max(0, cx - 1); bx <= std::min(cols - 1, cx + 1); ++bx) {
          for (int j : bucket[static_cast<size_t>(by) * cols + bx]) {
            if (j >= i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            if (dx * dx + dy * dy < r2) builder.add_edge(j, i);
          }
        }
      }
    }
  }
  return builder.build();
}

WeightedGraph gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1)
    throw Error(ErrorCode::InvalidArgument, "grid needs at least one row and column");
  if (static_cast<int64_t>(rows) * cols > (1LL << 31) - 1)
    throw Error(ErrorCode::InvalidArgument, "grid too large");
  const int n = rows * cols;
  GraphBuilder builder(n);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int u = r * cols + c;
      if (c + 1 < cols) builder.add_edge(u, u + 1);
      if (r + 1 < rows) builder.add_edge(u, u + cols);
    }
  }
  return builder.build();
}

}  // namespace qapmap
