#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

// Internal 1-D search helpers shared by the rate and bound optimizers.
// Deterministic: fixed grids, fixed shrink rule, ties resolved toward the
// smaller abscissa.

namespace relaysec::detail {

struct SearchResult {
  double x;
  double value;
};

// Golden-section maximization on [lo, hi]. The interval shrinks until its
// width drops below tol (absolute). On ties the right end moves, so flat
// objectives drift toward the smaller x.
template <typename F>
SearchResult golden_max(F&& f, double lo, double hi, double tol,
                        int max_iter = 200) {
  constexpr double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? SearchResult{c, fc} : SearchResult{d, fd};
}

// Maximize over an explicit candidate grid, then refine with golden section
// inside the bracket around the best grid point. The grid winner is kept when
// refinement cannot beat it. Ties break toward the first (smallest) point.
template <typename F>
SearchResult grid_then_golden_max(F&& f, const std::vector<double>& grid,
                                  double tol) {
  std::size_t best = 0;
  double best_val = f(grid[0]);
  std::vector<double> vals(grid.size());
  vals[0] = best_val;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    vals[i] = f(grid[i]);
    if (vals[i] > best_val) {
      best_val = vals[i];
      best = i;
    }
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  if (hi > lo) {
    const SearchResult refined = golden_max(f, lo, hi, tol);
    if (refined.value > best_val) {
      return refined;
    }
  }
  return SearchResult{grid[best], best_val};
}

// Uniform grid of n points on [lo + margin, hi - margin].
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

// Root of an increasing function on (lo, hi) by bisection on the sign change;
// stops when the interval is narrower than tol. Assumes f(lo) < 0 < f(hi).
template <typename F>
double bisect_increasing(F&& f, double lo, double hi, double tol,
                         int max_iter = 200) {
  for (int it = 0; it < max_iter && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace relaysec::detail
