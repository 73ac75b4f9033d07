#pragma once

#include <cassert>
#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace npg {

// Result of a uniform grid scan for the maximum of a 1-D function.
struct GridMax {
  std::size_t index = 0;
  double x = 0.0;
  double value = 0.0;
};

namespace detail {
inline bool grid_better(double value, std::size_t index, const GridMax& best) {
  // Total order on (value, index); ties break to the lower index.
  return value > best.value || (value == best.value && index < best.index);
}
}  // namespace detail

// Serial reference scan, kept for testing the parallel kernel against.
template <class F>
GridMax grid_max_serial(F&& f, double lo, double hi, std::size_t n) {
  assert(n >= 2);
  const double span = hi - lo;
  GridMax best{0, lo, f(lo)};
  for (std::size_t i = 1; i < n; ++i) {
    const double x = lo + span * (double(i) / double(n - 1));
    const double v = f(x);
    if (detail::grid_better(v, i, best)) best = {i, x, v};
  }
  return best;
}

// Parallel grid scan. Same grid points and reduction order as the serial
// version; results are bit-identical.
template <class F>
GridMax grid_max(F&& f, double lo, double hi, std::size_t n) {
  assert(n >= 2);
#ifdef _OPENMP
  const double span = hi - lo;
  GridMax best{std::size_t(-1), 0.0, -std::numeric_limits<double>::infinity()};
#pragma omp parallel
  {
    GridMax local{std::size_t(-1), 0.0, -std::numeric_limits<double>::infinity()};
#pragma omp for nowait
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      const double x = (i == 0) ? lo : lo + span * (double(i) / double(n - 1));
      const double v = f(x);
      if (detail::grid_better(v, std::size_t(i), local)) local = {std::size_t(i), x, v};
    }
#pragma omp critical(npg_grid_max)
    {
      if (local.index != std::size_t(-1) && detail::grid_better(local.value, local.index, best))
        best = local;
    }
  }
  return best;
#else
  return grid_max_serial(f, lo, hi, n);
#endif
}

template <class F>
void serial_for_index(std::size_t n, F&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

// Data-parallel index loop; bodies must be independent and must not throw.
template <class F>
void parallel_for_index(std::size_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) body(std::size_t(i));
#else
  serial_for_index(n, body);
#endif
}

}  // namespace npg
