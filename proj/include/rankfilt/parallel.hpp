#pragma once

// Deterministic parallel loop helpers.  Every loop writes its results through
// slots indexed by the loop counter, so output never depends on scheduling and
// the parallel path is bit-identical to the serial one.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankfilt::par {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class Fn>
void for_index(std::size_t n, bool parallel, Fn&& fn) {
#ifdef _OPENMP
  if (parallel && n > 1) {
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#else
  (void)parallel;
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <class T, class Fn>
auto map_indexed(const std::vector<T>& in, bool parallel, Fn&& fn)
    -> std::vector<decltype(fn(in[std::size_t(0)]))> {
  std::vector<decltype(fn(in[std::size_t(0)]))> out(in.size());
  for_index(in.size(), parallel, [&](std::size_t i) { out[i] = fn(in[i]); });
  return out;
}

}  // namespace rankfilt::par
