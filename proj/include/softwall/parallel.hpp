#pragma once

// Grid kernels run either serially (the reference path, kept for
// testing) or OpenMP-parallel.  Results are written by index, so the
// two paths produce identical bytes.

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace softwall {

enum class Exec { Serial, Parallel };

// SOFTWALL_THREADS caps the worker count.
inline int thread_budget() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("SOFTWALL_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

template <class F>
void for_each_index(long n, Exec exec, F&& f, int chunk = 1) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
    const int nt = thread_budget();
#pragma omp parallel for schedule(dynamic, chunk) num_threads(nt)
    for (long i = 0; i < n; ++i) f(i);
    return;
#endif
  }
  (void)chunk;
  for (long i = 0; i < n; ++i) f(i);
}

}  // namespace softwall
