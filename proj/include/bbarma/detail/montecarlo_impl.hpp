#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bbarma::mc {

template <class Body>
void for_each_replication(int n, Execution exec, int workers, Body&& body) {
  if (exec == Execution::serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < n; ++i) body(i);
#else
  (void)workers;
  for (int i = 0; i < n; ++i) body(i);
#endif
}

}  // namespace bbarma::mc
