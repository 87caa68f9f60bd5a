#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace benlab {

inline int omp_default_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace benlab
