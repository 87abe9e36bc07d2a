#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mcwave {

/// Execution policy for the Monte-Carlo and spectral-accumulation kernels.
/// Serial runs the plain reference loop; Parallel uses the OpenMP kernels.
/// Both must produce bit-identical results: per-trial random streams are
/// derived from (seed, trial index) and reductions are either integer counts
/// or accumulate in a fixed order.
enum class ExecMode { Serial, Parallel };

inline int exec_threads(ExecMode mode) {
#ifdef _OPENMP
  return mode == ExecMode::Parallel ? omp_get_max_threads() : 1;
#else
  (void)mode;
  return 1;
#endif
}

}  // namespace mcwave
