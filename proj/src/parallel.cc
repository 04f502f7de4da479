#include "ordmatch/parallel.h"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ordmatch {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("ORDMATCH_THREADS")) {
    try {
      const int threads = std::stoi(env);
      if (threads > 0) set_max_threads(threads);
    } catch (const std::exception&) {
      // Ignore malformed values and keep the runtime default.
    }
  }
  return max_threads();
}

}  // namespace ordmatch
