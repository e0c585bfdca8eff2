#include "sws/threads.hpp"

#include <cstdlib>
#include <string>

#if defined(SWS_HAVE_OPENMP)
#include <omp.h>
#endif

namespace sws {

int worker_threads() {
#if defined(SWS_HAVE_OPENMP)
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("CH_THREADS")) {
    try {
      int cap = std::stoi(env);
      if (cap >= 1 && cap < n) n = cap;
    } catch (const std::exception&) {
      // Unparsable value: keep the default.
    }
  }
  return n < 1 ? 1 : n;
#else
  return 1;
#endif
}

void apply_thread_cap() {
#if defined(SWS_HAVE_OPENMP)
  omp_set_num_threads(worker_threads());
#endif
}

}  // namespace sws
