#include "machina/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace machina {

std::size_t worker_count(std::size_t requested) {
#ifdef _OPENMP
  if (requested > 0) {
    return requested;
  }
  std::size_t n = static_cast<std::size_t>(omp_get_max_threads());
  if (char const* env = std::getenv("CAYLEY_MACHINA_THREADS")) {
    try {
      std::size_t cap = std::stoul(env);
      if (cap > 0 && cap < n) {
        n = cap;
      }
    } catch (std::exception const&) {
      // unparsable values are ignored
    }
  }
  return n == 0 ? 1 : n;
#else
  (void) requested;
  return 1;
#endif
}

}  // namespace machina
