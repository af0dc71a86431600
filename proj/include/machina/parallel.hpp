#pragma once

#include <cstddef>

namespace machina {

// Number of worker threads to use. A positive `requested` wins; otherwise
// the CAYLEY_MACHINA_THREADS environment variable caps the OpenMP default.
// Always 1 in builds without OpenMP.
std::size_t worker_count(std::size_t requested = 0);

}  // namespace machina
