#pragma once

#include <cstddef>
#include <functional>

namespace conehull {

// Caps internal parallelism (0 = hardware concurrency). Also applied to the BLAS backend.
void set_thread_count(std::size_t n);
std::size_t thread_count();

// Runs body(c) for c in [0, chunks). The chunk decomposition is fixed by the
// caller, so results never depend on how many threads execute it.
void parallel_for(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace conehull
