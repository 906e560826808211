#pragma once

#include <cstddef>
#include <functional>

namespace coxdom {

// Worker count for library-level loops; 0 or 1 runs inline.
void set_thread_count(std::size_t n);
std::size_t thread_count();

// Calls fn(i) for i in [0, n). Iterations must be independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace coxdom
