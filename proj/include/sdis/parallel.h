#pragma once

/// Static-partition parallel loop. Results must be written by index so the
/// outcome does not depend on the worker count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sdis {

/// Calls body(i) for i in [0, n) on up to `workers` threads. The first
/// exception (by thread order) is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t n, int workers, Body&& body) {
  const std::size_t w = std::min<std::size_t>(std::max(workers, 1), n);
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  {
    std::vector<std::jthread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) {
      threads.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += w) body(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sdis
