#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace qbvp {

/// Selects between the OpenMP kernels and the plain loops they are tested against.
enum class Execution { serial, parallel };

/// Runs fn(i) for i in [0, n). The parallel path uses a static OpenMP schedule;
/// every index writes only its own outputs, so both paths produce identical bits.
/// If any call throws, the exception of the lowest failing index is rethrown.
template <class Fn>
void for_each_index(Execution policy, std::size_t n, Fn&& fn) {
  if (policy == Execution::serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qbvp
