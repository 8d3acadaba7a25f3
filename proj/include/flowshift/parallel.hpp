#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace flowshift {

/// Execution policy for grid sweeps. Every kernel has a serial reference
/// path; the parallel path must produce bitwise-identical results (per-index
/// writes only, no floating-point reductions across iterations).
enum class Exec { Serial, Parallel };

/// Parallel unless OpenMP is unavailable or FLOWSHIFT_THREADS=1.
Exec default_exec();

/// Thread cap from FLOWSHIFT_THREADS (0 = unset, use OpenMP default).
int thread_cap();

namespace detail {
void apply_thread_cap();
bool openmp_enabled();
}  // namespace detail

template <class F>
void for_each_index(std::size_t n, F&& fn, Exec mode = default_exec()) {
  if (mode == Exec::Parallel) {
    detail::apply_thread_cap();
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fn(i);
  }
}

/// Like for_each_index, but exceptions thrown by fn are captured inside the
/// parallel region and the first one (by index) is rethrown afterwards.
template <class F>
void for_each_index_guarded(std::size_t n, F&& fn, Exec mode = default_exec()) {
  if (mode != Exec::Parallel) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errs(n);
  detail::apply_thread_cap();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errs[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace flowshift
