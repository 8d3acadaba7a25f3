#include "flowshift/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flowshift {

int thread_cap() {
  static const int cap = [] {
    const char* env = std::getenv("FLOWSHIFT_THREADS");
    if (!env) return 0;
    try {
      const int v = std::stoi(env);
      return v > 0 ? v : 0;
    } catch (...) {
      return 0;
    }
  }();
  return cap;
}

namespace detail {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

void apply_thread_cap() {
#ifdef _OPENMP
  static std::once_flag once;
  std::call_once(once, [] {
    if (thread_cap() > 0) omp_set_num_threads(thread_cap());
  });
#endif
}

}  // namespace detail

Exec default_exec() {
  if (!detail::openmp_enabled()) return Exec::Serial;
  if (thread_cap() == 1) return Exec::Serial;
  return Exec::Parallel;
}

}  // namespace flowshift
