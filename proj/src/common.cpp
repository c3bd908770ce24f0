#include "kacspec/common.hpp"

namespace kacspec::par {

namespace {
int g_threads = 0;
}

int threads() { return g_threads; }

void set_threads(int n) {
  g_threads = n < 0 ? 0 : n;
#ifdef _OPENMP
  if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

void init_from_env() {
  const char* env = std::getenv("KACSPEC_THREADS");
  if (env != nullptr) {
    int n = std::atoi(env);
    if (n > 0) set_threads(n);
  }
}

}  // namespace kacspec::par
