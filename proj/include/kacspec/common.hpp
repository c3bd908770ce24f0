#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kacspec {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Requested tolerance could not be met at the configured refinement limit.
struct accuracy_error : std::runtime_error {
  explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input is valid but outside the range the implementation supports.
struct capability_error : std::runtime_error {
  explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Two independent computational routes disagree beyond their cross-check tolerance.
struct consistency_error : std::runtime_error {
  explicit consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace par {

// Thread count used by the OpenMP kernels. 0 means "runtime default".
int threads();
void set_threads(int n);

// Resolve thread count from the KACSPEC_THREADS environment variable if set.
void init_from_env();

}  // namespace par

}  // namespace kacspec
