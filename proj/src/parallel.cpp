#include "hsns/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "hsns/error.hpp"

namespace hsns {

int configure_threads() {
  if (const char* env = std::getenv("HALFSPACE_NS_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 1 || value > 4096) {
      fail(ErrorKind::Usage, std::string("HALFSPACE_NS_THREADS must be a positive integer, got '") + env + "'");
    }
    omp_set_num_threads(static_cast<int>(value));
  }
  return omp_get_max_threads();
}

}  // namespace hsns
