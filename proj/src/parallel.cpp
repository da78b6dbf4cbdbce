#include "cslab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cslab {

unsigned default_worker_count() {
  if (const char* env = std::getenv("CSLAB_THREADS"); env != nullptr && *env != '\0') {
    try {
      const unsigned long requested = std::stoul(env);
      if (requested > 0) return static_cast<unsigned>(requested);
    } catch (const std::exception&) {
      // fall through to auto
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace cslab
