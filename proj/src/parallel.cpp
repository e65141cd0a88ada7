#include "nilcount/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace nilcount {

unsigned default_workers() {
  if (const char* env = std::getenv("NILCOUNT_WORKERS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(std::min(parsed, 256L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 8u);
}

}  // namespace nilcount
