#include "flowlat/guard.hpp"

#include <cstdlib>

#include "flowlat/errors.hpp"

namespace flowlat {

std::size_t guard_budget_mb() {
  static const std::size_t budget = [] {
    if (const char* env = std::getenv("FLOWLAT_GUARD_MB")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(2048);
  }();
  return budget;
}

void require_memory(std::uint64_t bytes_estimate, const std::string& what) {
  const std::uint64_t budget = static_cast<std::uint64_t>(guard_budget_mb()) << 20;
  if (bytes_estimate > budget) {
    throw guard_error(what + ": estimated " + std::to_string(bytes_estimate >> 20) +
                      " MiB exceeds guard of " + std::to_string(guard_budget_mb()) +
                      " MiB (override with FLOWLAT_GUARD_MB)");
  }
}

void require_work(std::uint64_t units_estimate, const std::string& what) {
  // Roughly 100k enumeration steps per MiB of budget keeps the default
  // around 2e8 candidate visits.
  const std::uint64_t limit = static_cast<std::uint64_t>(guard_budget_mb()) * 100000ULL;
  if (units_estimate > limit) {
    throw guard_error(what + ": estimated " + std::to_string(units_estimate) +
                      " enumeration steps exceeds guard (override with FLOWLAT_GUARD_MB)");
  }
}

}  // namespace flowlat
