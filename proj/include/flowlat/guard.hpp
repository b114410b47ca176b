#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace flowlat {

inline constexpr const char* kVersion = "0.1.0";

// Memory budget in MiB, overridable through FLOWLAT_GUARD_MB.
std::size_t guard_budget_mb();

// Throws guard_error when the estimate exceeds the budget.
void require_memory(std::uint64_t bytes_estimate, const std::string& what);

// Work guard for candidate enumerations (scales with the memory budget).
void require_work(std::uint64_t units_estimate, const std::string& what);

}  // namespace flowlat
