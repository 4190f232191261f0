#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace bushdx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Entry point of the bushdx tool. `args` includes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bushdx::cli
