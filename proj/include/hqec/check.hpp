#pragma once

#include <stdexcept>
#include <string>

namespace hqec::detail {

// Structural invariant check that stays active in release builds.
inline void check(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("hqec internal invariant failed: " + msg);
}

}  // namespace hqec::detail
