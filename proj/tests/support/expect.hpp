#pragma once

#include <optional>

#include "mpos/error.hpp"

namespace testing {

/// Code of the mpos::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<mpos::Errc> error_of(F&& f) {
  try {
    f();
  } catch (const mpos::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
