#pragma once

#include <optional>

#include <doctest.h>

#include "gslab/error.hpp"

// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<gslab::Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const gslab::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_ERRC(expr, code) CHECK(thrown_code([&] { (void)(expr); }) == std::optional<gslab::Errc>(code))
