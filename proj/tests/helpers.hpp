#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "fgq/fgq.hpp"

inline auto KindIs(const char* kind) {
  return Catch::Matchers::Predicate<fgq::Error>(
      [kind](const fgq::Error& e) { return e.kind() == kind; },
      std::string("error kind is ") + kind);
}
