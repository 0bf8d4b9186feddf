#include <doctest.h>

#include "support/geometry_properties.hpp"

// Reduced instance counts here; the acceptance suite runs the same
// properties at 200 instances each.

TEST_CASE("geometry property suite (sampled)") {
  for (const auto& r : testsupport::run_geometry_properties(40, 12345u)) {
    INFO(r.name);
    CHECK(r.failures == 0);
  }
}
