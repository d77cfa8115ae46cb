#pragma once

#include "fsmkit/smt.hpp"

#include <string>

namespace fsmkit::testing {

inline Value q(long n, long d = 1) { return Value::number(Rational(n, d)); }

/// Speed up to 5, coast, brake: reaches location 10 at rest.
inline SmtModel car_plan() {
  SmtModel m;
  const bool accel[] = {true, false, false}, decel[] = {false, false, true};
  const Value duration[] = {q(5, 3), q(1, 3), q(5, 3)};
  const Value speed[] = {q(0), q(5), q(5), q(0)};
  const Value location[] = {q(0), q(25, 6), q(35, 6), q(10)};
  for (int s = 0; s < 3; ++s) {
    m["accel(" + std::to_string(s) + ")"] = Value::boolean(accel[s]);
    m["decel(" + std::to_string(s) + ")"] = Value::boolean(decel[s]);
    m["duration(" + std::to_string(s) + ")"] = duration[s];
  }
  for (int s = 0; s < 4; ++s) {
    m["speed(" + std::to_string(s) + ")"] = speed[s];
    m["location(" + std::to_string(s) + ")"] = location[s];
  }
  return m;
}

}  // namespace fsmkit::testing
