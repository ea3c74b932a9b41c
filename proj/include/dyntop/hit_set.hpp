#pragma once

#include <string_view>

#include "dyntop/timeset.hpp"

namespace dyntop {

/// Whether a computed time set is the true set at the horizon, or only a
/// witness-certified subset of it.
enum class Exactness { exact, lower_bound };

inline Exactness combine(Exactness a, Exactness b) {
  return (a == Exactness::exact && b == Exactness::exact) ? Exactness::exact : Exactness::lower_bound;
}

inline std::string_view to_string(Exactness e) {
  return e == Exactness::exact ? "exact" : "lower-bound";
}

struct HitSet {
  TimeSet times;
  Exactness exactness = Exactness::exact;

  bool exact() const noexcept { return exactness == Exactness::exact; }
};

}  // namespace dyntop
