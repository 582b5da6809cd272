#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "hflmc/hes.hpp"

namespace hflmc {

struct SelftestHooks {
  /// Replaces priorities() in every game built by the self-test.
  std::function<std::vector<int>(const Hes&)> priorities;
};

/// Embedded golden examples plus a fixed-seed oracle-equivalence suite.
/// Prints one line per suite and returns true iff all pass. Output is
/// deterministic.
bool run_selftest(std::ostream& out, const SelftestHooks& hooks = {});

}  // namespace hflmc
