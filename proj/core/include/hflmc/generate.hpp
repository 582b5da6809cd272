#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "hflmc/hes.hpp"
#include "hflmc/lts.hpp"

namespace hflmc {

struct GenOptions {
  int max_order = 1;  // 0, 1 or 2
  int max_equations = 3;
  int max_states = 3;
  int max_arity = 2;
  int max_depth = 3;
  int num_actions = 2;
  /// Probability of each possible transition.
  double edge_density = 0.35;
  /// Upper bound on the number of argument tuples of any equation, so
  /// the semantic oracle can tabulate it; 0 disables the bound.
  double max_oracle_table = 1e5;
};

struct Instance {
  std::string hes_text;
  std::string lts_text;
  Hes hes;
  Lts lts;
};

/// Random well-kinded HES (parameters annotated) and LTS. Parameter kinds
/// are o, or o -> o when order 2 is allowed, which keeps every instance
/// within reach of the semantic oracle.
Instance generate_instance(std::mt19937_64& rng, const GenOptions& opts);

/// Number of argument tuples of the largest equation over `states` states
/// (parameters of kind o or o -> o only).
double oracle_table_size(const Hes& hes, int states);

Lts generate_lts(std::mt19937_64& rng, int states, int actions, double density);

}  // namespace hflmc
