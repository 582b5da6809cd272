#pragma once

#include <random>
#include <vector>

#include "hflmc/parity.hpp"

namespace fixtures {

/// Winner of every position by enumerating player-0 positional strategies.
/// Feasible for games with a few thousand strategies at most.
std::vector<int> brute_force_winners(const hflmc::ParityGame& game);

/// Random game with `n` positions, priorities below `max_priority`, and
/// out-degree at most `max_degree` (possibly zero).
hflmc::ParityGame random_game(std::mt19937_64& rng, int n, int max_priority, int max_degree);

}  // namespace fixtures
