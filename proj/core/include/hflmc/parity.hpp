#pragma once

#include <string>
#include <vector>

namespace hflmc {

/// Max-parity game. A play that gets stuck is lost by the owner of the
/// last position; an infinite play is won by the parity of the largest
/// priority seen infinitely often.
struct ParityGame {
  std::vector<int> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> succ;
  std::vector<std::string> label;
  int initial = 0;

  int add_vertex(int owner, int priority, std::string label = {});
  void add_edge(int from, int to) { succ[from].push_back(to); }
  [[nodiscard]] int size() const { return static_cast<int>(owner.size()); }
  [[nodiscard]] std::size_t num_edges() const;
};

struct ParitySolution {
  /// winner[v] ∈ {0, 1}.
  std::vector<int> winner;
  /// Positional strategy: for every v won by its owner, a successor that
  /// keeps it winning; -1 elsewhere.
  std::vector<int> strategy;
  [[nodiscard]] int winner_at(int v) const { return winner[v]; }
};

/// Zielonka's recursive algorithm.
ParitySolution solve_zielonka(const ParityGame& game);
/// Small progress measures (winning regions only; no strategy).
std::vector<int> solve_spm(const ParityGame& game);

/// Player 0 positional strategy from `game.initial`: no reachable player-0
/// position is stuck or unassigned, and every reachable cycle of the
/// restricted graph has an even maximum priority.
bool check_strategy(const ParityGame& game, const std::vector<int>& strategy);

/// `parity <maxid>;` followed by one line per position.
std::string to_pgsolver(const ParityGame& game);

}  // namespace hflmc
