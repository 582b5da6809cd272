#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hflmc/derive.hpp"
#include "hflmc/hes.hpp"
#include "hflmc/lts.hpp"
#include "hflmc/parity.hpp"
#include "hflmc/saturation.hpp"

namespace hflmc {

/// Parity game over bindings (player 0) and environments (player 1).
struct TypabilityGame {
  ParityGame arena;
  std::shared_ptr<TypeTable> types;
  /// Player-0 position of each binding.
  std::map<Binding, int> position;
  /// For player-0 positions: the binding; for player-1 positions: nullopt.
  std::vector<std::optional<Binding>> binding_at;
  /// For player-1 positions: the environment.
  std::vector<TypeEnv> env_at;
  [[nodiscard]] int initial() const { return arena.initial; }
};

/// Subgame over the saturated Γ plus F₁ : q₀, with E₀ from the witnesses.
TypabilityGame build_subgame(const Lts& lts, const Hes& hes, const SaturationState& sat);

/// The complete typability game over every refinement of every equation
/// kind, E₀ given by minimal witnesses. Throws TooManyTypes beyond `cap`
/// refinements per kind.
TypabilityGame build_full_game(const Lts& lts, const Hes& hes, std::size_t cap = 2'000);

/// Re-assigns player-0 priorities from a per-equation map.
void apply_priorities(TypabilityGame& game, const Hes& hes, const std::vector<int>& omega);

/// Does Γ ⊢ φ_j : τ hold for the given binding and environment? Direct
/// check used to validate game edges.
bool derives_binding(TypeTable& types, const Lts& lts, const Hes& hes, const TypeEnv& gamma, const Binding& b);

}  // namespace hflmc
