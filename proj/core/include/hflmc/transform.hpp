#pragma once

#include <cstddef>
#include <vector>

#include "hflmc/hes.hpp"

namespace hflmc {

/// Closed HFL formula equivalent to a kinded HES, built by substituting
/// equations into their predecessors from the last one upwards.
Formula to_hfl(const Hes& hes);

/// Kinded HES equivalent to a closed formula of kind o. Every binder must
/// carry a kind annotation (see annotate_kinds). Throws KindError when the
/// formula is open or not of kind o.
Hes hes_of_formula(const Formula& f);

/// All one-step rewrites of `f` (one per redex, in pre-order). Contexts
/// descend through ∨, ∧, ⟨a⟩ and [a] only.
std::vector<Formula> unfold_step(const Formula& f, const Hes& hes);

/// Rewrites `f` until no redex is left. Only terminates on recursion-free
/// systems; throws BudgetExceeded after `max_steps` rewrites.
Formula normalize(const Formula& f, const Hes& hes, std::size_t max_steps = 1'000'000);

enum class ApproxTags {
  Reachable,  // only tags reachable from the entry tag (m)
  All,        // every tag in {0..m}^j for each equation j
};

/// The recursion-free system E^(m). Tagged equations are named like
/// `F^(0,1)`, and their parameters are renamed per copy.
Hes approximate(const Hes& hes, int m, ApproxTags tags = ApproxTags::Reachable);

/// True when the dependency graph between equations is acyclic.
bool is_recursion_free(const Hes& hes);

}  // namespace hflmc
