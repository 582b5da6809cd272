#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hflmc/derive.hpp"
#include "hflmc/flow.hpp"
#include "hflmc/hes.hpp"
#include "hflmc/lts.hpp"
#include "hflmc/rtype.hpp"

namespace hflmc {

struct SaturationOptions {
  /// Γ₀ only for ν-equations heading a call-graph cycle of their priority.
  bool restrict_gamma0 = true;
  /// Drop (τ, W) when some (τ′, W′) with τ′ ≤ τ and W′ ⊆ W was derived too.
  bool subsume_prune = true;
  bool trace = false;
};

/// One derivation found in an iteration: Γ-part ∪ Δ ⊢ ψ_j : q.
struct Judgment {
  Binding binding;
  TypeEnv gamma_part;
  TypeEnv delta;
};

struct SaturationState {
  std::shared_ptr<TypeTable> types;
  TypeEnv gamma;
  TypeEnv gamma0;
  /// Binding ↦ ⊆-minimal environments (subsets of the final Γ) deriving it.
  std::map<Binding, Family> witnesses;
  /// Productive iterations so far.
  int iterations = 0;
  /// Bindings added by each productive iteration.
  std::vector<TypeEnv> deltas;
  /// Judgments justifying the bindings of deltas[k], for traces.
  std::vector<std::vector<Judgment>> delta_judgments;
};

TypeEnv initial_env(TypeTable& types, const Lts& lts, const Hes& hes, const SaturationOptions& opts);

/// One application of the expansion function. Returns true iff Γ grew.
/// The witness store is rebuilt against the input Γ on every call.
bool expand(SaturationState& state, const Lts& lts, const Hes& hes, const FlowMap& flow,
            const SaturationOptions& opts);

SaturationState saturate(const Lts& lts, const Hes& hes, const FlowMap& flow, const SaturationOptions& opts);

/// Fixpoint of expand above an explicit initial environment, which must be
/// built over `types`.
SaturationState saturate_from(std::shared_ptr<TypeTable> types, TypeEnv initial, const Lts& lts, const Hes& hes,
                              const FlowMap& flow, const SaturationOptions& opts);

/// `F : T -> q0`
std::string render_binding(const TypeTable& types, const Lts& lts, const Binding& b);
/// `{S : q0, X : q1}`
std::string render_env(const TypeTable& types, const Lts& lts, const TypeEnv& env);
/// Final Γ, one binding per line in canonical order.
std::string dump_types(const SaturationState& state, const Lts& lts, const Hes& hes);
/// Per-iteration log of Γ_k and the newly derivable judgments.
std::string trace_string(const SaturationState& state, const Lts& lts, const Hes& hes);

/// Canonical order for bindings: equation order, then type id.
std::vector<Binding> sorted_bindings(const TypeEnv& env, const Hes& hes);

}  // namespace hflmc
