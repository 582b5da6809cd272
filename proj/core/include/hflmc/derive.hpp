#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "hflmc/formula.hpp"
#include "hflmc/rtype.hpp"

namespace hflmc {

struct Binding {
  Symbol var;
  TypeId type = 0;
  friend bool operator==(const Binding&, const Binding&) = default;
  friend auto operator<=>(const Binding&, const Binding&) = default;
};

/// Sorted, duplicate-free set of bindings.
using TypeEnv = std::vector<Binding>;

/// Inserts `b` keeping the environment canonical.
void env_insert(TypeEnv& env, Binding b);
bool env_contains(const TypeEnv& env, const Binding& b);
/// a ⊆ b for canonical environments.
bool env_subset(const TypeEnv& a, const TypeEnv& b);

/// ⊆-minimal family of environments.
using Family = std::vector<TypeEnv>;

/// Drops duplicates and strict supersets; the result is sorted.
void minimize(Family& fam);

/// Types available for a variable at a leaf (its Γ(X) or its candidates).
using Available = std::function<const std::vector<TypeId>&(Symbol)>;

/// Syntax-directed derivation engine for λ-free bodies. For a term and a
/// target type it computes every ⊆-minimal set of leaf bindings over which
/// the typing is derivable. Subsumption is applied where a head's result
/// meets the target; results are memoized per (node, target).
class Deriver {
 public:
  Deriver(TypeTable& types, const Lts& lts, Available available, std::size_t family_cap = 20'000);

  /// Minimal witnesses of ⊢ f : target. Empty when not derivable.
  const Family& derive(const Formula& f, TypeId target);

  /// Generator types of a term of kind `kind`: at kind o every state it
  /// derives; at an arrow kind the types σ → ⋯ → q obtained by applying a
  /// head binding to arguments that derive its demands (no upward closure).
  std::vector<TypeId> types_of(const Formula& f, const Kind& kind);

  void clear() { memo_.clear(); }

 private:
  Family derive_spine(const Formula& f, TypeId target);

  TypeTable& types_;
  const Lts& lts_;
  Available available_;
  std::size_t cap_;
  struct KeyHash {
    std::size_t operator()(const std::pair<const FormulaNode*, TypeId>& k) const noexcept {
      return std::hash<const void*>{}(k.first) * 31 + k.second;
    }
  };
  std::unordered_map<std::pair<const FormulaNode*, TypeId>, Family, KeyHash> memo_;
};

/// All ⊆-minimal witnesses of Γ ∪ Δ ⊢ body : q where equation variables
/// are typed by `gamma` and every other variable by `candidates`.
Family derive(TypeTable& types, const Lts& lts, const TypeEnv& gamma, const Formula& body, int q,
              const std::unordered_map<Symbol, std::vector<TypeId>>& candidates = {});

/// Generator types of `f` under `gamma` (see Deriver::types_of).
std::vector<TypeId> types_of(TypeTable& types, const Lts& lts, const TypeEnv& gamma, const Formula& f,
                             const Kind& kind);

}  // namespace hflmc
