#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hflmc/kind.hpp"
#include "hflmc/lts.hpp"

namespace hflmc {

/// Interned refinement type τ ::= q | σ → τ.
using TypeId = std::uint32_t;
/// Interned intersection σ = {τ₁,…,τ_k}; the empty set is ⊤ of its kind.
using SetId = std::uint32_t;

/// Intern table for refinement types over one LTS. Every type and every
/// set records the kind it refines, so `⊤ → q` at o → o and at
/// (o → o) → o are different types. Not synchronized: use one table per
/// check.
class TypeTable {
 public:
  explicit TypeTable(int num_states);

  [[nodiscard]] int num_states() const { return num_states_; }

  TypeId atom(int q);
  TypeId arrow(SetId arg, TypeId res);
  /// Canonical set of `members`, which must all refine `kind`.
  SetId set(const Kind& kind, std::vector<TypeId> members);
  SetId top(const Kind& kind) { return set(kind, {}); }
  /// σ₁ → ⋯ → σ_k → q
  TypeId arrows(const std::vector<SetId>& args, int q);

  [[nodiscard]] bool is_atom(TypeId t) const { return types_[t].atom; }
  [[nodiscard]] int state(TypeId t) const { return types_[t].state; }
  [[nodiscard]] SetId arg(TypeId t) const { return types_[t].arg; }
  [[nodiscard]] TypeId res(TypeId t) const { return types_[t].res; }
  [[nodiscard]] const Kind& kind(TypeId t) const { return kinds_[types_[t].kind]; }
  [[nodiscard]] const std::vector<TypeId>& members(SetId s) const { return sets_[s].members; }
  [[nodiscard]] const Kind& set_kind(SetId s) const { return kinds_[sets_[s].kind]; }
  /// The result state q of σ₁ → ⋯ → σ_k → q.
  [[nodiscard]] int target(TypeId t) const;
  /// Argument sets σ₁ … σ_k of σ₁ → ⋯ → σ_k → q.
  [[nodiscard]] std::vector<SetId> args(TypeId t) const;
  /// Type left after applying `n` arguments.
  [[nodiscard]] TypeId drop(TypeId t, int n) const;

  /// τ₁ ≤ τ₂ (SubT-Base, SubT-Fun); memoized. Throws KindError on kind mismatch.
  bool subtype(TypeId a, TypeId b);
  /// σ ≤ σ′ iff every member of σ′ has a subtype in σ (SubT-Int).
  bool subtype_set(SetId a, SetId b);

  /// Every τ :: kind, each once, in canonical order. Throws TooManyTypes
  /// when the analytic count exceeds `cap`.
  std::vector<TypeId> refinements(const Kind& kind, std::size_t cap = 100'000);
  /// Analytic number of refinements of `kind` (may be huge).
  [[nodiscard]] double refinement_count(const Kind& kind) const;

  /// `q0`, `T -> q0`, `(q1 /\ q2) -> q0`.
  [[nodiscard]] std::string render(TypeId t, const Lts& lts) const;
  [[nodiscard]] std::string render_set(SetId s, const Lts& lts) const;

  [[nodiscard]] std::size_t num_types() const { return types_.size(); }

 private:
  struct Node {
    bool atom;
    int state;
    SetId arg;
    TypeId res;
    std::uint32_t kind;
  };
  struct SetNode {
    std::uint32_t kind;
    std::vector<TypeId> members;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
  };

  std::uint32_t kind_id(const Kind& k);

  int num_states_;
  std::vector<Node> types_;
  std::vector<SetNode> sets_;
  std::vector<Kind> kinds_;
  std::unordered_map<Kind, std::uint32_t> kind_ids_;
  std::unordered_map<std::uint64_t, TypeId> arrow_ids_;
  std::unordered_map<std::vector<std::uint32_t>, SetId, KeyHash> set_ids_;
  std::unordered_map<std::uint64_t, bool> sub_memo_;
  std::unordered_map<Kind, std::vector<TypeId>> refinement_cache_;
};

}  // namespace hflmc
