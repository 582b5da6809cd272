#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "hflmc/hes.hpp"
#include "hflmc/lts.hpp"

namespace hflmc {

/// Set of LTS states, one bit per state index. The oracle only supports
/// systems with at most 30 states.
using StateSet = std::uint64_t;

enum class Verdict : std::uint8_t { Valid, Invalid };
inline const char* verdict_str(Verdict v) { return v == Verdict::Valid ? "valid" : "invalid"; }

/// The finite lattice D_{L,η}, enumerated in canonical order: numeric
/// bitset order at kind o, lexicographic table order at arrow kinds. The
/// canonical order is a linear extension of the lattice order, so position
/// 0 is ⊥ and the last position is ⊤.
class Domain {
 public:
  Kind kind;
  /// Argument and result lattices of an arrow kind; null at kind o.
  const Domain* arg = nullptr;
  const Domain* res = nullptr;

  [[nodiscard]] std::uint32_t size() const { return size_; }
  [[nodiscard]] std::uint32_t bottom() const { return 0; }
  [[nodiscard]] std::uint32_t top() const { return size_ - 1; }
  /// Monotone table of element `i` (arrow kinds only): result position per
  /// argument position.
  [[nodiscard]] const std::vector<std::uint32_t>& table(std::uint32_t i) const { return tables_[i]; }
  /// Position of a table, or UINT32_MAX when it is not in the domain.
  [[nodiscard]] std::uint32_t index_of(const std::vector<std::uint32_t>& table) const;
  [[nodiscard]] bool leq(std::uint32_t a, std::uint32_t b) const;

  struct TableHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept;
  };

 private:
  friend class Oracle;
  std::uint32_t size_ = 0;
  std::vector<std::vector<std::uint32_t>> tables_;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, TableHash> index_;
};

class ValueStore;

/// An element of some D_{L,η}. Values are hash-consed per kind, so equal
/// values have equal ids. At kind o the id is the state bitset itself.
struct SemValue {
  const ValueStore* store = nullptr;
  std::uint32_t id = 0;

  [[nodiscard]] StateSet states() const { return id; }
  friend bool operator==(const SemValue& a, const SemValue& b) { return a.store == b.store && a.id == b.id; }
};

using SemEnv = std::vector<std::pair<Symbol, SemValue>>;

struct OracleOptions {
  std::size_t domain_cap = 1'000'000;
  /// Cache the value of each fixpoint and abstraction per valuation of its
  /// free variables. Off gives the plain recursive evaluator.
  bool memo = true;
};

/// Reference evaluator over explicit finite lattices. Only kinds that occur
/// as argument kinds are enumerated; other function values are tables over
/// their (enumerated) argument domain.
class Oracle {
 public:
  explicit Oracle(const Lts& lts, OracleOptions opts = {});
  ~Oracle();
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  /// D_{L,kind}; throws DomainTooLarge past the cap and for order > 2.
  const Domain& domain(const Kind& kind);
  /// The elements of D_{L,kind} as values, in canonical order.
  std::vector<SemValue> enumerate_domain(const Kind& kind);

  /// Value of a closed-HFL term whose binders are annotated. `env` binds
  /// the free variables (later entries shadow earlier ones).
  SemValue eval(const Formula& f, const SemEnv& env = {});
  /// f(a) for a value f of arrow kind.
  SemValue apply(const SemValue& f, const SemValue& a);
  SemValue bottom(const Kind& kind);
  SemValue top(const Kind& kind);

  [[nodiscard]] StateSet all_states() const;
  [[nodiscard]] const Lts& lts() const { return lts_; }

 private:
  struct Impl;
  ValueStore& store(const Kind& kind);
  std::uint32_t position(const SemValue& v);
  SemValue value_at(const Domain& d, std::uint32_t pos);

  const Lts& lts_;
  OracleOptions opts_;
  std::unique_ptr<Impl> impl_;
};

/// valid iff q₀ ∈ ⟦toHFL(hes)⟧.
Verdict check_naive(const Lts& lts, const Hes& hes, OracleOptions opts = {});

/// Structural evaluation of a formula built from true, false, ∨, ∧, ⟨a⟩
/// and [a] only. Throws Error on any other node.
StateSet eval_propositional(const Lts& lts, const Formula& f);

/// Normalizes the entry of E^(m) and evaluates the result.
Verdict check_by_unfolding(const Lts& lts, const Hes& hes, int m, std::size_t max_steps = 1'000'000);

}  // namespace hflmc
