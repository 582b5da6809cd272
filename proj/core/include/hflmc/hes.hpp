#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "hflmc/formula.hpp"

namespace hflmc {

enum class Sign : std::uint8_t { Nu, Mu };

inline const char* sign_str(Sign s) { return s == Sign::Nu ? "v" : "m"; }

struct Param {
  Symbol name;
  Kind kind;
  bool annotated = false;
};

/// F =_sign λX₁…λX_ℓ. body, with `body` λ-free and of kind o.
struct Equation {
  Symbol name;
  Sign sign = Sign::Nu;
  Kind kind;
  std::vector<Param> params;
  Formula body;
  /// Approximation tag; empty unless produced by approximate().
  std::vector<int> tag;
  /// Index of the untagged equation this one was copied from, or -1.
  int base = -1;
};

class Hes {
 public:
  std::vector<Equation> equations;
  /// Set by infer_kinds(); max order over all equation kinds.
  int order = 0;
  bool kinded = false;

  [[nodiscard]] std::size_t size() const { return equations.size(); }
  [[nodiscard]] const Equation& operator[](std::size_t i) const { return equations[i]; }
  [[nodiscard]] Equation& operator[](std::size_t i) { return equations[i]; }
  [[nodiscard]] const Equation& entry() const { return equations.front(); }

  /// -1 when `name` is not an equation.
  [[nodiscard]] int index_of(Symbol name) const;
  [[nodiscard]] bool is_equation(Symbol name) const { return index_of(name) >= 0; }

  /// Formula node carrying occurrence id `occ`.
  [[nodiscard]] const Formula& occurrence(std::uint32_t occ) const { return occurrences_.at(occ); }
  [[nodiscard]] std::uint32_t num_occurrences() const {
    return static_cast<std::uint32_t>(occurrences_.size());
  }

  /// Rebuilds the name index and renumbers occurrences in pre-order over
  /// the bodies, starting from 1. Call after editing `equations`.
  void finalize();

  /// |E|: AST nodes over all bodies plus one per λ-binder.
  [[nodiscard]] std::size_t ast_size() const;
  /// Number of sign changes along the equation list.
  [[nodiscard]] int alternations() const;

 private:
  std::unordered_map<Symbol, int> index_;
  std::vector<Formula> occurrences_;
};

/// Ω per equation: 0 or 1 for the last one by sign, then bottom-up the
/// least number of the right parity not below the next equation's.
std::vector<int> priorities(const Hes& hes);

std::string to_string(const Equation& eq);
std::string to_string(const Hes& hes);

/// Tag suffix such as `^(0,1)`; empty for untagged equations.
std::string tag_string(const std::vector<int>& tag);

}  // namespace hflmc
