#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hflmc/kind.hpp"
#include "hflmc/symbol.hpp"

namespace hflmc {

enum class Op : std::uint8_t { True, False, Var, Or, And, Dia, Box, Abs, App, Mu, Nu };

struct FormulaNode;

/// Immutable formula tree. Subtrees are shared freely between formulas.
///
/// HES bodies never contain Mu/Nu; those appear only in closed formulas
/// produced by to_hfl() and consumed by the semantic oracle.
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  Op op = Op::True;
  /// Var: the name. Abs/Mu/Nu: the bound variable. Dia/Box: the action.
  Symbol sym;
  /// Binder kind for Abs/Mu/Nu, when known.
  std::optional<Kind> annot;
  /// Or/And: both operands. Dia/Box/Abs/Mu/Nu: `left` is the body.
  /// App: `left` is the function, `right` the argument.
  Formula left;
  Formula right;
  /// Pre-order occurrence id assigned when an HES is parsed; 0 for nodes
  /// built later (substitution results, generated formulas).
  std::uint32_t occ = 0;
};

Formula mk_true();
Formula mk_false();
Formula mk_var(Symbol name);
Formula mk_or(Formula l, Formula r);
Formula mk_and(Formula l, Formula r);
Formula mk_dia(Symbol action, Formula body);
Formula mk_box(Symbol action, Formula body);
Formula mk_abs(Symbol var, std::optional<Kind> kind, Formula body);
Formula mk_app(Formula fun, Formula arg);
Formula mk_mu(Symbol var, Kind kind, Formula body);
Formula mk_nu(Symbol var, Kind kind, Formula body);
Formula mk_apps(Formula head, const std::vector<Formula>& args);
/// Copy of `f` with a different occurrence id.
Formula with_occ(const Formula& f, std::uint32_t occ);

/// `h a₁ ⋯ a_k` decomposed; `args` is empty when `f` is not an application.
struct Spine {
  Formula head;
  std::vector<Formula> args;
};
Spine spine_of(const Formula& f);

/// Number of AST nodes.
std::size_t formula_size(const Formula& f);
std::set<Symbol> free_vars(const Formula& f);
bool occurs_free(const Formula& f, Symbol x);

/// Capture-avoiding simultaneous substitution.
Formula substitute(const Formula& f, const std::map<Symbol, Formula>& subst);

/// Structural equality up to renaming of bound variables. Occurrence ids
/// and binder annotations are ignored.
bool alpha_equal(const Formula& a, const Formula& b);

/// Renders with minimal parentheses in the HES concrete syntax. Mu/Nu are
/// rendered as `mu X. body` / `nu X. body` (not part of the input grammar).
std::string to_string(const Formula& f);

}  // namespace hflmc
