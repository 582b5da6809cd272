#pragma once

#include <map>

#include "hflmc/hes.hpp"

namespace hflmc {

/// Assigns kinds to every equation and parameter by first-order
/// unification. Throws KindError on a mismatch, on an occurs-check
/// failure, on a kind left undetermined, and when the entry is not of
/// kind o. Annotations in the input are honoured as constraints.
Hes infer_kinds(Hes hes);

/// Kind of a closed-HFL subterm whose binders all carry annotations.
/// `env` types the free variables. Throws KindError.
Kind kind_of(const Formula& f, const std::map<Symbol, Kind>& env);

/// Fills in the missing binder annotations of a formula (Abs binders only;
/// Mu/Nu always carry kinds) and checks it. Throws KindError.
Formula annotate_kinds(const Formula& f, const std::map<Symbol, Kind>& env);

}  // namespace hflmc
