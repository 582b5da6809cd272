#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hflmc/derive.hpp"
#include "hflmc/errors.hpp"
#include "hflmc/parser.hpp"
#include "hflmc/rtype.hpp"

using namespace hflmc;
using fixtures::load_hes;
using fixtures::load_lts;

namespace {

const Kind o = Kind::prop();
const Kind o_o = Kind::arrow(o, o);

std::string show(TypeTable& t, const Lts& lts, TypeId id) { return t.render(id, lts); }

}  // namespace

TEST_CASE("refinement counts") {
  TypeTable t(3);
  CHECK(t.refinements(o).size() == 3);

  // Brute force for o -> o: every (argument subset, result) pair, deduplicated by interning.
  std::set<TypeId> seen;
  for (int mask = 0; mask < 8; ++mask)
    for (int q = 0; q < 3; ++q) {
      std::vector<TypeId> ms;
      for (int i = 0; i < 3; ++i)
        if (mask >> i & 1) ms.push_back(t.atom(i));
      seen.insert(t.arrow(t.set(o, ms), t.atom(q)));
    }
  CHECK(seen.size() == 24);
  CHECK(t.refinements(o_o).size() == 24);
  CHECK(t.refinement_count(o_o) == doctest::Approx(24));

  TypeTable one(1);
  auto inner = one.refinements(o_o);
  CHECK(inner.size() == 2);
  std::set<TypeId> outer;
  for (int mask = 0; mask < (1 << inner.size()); ++mask) {
    std::vector<TypeId> ms;
    for (std::size_t i = 0; i < inner.size(); ++i)
      if (mask >> i & 1) ms.push_back(inner[i]);
    outer.insert(one.arrow(one.set(o_o, ms), one.atom(0)));
  }
  Kind k2 = Kind::arrow(o_o, o);
  auto listed = one.refinements(k2);
  CHECK(listed.size() == outer.size());
  CHECK(std::set<TypeId>(listed.begin(), listed.end()) == outer);

  CHECK_THROWS_AS(t.refinements(Kind::arrow(o_o, o_o), 10), TooManyTypes);
}

TEST_CASE("subtyping") {
  Lts lts = load_lts(fixtures::kFig3Lts);
  TypeTable t(3);
  TypeId q0 = t.atom(0), q1 = t.atom(1);
  CHECK(t.subtype(q0, q0));
  CHECK_FALSE(t.subtype(q0, q1));

  TypeId top_q0 = t.arrow(t.top(o), q0);
  TypeId q1_q0 = t.arrow(t.set(o, {q1}), q0);
  CHECK(t.subtype(top_q0, q1_q0));
  CHECK_FALSE(t.subtype(q1_q0, top_q0));
  CHECK(show(t, lts, top_q0) == "T -> q0");

  TypeId both = t.arrow(t.set(o, {q0, q1}), q0);
  TypeId just0 = t.arrow(t.set(o, {q0}), q0);
  // {q0,q1} -> q0 ≤ {q0} -> q0 needs {q0} ≤ {q0,q1}, i.e. q1 covered by q0: no.
  CHECK_FALSE(t.subtype(both, just0));
  CHECK(t.subtype(just0, both));
  CHECK(show(t, lts, both) == "(q0 /\\ q1) -> q0");

  CHECK_THROWS_AS((void)t.subtype(q0, top_q0), KindError);
}

TEST_CASE("subtyping is a preorder and matches the first-order rule") {
  TypeTable t(2);
  auto all = t.refinements(o_o);
  for (TypeId a : all)
    for (TypeId b : all) {
      auto ma = t.members(t.arg(a)), mb = t.members(t.arg(b));
      bool expected = t.target(a) == t.target(b) && std::includes(mb.begin(), mb.end(), ma.begin(), ma.end());
      CHECK(t.subtype(a, b) == expected);
    }

  TypeTable one(1);
  auto hi = one.refinements(Kind::arrow(o_o, o_o));
  for (TypeId a : hi) {
    CHECK(one.subtype(a, a));
    for (TypeId b : hi)
      for (TypeId c : hi)
        if (one.subtype(a, b) && one.subtype(b, c)) CHECK(one.subtype(a, c));
  }
}

TEST_CASE("derive on the running example") {
  Lts lts = load_lts(fixtures::kFig3Lts);
  Hes hes = load_hes(fixtures::kEx3Hes);
  TypeTable t(3);
  const Formula& psi_f = hes[1].body;
  Symbol X("X"), S("S");

  auto w1 = derive(t, lts, {}, psi_f, 1, {{X, {t.atom(1)}}});
  REQUIRE(w1.size() == 1);
  CHECK(w1[0] == TypeEnv{Binding{X, t.atom(1)}});

  auto w0 = derive(t, lts, {Binding{S, t.atom(0)}}, psi_f, 0);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0] == TypeEnv{Binding{S, t.atom(0)}});

  for (int q = 0; q < 3; ++q) {
    auto w = derive(t, lts, {}, mk_true(), q);
    REQUIRE(w.size() == 1);
    CHECK(w[0].empty());
  }
  CHECK(derive(t, lts, {}, mk_false(), 0).empty());
}

TEST_CASE("types_of") {
  Lts lts = load_lts(fixtures::kFig3Lts);
  TypeTable t(3);
  Symbol S("S");
  Formula bs = mk_dia(Symbol("b"), mk_var(S));
  CHECK(types_of(t, lts, {Binding{S, t.atom(0)}}, bs, o).empty());
  CHECK(types_of(t, lts, {Binding{S, t.atom(2)}}, bs, o) == std::vector<TypeId>{t.atom(1)});
  CHECK(types_of(t, lts, {}, mk_true(), o) == std::vector<TypeId>{t.atom(0), t.atom(1), t.atom(2)});

  // A partial application at kind o -> o keeps the head's remaining arrow.
  Symbol G("G");
  TypeId g = t.arrows({t.set(o, {t.atom(1)}), t.top(o)}, 0);
  Formula ga = mk_app(mk_var(G), mk_dia(Symbol("b"), mk_var(S)));
  auto ts = types_of(t, lts, {Binding{G, g}, Binding{S, t.atom(2)}}, ga, o_o);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0] == t.arrow(t.top(o), t.atom(0)));
  CHECK(types_of(t, lts, {Binding{G, g}}, ga, o_o).empty());
}

namespace {

// Independent first-order typing check: variables are all of kind o.
bool derivable(const TypeTable& t, const Lts& lts, const TypeEnv& env, const Formula& f, int q) {
  switch (f->op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Var:
      return std::any_of(env.begin(), env.end(),
                         [&](const Binding& b) { return b.var == f->sym && t.state(b.type) == q; });
    case Op::Or:
      return derivable(t, lts, env, f->left, q) || derivable(t, lts, env, f->right, q);
    case Op::And:
      return derivable(t, lts, env, f->left, q) && derivable(t, lts, env, f->right, q);
    case Op::Dia:
      for (int r : lts.succ(q, f->sym))
        if (derivable(t, lts, env, f->left, r)) return true;
      return false;
    case Op::Box:
      for (int r : lts.succ(q, f->sym))
        if (!derivable(t, lts, env, f->left, r)) return false;
      return true;
    default:
      return false;
  }
}

Formula random_formula(std::mt19937& rng, int depth, const std::vector<Symbol>& vars) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
  switch (pick(rng)) {
    case 0:
      return rng() % 4 == 0 ? mk_true() : mk_false();
    case 1:
    case 2:
      return mk_var(vars[rng() % vars.size()]);
    case 3:
      return mk_or(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    case 4:
      return mk_and(random_formula(rng, depth - 1, vars), random_formula(rng, depth - 1, vars));
    case 5:
      return mk_dia(Symbol(rng() % 2 ? "a" : "b"), random_formula(rng, depth - 1, vars));
    default:
      return mk_box(Symbol(rng() % 2 ? "a" : "b"), random_formula(rng, depth - 1, vars));
  }
}

}  // namespace

TEST_CASE("derive returns exactly the minimal derivable environments") {
  Lts lts = load_lts("initial p0\np0 a p1\np0 a p2\np1 b p2\np2 b p0\np2 a p2\n");
  TypeTable t(3);
  std::vector<Symbol> vars{Symbol("A"), Symbol("B")};
  TypeEnv universe;
  for (Symbol v : vars)
    for (int q = 0; q < 3; ++q) env_insert(universe, Binding{v, t.atom(q)});

  std::mt19937 rng(7);
  for (int round = 0; round < 150; ++round) {
    Formula f = random_formula(rng, 4, vars);
    for (int q = 0; q < 3; ++q) {
      Family expected;
      for (int mask = 0; mask < (1 << universe.size()); ++mask) {
        TypeEnv env;
        for (std::size_t i = 0; i < universe.size(); ++i)
          if (mask >> i & 1) env.push_back(universe[i]);
        if (derivable(t, lts, env, f, q)) expected.push_back(env);
      }
      minimize(expected);
      CHECK_MESSAGE(derive(t, lts, universe, f, q) == expected, to_string(f), " at ", q);
    }
  }
}

TEST_CASE("minimize") {
  Symbol a("A");
  Family fam{{Binding{a, 1}, Binding{a, 2}}, {Binding{a, 1}}, {Binding{a, 1}}, {Binding{a, 3}}};
  minimize(fam);
  CHECK(fam == Family{{Binding{a, 1}}, {Binding{a, 3}}});
}
