#include "doctest.h"
#include "fixtures.hpp"
#include "hflmc/errors.hpp"
#include "hflmc/semantics.hpp"
#include "hflmc/transform.hpp"

using namespace hflmc;
using fixtures::load_hes;
using fixtures::load_lts;

namespace {

Lts states(int n) {
  std::string text = "initial s0\n";
  for (int i = 1; i < n; ++i) text += "s0 t s" + std::to_string(i) + "\n";
  return load_lts(text);
}

// Number of monotone functions 2^Q -> 2^Q by filtering all tables.
std::size_t brute_monotone_count(int n) {
  std::uint32_t size = 1u << n;
  std::size_t total = 1;
  for (std::uint32_t i = 0; i < size; ++i) total *= size;
  std::size_t count = 0;
  std::vector<std::uint32_t> t(size);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& x : t) {
      x = static_cast<std::uint32_t>(c % size);
      c /= size;
    }
    bool mono = true;
    for (std::uint32_t a = 0; a < size && mono; ++a)
      for (std::uint32_t b = 0; b < size && mono; ++b)
        if ((a & ~b) == 0 && (t[a] & ~t[b]) != 0) mono = false;
    count += mono;
  }
  return count;
}

Symbol sym(const char* s) { return Symbol(s); }

}  // namespace

TEST_CASE("enumerate_domain counts") {
  Kind o = Kind::prop();
  Kind oo = Kind::arrow(o, o);
  {
    Lts l = states(3);
    Oracle orc(l);
    CHECK(orc.domain(o).size() == 8);
  }
  {
    Lts l = states(1);
    Oracle orc(l);
    CHECK(orc.domain(oo).size() == 3);
    CHECK(orc.domain(oo).size() == brute_monotone_count(1));
  }
  {
    Lts l = states(2);
    Oracle orc(l);
    const Domain& d = orc.domain(oo);
    CHECK(d.size() == brute_monotone_count(2));
    for (std::uint32_t i = 0; i < d.size(); ++i) {
      const auto& t = d.table(i);
      for (std::uint32_t a = 0; a < t.size(); ++a)
        for (std::uint32_t b = 0; b < t.size(); ++b)
          if (d.arg->leq(a, b)) CHECK(d.res->leq(t[a], t[b]));
      if (i > 0) CHECK(d.table(i - 1) < t);
    }
    auto vals = orc.enumerate_domain(oo);
    CHECK(vals.size() == d.size());
    CHECK(vals.front() == orc.bottom(oo));
    CHECK(vals.back() == orc.top(oo));
    // (o -> o) -> o is never enumerated, only tabulated over D(o -> o).
    Kind high = Kind::arrow(oo, o);
    SemValue b = orc.bottom(high);
    CHECK(orc.apply(b, vals.back()).states() == 0);
    CHECK(orc.apply(orc.top(high), vals.front()).states() == 0b11);
  }
  {
    Lts l = states(3);
    OracleOptions opts;
    opts.domain_cap = 100;
    Oracle orc(l, opts);
    CHECK_THROWS_AS(orc.domain(oo), DomainTooLarge);
  }
  {
    Lts l = states(1);
    Oracle orc(l);
    CHECK_THROWS_AS(orc.domain(Kind::arrow(Kind::arrow(oo, o), o)), DomainTooLarge);
  }
}

TEST_CASE("eval clauses on the running LTS") {
  Lts l = load_lts(fixtures::kFig3Lts);
  Oracle orc(l);
  CHECK(orc.eval(mk_dia(sym("c"), mk_true())).states() == 0b001);
  CHECK(orc.eval(mk_true()).states() == 0b111);
  CHECK(orc.eval(mk_nu(sym("S"), Kind::prop(), mk_true())).states() == 0b111);
  CHECK(orc.eval(mk_mu(sym("S"), Kind::prop(), mk_var(sym("S")))).states() == 0);
  CHECK(eval_propositional(l, mk_box(sym("a"), mk_false())) == 0b010);
  CHECK(eval_propositional(l, mk_and(mk_true(), mk_false())) == 0);
  CHECK(eval_propositional(l, mk_dia(sym("b"), mk_dia(sym("c"), mk_true()))) == 0);
  CHECK_THROWS(eval_propositional(l, mk_var(sym("S"))));
}

TEST_CASE("check_naive on the worked examples") {
  CHECK(check_naive(load_lts(fixtures::kFig3Lts), load_hes(fixtures::kEx3Hes)) == Verdict::Valid);
  CHECK(check_naive(load_lts(fixtures::kL2Lts), load_hes(fixtures::kEx2Hes)) == Verdict::Valid);
  CHECK(check_naive(load_lts(fixtures::kFig3Lts), load_hes("S =m S;")) == Verdict::Invalid);
  CHECK(check_naive(load_lts("initial q0"), load_hes("S =m S;")) == Verdict::Invalid);
  Lts no_c = load_lts("initial q0\nq0 a q1\nq1 b q2\nq2 a q0\n");
  CHECK(check_naive(no_c, load_hes(fixtures::kEx3Hes)) == Verdict::Invalid);
}

TEST_CASE("memoized and plain evaluation agree") {
  Lts l = load_lts(fixtures::kFig3Lts);
  for (const char* text : {fixtures::kEx3Hes, "X =v Y; Y =m <a> X \\/ <b> Y;",
                           "S =m <a> S \\/ F S; F =v \\x. [c] x /\\ <a> true;"}) {
    Formula f = to_hfl(load_hes(text));
    OracleOptions plain;
    plain.memo = false;
    CHECK(Oracle(l).eval(f).states() == Oracle(l, plain).eval(f).states());
  }
}

TEST_CASE("Kleene iterates are fixpoints") {
  Lts l = load_lts(fixtures::kFig3Lts);
  Hes h = load_hes(fixtures::kEx3Hes);
  Formula f = to_hfl(h);
  Oracle orc(l);
  auto val = orc.eval(f);
  // One more unfolding of the outer ν leaves the value unchanged.
  SemEnv env{{f->sym, val}};
  CHECK(orc.eval(f->left, env).states() == val.states());
}

TEST_CASE("check_by_unfolding") {
  Lts l = load_lts(fixtures::kFig3Lts);
  Hes ex = load_hes(fixtures::kEx3Hes);
  // Normalizing E^(1) gives <a>(<b>true \/ <c>true \/ <a>false), which holds at q0.
  CHECK(check_by_unfolding(l, ex, 1) == Verdict::Valid);
  Hes e1 = approximate(ex, 1);
  CHECK(check_naive(l, e1) == Verdict::Valid);
  CHECK(check_by_unfolding(l, load_hes("S =v true;"), 4) == Verdict::Valid);
  CHECK(check_by_unfolding(l, load_hes("S =m false;"), 4) == Verdict::Invalid);
  CHECK_THROWS_AS(check_by_unfolding(l, ex, 8, 10), BudgetExceeded);
}
