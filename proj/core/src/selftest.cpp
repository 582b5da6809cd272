#include "hflmc/selftest.hpp"

#include <random>
#include <string>

#include "hflmc/checker.hpp"
#include "hflmc/errors.hpp"
#include "hflmc/generate.hpp"
#include "hflmc/kinds.hpp"
#include "hflmc/parser.hpp"

namespace hflmc {
namespace {

struct Golden {
  const char* name;
  const char* hes;
  const char* lts;
  Verdict verdict;
};

const Golden kGolden[] = {
    {"ex3", "S =v <a> F (<b> S);\nF =m \\X. X \\/ <c> S \\/ <a> F (<b> X);\n",
     "initial q0\nq0 a q1\nq1 b q2\nq2 a q0\nq0 c q0\n", Verdict::Valid},
    {"ex2", "S =v F (<end> true);\nF =v \\k. <close> k /\\ <read> <read> F k;\n",
     "initial q0\nq0 read q0\nq0 close q1\nq1 end q2\n", Verdict::Valid},
    {"phi1-chain", "S =v F (<c> true);\nF =m \\X. X \\/ <a> F (<b> X);\n",
     "initial q0\nq0 a q1\nq1 a q2\nq2 b q3\nq3 b q4\nq4 c q5\n", Verdict::Valid},
    {"phi1-unbalanced", "S =v F (<c> true);\nF =m \\X. X \\/ <a> F (<b> X);\n",
     "initial q0\nq0 a q1\nq1 a q2\nq2 b q3\nq3 c q4\n", Verdict::Invalid},
    {"mu-self", "S =m S;\n", "initial q0\nq0 a q0\n", Verdict::Invalid},
};

std::vector<int> omega(const Hes& hes, const SelftestHooks& hooks) {
  return hooks.priorities ? hooks.priorities(hes) : priorities(hes);
}

}  // namespace

bool run_selftest(std::ostream& out, const SelftestHooks& hooks) {
  CheckOptions opts;
  opts.priority_override = hooks.priorities;
  bool all = true;

  int ok = 0, total = 0;
  for (const auto& g : kGolden) {
    ++total;
    try {
      Verdict v = check_text(g.hes, g.lts, opts).verdict;
      if (v == g.verdict) {
        ++ok;
      } else {
        out << "  golden " << g.name << ": expected " << verdict_str(g.verdict) << ", got " << verdict_str(v) << "\n";
      }
    } catch (const std::exception& e) {
      out << "  golden " << g.name << ": " << e.what() << "\n";
    }
  }
  out << (ok == total ? "PASS" : "FAIL") << " golden corpus (" << ok << "/" << total << ")\n";
  all &= ok == total;

  // Full typability game against the semantic oracle.
  std::mt19937_64 rng(20190101);
  GenOptions small;
  small.max_order = 1;
  small.max_states = 2;
  small.max_equations = 3;
  ok = total = 0;
  for (int i = 0; i < 40; ++i) {
    Instance inst = generate_instance(rng, small);
    ++total;
    Verdict naive = check_naive(inst.lts, inst.hes);
    TypabilityGame g = build_full_game(inst.lts, inst.hes);
    apply_priorities(g, inst.hes, omega(inst.hes, hooks));
    bool win = solve_zielonka(g.arena).winner_at(g.initial()) == 0;
    if (win == (naive == Verdict::Valid)) ++ok;
  }
  out << (ok == total ? "PASS" : "FAIL") << " full-game vs oracle (" << ok << "/" << total << ")\n";
  all &= ok == total;

  GenOptions mid;
  mid.max_order = 2;
  mid.max_states = 3;
  mid.max_equations = 3;
  ok = total = 0;
  for (int i = 0; i < 40; ++i) {
    Instance inst = generate_instance(rng, mid);
    ++total;
    if (check(inst.lts, inst.hes, opts).verdict == check_naive(inst.lts, inst.hes)) ++ok;
  }
  out << (ok == total ? "PASS" : "FAIL") << " check vs oracle (" << ok << "/" << total << ")\n";
  all &= ok == total;

  out << (all ? "selftest: all suites passed" : "selftest: FAILED") << "\n";
  return all;
}

}  // namespace hflmc
