#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "brute_parity.hpp"
#include "fixtures.hpp"
#include "hflmc/checker.hpp"
#include "hflmc/errors.hpp"
#include "hflmc/generate.hpp"
#include "hflmc/parser.hpp"
#include "hflmc/transform.hpp"

using namespace hflmc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<Instance> random_instances(std::uint64_t seed, std::size_t count, const GenOptions& g,
                                       const std::function<bool(const Instance&)>& keep = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  while (out.size() < count) {
    Instance inst = generate_instance(rng, g);
    if (!keep || keep(inst)) out.push_back(std::move(inst));
  }
  return out;
}

std::set<std::string> rendered(const SaturationState& st, const Lts& lts, const TypeEnv& env) {
  std::set<std::string> out;
  for (const auto& b : env) out.insert(render_binding(*st.types, lts, b));
  return out;
}

SaturationOptions table_options() {
  SaturationOptions o;
  o.restrict_gamma0 = false;
  o.subsume_prune = true;
  return o;
}

Outcome ac1() {
  auto t0 = Clock::now();
  CheckOptions opts;
  opts.saturation = table_options();
  auto r = check_text(fixtures::kEx3Hes, fixtures::kFig3Lts, opts);
  double secs = seconds_since(t0);
  const auto& st = *r.saturation;
  std::vector<std::string> problems;
  if (r.verdict != Verdict::Valid) problems.push_back("verdict");
  if (rendered(st, r.lts, st.gamma) != std::set<std::string>{"S : q0", "S : q1", "S : q2", "F : q1 -> q1",
                                                               "F : T -> q0", "F : T -> q2"})
    problems.push_back("final environment");
  if (st.iterations != 2) problems.push_back("iterations=" + std::to_string(st.iterations));
  if (st.deltas.size() != 2 ||
      rendered(st, r.lts, st.deltas[0]) != std::set<std::string>{"F : q1 -> q1", "F : T -> q0"} ||
      rendered(st, r.lts, st.deltas[1]) != std::set<std::string>{"F : T -> q2"})
    problems.push_back("per-iteration deltas");
  if (secs >= 1.0) problems.push_back("time");
  std::ostringstream os;
  os << "running example: verdict " << verdict_str(r.verdict) << ", |Gamma|=" << st.gamma.size() << ", "
     << st.iterations << " productive iterations, " << secs * 1000 << " ms";
  for (const auto& p : problems) os << " [mismatch: " << p << "]";
  return {problems.empty(), os.str()};
}

Outcome ac2() {
  auto t0 = Clock::now();
  auto r = check_text(fixtures::kEx2Hes, fixtures::kL2Lts);
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << "file protocol: verdict " << verdict_str(r.verdict) << ", " << secs * 1000 << " ms";
  return {r.verdict == Verdict::Valid && secs < 1.0, os.str()};
}

Outcome ac3(const std::vector<Instance>& insts) {
  auto t0 = Clock::now();
  int agree = 0;
  for (const auto& inst : insts) {
    auto g = build_full_game(inst.lts, inst.hes);
    bool win = solve_zielonka(g.arena).winner_at(g.initial()) == 0;
    if (win == (check_naive(inst.lts, inst.hes) == Verdict::Valid))
      ++agree;
    else
      std::cerr << "AC3 disagreement:\n" << inst.hes_text << inst.lts_text;
  }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << "full typability game vs oracle: " << agree << "/" << insts.size() << " agree, " << secs << " s";
  return {agree == static_cast<int>(insts.size()) && secs < 60, os.str()};
}

Outcome ac4(const std::vector<Instance>& insts) {
  auto t0 = Clock::now();
  int agree = 0;
  for (const auto& inst : insts) {
    if (check(inst.lts, inst.hes).verdict == check_naive(inst.lts, inst.hes))
      ++agree;
    else
      std::cerr << "AC4 disagreement:\n" << inst.hes_text << inst.lts_text;
  }
  double secs = seconds_since(t0);
  std::ostringstream os;
  os << "check vs oracle: " << agree << "/" << insts.size() << " agree, " << secs << " s";
  return {agree == static_cast<int>(insts.size()) && secs < 300, os.str()};
}

// Every one-step reduction φ → φ′ reachable within depth 4: types of φ′
// under a random Γ are types of φ under one expansion of Γ.
Outcome ac5() {
  std::mt19937_64 rng(55);
  GenOptions g;
  g.max_order = 1;
  g.max_states = 3;
  g.max_equations = 3;
  int pairs = 0, holds = 0, attempts = 0;
  SaturationOptions opts;
  opts.restrict_gamma0 = false;
  opts.subsume_prune = false;
  while (pairs < 200 && attempts < 2000) {
    ++attempts;
    Instance inst = generate_instance(rng, g);
    Hes hes = approximate(inst.hes, 1);
    FlowMap flow = compute_flow(hes);
    auto types = std::make_shared<TypeTable>(inst.lts.num_states());
    TypeEnv gamma;
    std::bernoulli_distribution take(0.4);
    for (const auto& eq : hes.equations)
      for (TypeId t : types->refinements(eq.kind))
        if (take(rng)) env_insert(gamma, Binding{eq.name, t});
    SaturationState st;
    st.types = types;
    st.gamma = gamma;
    expand(st, inst.lts, hes, flow, opts);

    std::deque<std::pair<Formula, int>> work{{mk_var(hes.entry().name), 0}};
    int local = 0;
    while (!work.empty() && local < 12) {
      auto [phi, depth] = work.front();
      work.pop_front();
      if (depth >= 4) continue;
      for (const auto& next : unfold_step(phi, hes)) {
        work.emplace_back(next, depth + 1);
        ++pairs;
        ++local;
        auto after = types_of(*types, inst.lts, gamma, next, Kind::prop());
        auto before = types_of(*types, inst.lts, st.gamma, phi, Kind::prop());
        bool ok = std::includes(before.begin(), before.end(), after.begin(), after.end());
        if (ok)
          ++holds;
        else
          std::cerr << "AC5 counterexample: " << to_string(phi) << "  ->  " << to_string(next) << "\n"
                    << to_string(hes) << inst.lts_text;
      }
    }
  }
  std::ostringstream os;
  os << "subject expansion: " << holds << "/" << pairs << " reduction pairs";
  return {pairs >= 200 && holds == pairs, os.str()};
}

Outcome ac6() {
  std::mt19937_64 rng(66);
  GenOptions g;
  g.max_order = 1;
  g.max_states = 2;
  g.max_equations = 3;
  SaturationOptions opts;
  opts.restrict_gamma0 = false;
  opts.subsume_prune = false;
  int cases = 0, contained = 0;
  for (int m : {1, 2}) {
    for (int i = 0; i < 50; ++i) {
      Instance inst = generate_instance(rng, g);
      auto types = std::make_shared<TypeTable>(inst.lts.num_states());
      Hes approx = approximate(inst.hes, m);
      auto small = saturate_from(types, {}, inst.lts, approx, compute_flow(approx), opts);
      auto big = saturate_from(types, initial_env(*types, inst.lts, inst.hes, opts), inst.lts, inst.hes,
                               compute_flow(inst.hes), opts);
      bool ok = true;
      for (const auto& b : small.gamma) {
        const auto& eq = approx[approx.index_of(b.var)];
        Binding erased{inst.hes[eq.base].name, b.type};
        if (!env_contains(big.gamma, erased)) {
          ok = false;
          std::cerr << "AC6: m=" << m << " missing " << render_binding(*types, inst.lts, erased) << "\n"
                    << inst.hes_text << inst.lts_text;
          break;
        }
      }
      ++cases;
      contained += ok;
    }
  }
  std::ostringstream os;
  os << "approximation containment (m=1,2): " << contained << "/" << cases << " instances";
  return {contained == cases, os.str()};
}

Outcome ac7(const std::vector<Instance>& suite3, const std::vector<Instance>& suite4) {
  std::vector<std::pair<std::string, std::string>> texts{{fixtures::kEx3Hes, fixtures::kFig3Lts},
                                                         {fixtures::kEx2Hes, fixtures::kL2Lts}};
  for (const auto* s : {&suite3, &suite4})
    for (const auto& inst : *s) texts.emplace_back(inst.hes_text, inst.lts_text);
  int agree = 0;
  for (const auto& [h, l] : texts) {
    std::set<Verdict> seen;
    for (bool restrict : {false, true})
      for (bool prune : {false, true}) {
        CheckOptions o;
        o.saturation.restrict_gamma0 = restrict;
        o.saturation.subsume_prune = prune;
        seen.insert(check_text(h, l, o).verdict);
      }
    if (seen.size() == 1)
      ++agree;
    else
      std::cerr << "AC7 flag-dependent verdict:\n" << h << l;
  }
  std::ostringstream os;
  os << "flag invariance over suites 1-4: " << agree << "/" << texts.size() << " instances";
  return {agree == static_cast<int>(texts.size()), os.str()};
}

Outcome ac8() {
  std::mt19937_64 rng(88);
  int games = 0, agree = 0;
  while (games < 100) {
    int n = 2 + static_cast<int>(rng() % 29);
    ParityGame g = fixtures::random_game(rng, n, 6, n > 16 ? 2 : 3);
    double strategies = 1;
    for (int v = 0; v < g.size(); ++v)
      if (g.owner[v] == 0 && !g.succ[v].empty()) strategies *= static_cast<double>(g.succ[v].size());
    if (strategies > 50'000) continue;
    ++games;
    auto brute = fixtures::brute_force_winners(g);
    auto z = solve_zielonka(g);
    bool ok = z.winner == brute && solve_spm(g) == brute;
    for (int v = 0; v < g.size() && ok; ++v) {
      if (z.winner[v] != 0) continue;
      ParityGame from = g;
      from.initial = v;
      ok = check_strategy(from, z.strategy);
    }
    agree += ok;
  }
  std::ostringstream os;
  os << "Zielonka / progress measures / strategy enumeration: " << agree << "/" << games << " games agree";
  return {agree == games, os.str()};
}

Outcome ac9(const std::string& csv_path) {
  std::ifstream in(std::string(HFLMC_CORPUS_DIR) + "/verdicts.txt");
  std::string line;
  int ok = 0, total = 0;
  double slowest = 0;
  std::ofstream csv(csv_path);
  csv << "name,hes_size,order,total_ms\n";
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name, expected;
    ls >> name >> expected;
    ++total;
    std::string base = std::string(HFLMC_CORPUS_DIR) + "/" + name;
    std::string hes = fixtures::read_file(base + ".hes"), lts = fixtures::read_file(base + ".lts");
    auto t0 = Clock::now();
    auto r = check_text(hes, lts);
    double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    bool good = verdict_str(r.verdict) == expected && secs < 10;
    if (r.hes.order <= 2) good &= check_naive(r.lts, r.hes) == r.verdict;
    if (good)
      ++ok;
    else
      std::cerr << "AC9: " << name << " gave " << verdict_str(r.verdict) << " in " << secs << " s\n";
    csv << name << ',' << r.report.hes_size << ',' << r.hes.order << ',' << r.report.total_ms << "\n";
  }
  // Growth of running time with HES size on larger random instances.
  std::mt19937_64 rng(99);
  for (int eqs : {2, 4, 6, 8}) {
    GenOptions g;
    g.max_order = 2;
    g.max_states = 4;
    g.max_equations = eqs;
    g.max_depth = 4;
    for (int i = 0; i < 5; ++i) {
      Instance inst = generate_instance(rng, g);
      auto r = check(inst.lts, inst.hes);
      csv << "random-" << eqs << "-" << i << ',' << r.report.hes_size << ',' << inst.hes.order << ','
          << r.report.total_ms << "\n";
    }
  }
  std::ostringstream os;
  os << "corpus (golden + order-3): " << ok << "/" << total << " verdicts match, slowest " << slowest
     << " s; growth table in " << csv_path;
  return {ok == total && total >= 9, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::string csv_path = argc > 1 ? argv[1] : "acceptance_growth.csv";

  GenOptions g3;
  g3.max_order = 1;
  g3.max_states = 2;
  g3.max_equations = 3;
  auto suite3 = random_instances(3, 200, g3);

  GenOptions g4;
  g4.max_order = 2;
  g4.max_states = 3;
  g4.max_equations = 4;
  auto suite4 = random_instances(4, 500, g4, [](const Instance& i) { return i.hes.alternations() <= 2; });

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1},
      {"AC2", ac2},
      {"AC3", [&] { return ac3(suite3); }},
      {"AC4", [&] { return ac4(suite4); }},
      {"AC5", ac5},
      {"AC6", ac6},
      {"AC7", [&] { return ac7(suite3, suite4); }},
      {"AC8", ac8},
      {"AC9", [&] { return ac9(csv_path); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << name << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
