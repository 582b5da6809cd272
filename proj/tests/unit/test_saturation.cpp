#include <deque>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hflmc/flow.hpp"
#include "hflmc/generate.hpp"
#include "hflmc/saturation.hpp"
#include "hflmc/transform.hpp"

using namespace hflmc;
using fixtures::load_hes;
using fixtures::load_lts;

namespace {

std::set<std::string> flow_texts(const FlowMap& flow, const Hes& hes, const char* param) {
  std::set<std::string> out;
  for (auto occ : flow[Symbol(param)]) out.insert(to_string(hes.occurrence(occ)));
  return out;
}

std::set<std::string> rendered(const SaturationState& st, const Lts& lts, const TypeEnv& env) {
  std::set<std::string> out;
  for (const auto& b : env) out.insert(render_binding(*st.types, lts, b));
  return out;
}

// φ with parameter variables as wildcards.
bool matches(const Formula& pattern, const Formula& f, const Hes& hes) {
  if (pattern->op == Op::Var && !hes.is_equation(pattern->sym)) return true;
  if (pattern->op != f->op || pattern->sym != f->sym) return false;
  if (pattern->left && !matches(pattern->left, f->left, hes)) return false;
  if (pattern->right && !matches(pattern->right, f->right, hes)) return false;
  return true;
}

}  // namespace

TEST_CASE("flow of the running example") {
  Hes hes = load_hes(fixtures::kEx3Hes);
  FlowMap flow = compute_flow(hes);
  CHECK(flow_texts(flow, hes, "X") == std::set<std::string>{"<b> S", "<b> X"});
  CHECK(dump_flow(flow, hes).starts_with("X: occ#"));

  Hes simple = load_hes("S =v F true; F =m \\X. X;");
  CHECK(flow_texts(compute_flow(simple), simple, "X") == std::set<std::string>{"true"});

  Hes ho = load_hes("S =v F G true; F =v \\f. \\x. f (f x); G =v \\y. <a> y;");
  FlowMap hf = compute_flow(ho);
  CHECK(flow_texts(hf, ho, "f") == std::set<std::string>{"G"});
  CHECK(flow_texts(hf, ho, "y") == std::set<std::string>{"x", "f x"});
  CHECK(hf.closure(Symbol("y"), ho).size() == 2);  // `true` through x, plus `f x`
}

TEST_CASE("call graph and cycle heads") {
  Hes hes = load_hes(fixtures::kEx3Hes);
  CallGraph cg = call_graph(hes);
  CHECK(cg.succ[0] == std::vector<int>{0, 1});
  CHECK(cg.succ[1] == std::vector<int>{0, 1});
  CHECK(priorities(hes) == std::vector<int>{2, 1});
  CHECK(nu_heads_on_cycles(cg, hes, priorities(hes)) == std::set<int>{0});

  CHECK(call_graph(load_hes("S =v true;")).succ[0].empty());
  CHECK(call_graph(load_hes("S =v S;")).succ[0] == std::vector<int>{0});
}

TEST_CASE("priorities") {
  CHECK(priorities(load_hes("S =v G; G =v H; H =v true;")) == std::vector<int>{0, 0, 0});
  CHECK(priorities(load_hes("A =v B; B =m C; C =v D; D =m true;")) == std::vector<int>{4, 3, 2, 1});
  CHECK(priorities(load_hes("A =m A;")) == std::vector<int>{1});
}

TEST_CASE("initial environment") {
  Lts lts = load_lts(fixtures::kFig3Lts);
  Hes hes = load_hes(fixtures::kEx3Hes);
  TypeTable t(3);
  SaturationOptions off;
  off.restrict_gamma0 = false;
  TypeEnv g0 = initial_env(t, lts, hes, off);
  CHECK(g0.size() == 3);
  for (const auto& b : g0) CHECK(b.var == Symbol("S"));

  CHECK(initial_env(t, lts, load_hes("S =m false; F =m S;"), off).empty());

  // G is on no cycle; S is on none either, so the restricted Γ₀ is empty.
  Hes acyclic = load_hes("S =v true; G =v \\X. X;");
  CHECK(initial_env(t, lts, acyclic, off).size() == 6);
  CHECK(initial_env(t, lts, acyclic, SaturationOptions{}).empty());
}

TEST_CASE("saturation reproduces the running example trace") {
  Lts lts = load_lts(fixtures::kFig3Lts);
  Hes hes = load_hes(fixtures::kEx3Hes);
  SaturationOptions opts;
  opts.restrict_gamma0 = false;
  SaturationState st = saturate(lts, hes, compute_flow(hes), opts);

  CHECK(st.iterations == 2);
  REQUIRE(st.deltas.size() == 2);
  CHECK(rendered(st, lts, st.gamma0) == std::set<std::string>{"S : q0", "S : q1", "S : q2"});
  CHECK(rendered(st, lts, st.deltas[0]) == std::set<std::string>{"F : q1 -> q1", "F : T -> q0"});
  CHECK(rendered(st, lts, st.deltas[1]) == std::set<std::string>{"F : T -> q2"});

  REQUIRE(st.delta_judgments[0].size() == 2);
  std::set<std::string> row0;
  for (const auto& j : st.delta_judgments[0]) {
    TypeEnv env = j.gamma_part;
    for (const auto& b : j.delta) env_insert(env, b);
    row0.insert(render_env(*st.types, lts, env));
  }
  CHECK(row0 == std::set<std::string>{"{X : q1}", "{S : q0}"});
  REQUIRE(st.delta_judgments[1].size() == 1);
  CHECK(render_env(*st.types, lts, st.delta_judgments[1][0].gamma_part) == "{F : T -> q0}");

  std::string trace = trace_string(st, lts, hes);
  CHECK(trace.find("iteration 2") != std::string::npos);
  CHECK(dump_types(st, lts, hes).find("F : T -> q2\n") != std::string::npos);

  // Every witness lies inside the final Γ.
  for (const auto& [b, ws] : st.witnesses)
    for (const auto& w : ws) CHECK(env_subset(w, st.gamma));
}

TEST_CASE("saturation without pruning still contains the pruned result") {
  Lts lts = load_lts(fixtures::kFig3Lts);
  Hes hes = load_hes(fixtures::kEx3Hes);
  FlowMap flow = compute_flow(hes);
  SaturationOptions pruned, full;
  pruned.restrict_gamma0 = full.restrict_gamma0 = false;
  full.subsume_prune = false;
  auto a = saturate(lts, hes, flow, pruned);
  auto b = saturate(lts, hes, flow, full);
  CHECK(rendered(a, lts, a.gamma).size() <= rendered(b, lts, b.gamma).size());
  for (const auto& s : rendered(a, lts, a.gamma)) CHECK(rendered(b, lts, b.gamma).contains(s));
}

TEST_CASE("trivial saturations") {
  Lts lts = load_lts("initial q0\nq0 a q0\n");
  Hes t = load_hes("S =v true;");
  SaturationOptions off;
  off.restrict_gamma0 = false;
  auto st = saturate(lts, t, compute_flow(t), off);
  CHECK(st.iterations == 0);
  CHECK(st.gamma == st.gamma0);

  Hes f = load_hes("S =m false;");
  auto sf = saturate(lts, f, compute_flow(f), off);
  CHECK(sf.gamma.empty());
}

TEST_CASE("flow covers every argument reachable by unfolding") {
  std::mt19937_64 rng(11);
  GenOptions g;
  g.max_order = 1;
  for (int round = 0; round < 60; ++round) {
    Instance inst = generate_instance(rng, g);
    const Hes& hes = inst.hes;
    FlowMap flow = compute_flow(hes);

    std::deque<std::pair<Formula, int>> work{{mk_var(hes.entry().name), 0}};
    int visited = 0;
    while (!work.empty() && visited < 300) {
      auto [f, depth] = work.front();
      work.pop_front();
      ++visited;
      std::vector<Formula> stack{f};
      while (!stack.empty()) {
        Formula n = stack.back();
        stack.pop_back();
        if (n->left) stack.push_back(n->left);
        if (n->right) stack.push_back(n->right);
        if (n->op != Op::App) continue;
        Spine sp = spine_of(n);
        int j = hes.index_of(sp.head->sym);
        if (j < 0) continue;
        for (std::size_t i = 0; i < sp.args.size(); ++i) {
          auto cl = flow.closure(hes[j].params[i].name, hes);
          bool ok = std::any_of(cl.begin(), cl.end(),
                                [&](std::uint32_t occ) { return matches(hes.occurrence(occ), sp.args[i], hes); });
          CHECK_MESSAGE(ok, inst.hes_text, " arg ", to_string(sp.args[i]));
        }
      }
      if (depth < 6)
        for (auto& g2 : unfold_step(f, hes)) work.emplace_back(g2, depth + 1);
    }
  }
}
