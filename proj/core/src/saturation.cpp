#include "hflmc/saturation.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <unordered_map>

#include "hflmc/errors.hpp"

namespace hflmc {

TypeEnv initial_env(TypeTable& types, const Lts& lts, const Hes& hes, const SaturationOptions& opts) {
  std::set<int> allowed;
  if (opts.restrict_gamma0) allowed = nu_heads_on_cycles(call_graph(hes), hes, priorities(hes));
  TypeEnv env;
  for (std::size_t j = 0; j < hes.size(); ++j) {
    const auto& eq = hes[j];
    if (eq.sign != Sign::Nu) continue;
    if (opts.restrict_gamma0 && !allowed.contains(static_cast<int>(j))) continue;
    std::vector<SetId> tops;
    for (const auto& p : eq.params) tops.push_back(types.top(p.kind));
    for (int q = 0; q < lts.num_states(); ++q) env_insert(env, Binding{eq.name, types.arrows(tops, q)});
  }
  return env;
}

namespace {

using TypeSet = std::vector<TypeId>;  // sorted
using TypeFamily = std::vector<TypeSet>;

constexpr std::size_t kComboCap = 4096;

bool set_subset(const TypeSet& a, const TypeSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

// Keeps only ⊆-maximal sets.
void maximize(TypeFamily& fam) {
  std::sort(fam.begin(), fam.end());
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  TypeFamily out;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < fam.size() && !dominated; ++j)
      dominated = i != j && fam[i].size() < fam[j].size() && set_subset(fam[i], fam[j]);
    if (!dominated) out.push_back(fam[i]);
  }
  fam = std::move(out);
}

std::unordered_map<Symbol, TypeSet> group(const TypeEnv& gamma) {
  std::unordered_map<Symbol, TypeSet> by_var;
  for (const auto& b : gamma) by_var[b.var].push_back(b.type);
  return by_var;
}

// For every parameter, the type sets of the concrete formulas that may be
// bound to it. A flow formula mentioning parameters of its own equation is
// typed once per choice of their families, which follows the reductions
// that turn it into a closed argument.
class FlowTypes {
 public:
  FlowTypes(TypeTable& types, const Lts& lts, const Hes& hes, const FlowMap& flow, const TypeEnv& gamma)
      : types_(types), lts_(lts), hes_(hes), flow_(flow), by_var_(group(gamma)) {}

  std::map<Symbol, TypeFamily> run() {
    std::map<Symbol, TypeFamily> fam;
    for (const auto& eq : hes_.equations)
      for (const auto& p : eq.params) fam[p.name];
    for (int round = 0;; ++round) {
      if (round > 10'000) throw BudgetExceeded("flow type families did not stabilize");
      bool changed = false;
      for (const auto& eq : hes_.equations) {
        for (const auto& p : eq.params) {
          TypeFamily next = family_of(p, fam);
          if (next != fam[p.name]) {
            fam[p.name] = std::move(next);
            changed = true;
          }
        }
      }
      if (!changed) return fam;
    }
  }

 private:
  TypeFamily family_of(const Param& p, const std::map<Symbol, TypeFamily>& fam) {
    TypeFamily out;
    for (auto occ : flow_[p.name]) {
      const Formula& phi = hes_.occurrence(occ);
      std::vector<Symbol> free;
      for (Symbol s : free_vars(phi))
        if (!hes_.is_equation(s)) free.push_back(s);

      std::vector<TypeFamily> choices;
      std::size_t combos = 1;
      for (Symbol y : free) {
        TypeFamily c = fam.at(y);
        if (c.empty()) c.push_back({});
        combos *= c.size();
        choices.push_back(std::move(c));
      }
      if (combos > kComboCap) {
        // Too many combinations: one choice with every candidate at once.
        for (auto& c : choices) {
          TypeSet all;
          for (const auto& t : c) all.insert(all.end(), t.begin(), t.end());
          std::sort(all.begin(), all.end());
          all.erase(std::unique(all.begin(), all.end()), all.end());
          c = {all};
        }
        combos = 1;
      }

      std::vector<std::size_t> idx(free.size(), 0);
      for (std::size_t n = 0; n < combos; ++n) {
        std::unordered_map<Symbol, const TypeSet*> chosen;
        for (std::size_t i = 0; i < free.size(); ++i) chosen[free[i]] = &choices[i][idx[i]];
        Deriver d(types_, lts_, [&](Symbol x) -> const std::vector<TypeId>& {
          if (auto it = chosen.find(x); it != chosen.end()) return *it->second;
          if (auto it = by_var_.find(x); it != by_var_.end()) return it->second;
          return none_;
        });
        out.push_back(d.types_of(phi, p.kind));
        for (std::size_t i = 0; i < idx.size(); ++i) {
          if (++idx[i] < choices[i].size()) break;
          idx[i] = 0;
        }
      }
    }
    std::erase_if(out, [](const TypeSet& s) { return s.empty(); });
    maximize(out);
    return out;
  }

  TypeTable& types_;
  const Lts& lts_;
  const Hes& hes_;
  const FlowMap& flow_;
  std::unordered_map<Symbol, TypeSet> by_var_;
  const std::vector<TypeId> none_;
};

struct Pair {
  Binding binding;
  TypeEnv gamma_part;
  TypeEnv delta;
};

}  // namespace

bool expand(SaturationState& state, const Lts& lts, const Hes& hes, const FlowMap& flow,
            const SaturationOptions& opts) {
  TypeTable& types = *state.types;
  const TypeEnv& gamma = state.gamma;
  auto fam = FlowTypes(types, lts, hes, flow, gamma).run();
  auto by_var = group(gamma);

  std::map<Symbol, TypeSet> cand;
  for (const auto& [x, f] : fam) {
    TypeSet all;
    for (const auto& t : f) all.insert(all.end(), t.begin(), t.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    cand[x] = std::move(all);
  }

  static const std::vector<TypeId> none;
  std::vector<Pair> pairs;
  for (const auto& eq : hes.equations) {
    Deriver d(types, lts, [&](Symbol x) -> const std::vector<TypeId>& {
      if (auto it = cand.find(x); it != cand.end()) return it->second;
      if (auto it = by_var.find(x); it != by_var.end()) return it->second;
      return none;
    });
    for (int q = 0; q < lts.num_states(); ++q) {
      for (const TypeEnv& w : d.derive(eq.body, types.atom(q))) {
        Pair p;
        std::map<Symbol, TypeSet> delta;
        for (const auto& b : w) {
          if (hes.is_equation(b.var)) {
            p.gamma_part.push_back(b);
          } else {
            p.delta.push_back(b);
            delta[b.var].push_back(b.type);
          }
        }
        bool ok = true;
        for (auto& [x, ts] : delta) {
          std::sort(ts.begin(), ts.end());
          const auto& f = fam.at(x);
          ok = std::any_of(f.begin(), f.end(), [&](const TypeSet& t) { return set_subset(ts, t); });
          if (!ok) break;
        }
        if (!ok) continue;
        std::vector<SetId> args;
        for (const auto& prm : eq.params) {
          auto it = delta.find(prm.name);
          args.push_back(types.set(prm.kind, it == delta.end() ? TypeSet{} : it->second));
        }
        p.binding = Binding{eq.name, types.arrows(args, q)};
        pairs.push_back(std::move(p));
      }
    }
  }

  // (τ′, W′) dominates (τ, W) when τ′ ≤ τ and W′ ⊆ W; mutual dominance is
  // broken by type id, then witness order.
  auto dominates = [&](const Pair& a, const Pair& b) {
    if (a.binding.var != b.binding.var) return false;
    if (a.binding == b.binding && a.gamma_part == b.gamma_part) return false;
    if (!types.subtype(a.binding.type, b.binding.type) || !env_subset(a.gamma_part, b.gamma_part)) return false;
    bool mutual = types.subtype(b.binding.type, a.binding.type) && env_subset(b.gamma_part, a.gamma_part);
    if (!mutual) return true;
    return std::tie(a.binding.type, a.gamma_part) < std::tie(b.binding.type, b.gamma_part);
  };

  TypeEnv added;
  std::vector<Judgment> judgments;
  for (const auto& p : pairs) {
    if (env_contains(gamma, p.binding)) continue;
    if (opts.subsume_prune &&
        std::any_of(pairs.begin(), pairs.end(), [&](const Pair& o) { return dominates(o, p); }))
      continue;
    env_insert(added, p.binding);
    judgments.push_back(Judgment{p.binding, p.gamma_part, p.delta});
  }

  TypeEnv next = gamma;
  for (const auto& b : added) env_insert(next, b);
  assert(env_subset(gamma, next));

  state.witnesses.clear();
  for (const auto& b : next) {
    Family ws;
    for (const auto& p : pairs)
      if (p.binding.var == b.var && types.subtype(p.binding.type, b.type)) ws.push_back(p.gamma_part);
    minimize(ws);
    state.witnesses[b] = std::move(ws);
  }

  if (added.empty()) return false;
  std::sort(judgments.begin(), judgments.end(), [](const Judgment& a, const Judgment& b) {
    return std::tie(a.binding, a.gamma_part, a.delta) < std::tie(b.binding, b.gamma_part, b.delta);
  });
  state.gamma = std::move(next);
  state.deltas.push_back(std::move(added));
  state.delta_judgments.push_back(std::move(judgments));
  ++state.iterations;
  return true;
}

SaturationState saturate_from(std::shared_ptr<TypeTable> types, TypeEnv initial, const Lts& lts, const Hes& hes,
                              const FlowMap& flow, const SaturationOptions& opts) {
  SaturationState st;
  st.types = std::move(types);
  st.gamma = initial;
  st.gamma0 = std::move(initial);
  while (expand(st, lts, hes, flow, opts)) {
  }
  return st;
}

SaturationState saturate(const Lts& lts, const Hes& hes, const FlowMap& flow, const SaturationOptions& opts) {
  auto types = std::make_shared<TypeTable>(lts.num_states());
  TypeEnv g0 = initial_env(*types, lts, hes, opts);
  return saturate_from(std::move(types), std::move(g0), lts, hes, flow, opts);
}

std::string render_binding(const TypeTable& types, const Lts& lts, const Binding& b) {
  return b.var.str() + " : " + types.render(b.type, lts);
}

std::string render_env(const TypeTable& types, const Lts& lts, const TypeEnv& env) {
  std::string out = "{";
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (i) out += ", ";
    out += render_binding(types, lts, env[i]);
  }
  return out + "}";
}

std::vector<Binding> sorted_bindings(const TypeEnv& env, const Hes& hes) {
  std::vector<Binding> out(env.begin(), env.end());
  std::stable_sort(out.begin(), out.end(), [&](const Binding& a, const Binding& b) {
    int ia = hes.index_of(a.var), ib = hes.index_of(b.var);
    return ia != ib ? ia < ib : a.type < b.type;
  });
  return out;
}

std::string dump_types(const SaturationState& state, const Lts& lts, const Hes& hes) {
  std::string out;
  for (const auto& b : sorted_bindings(state.gamma, hes)) out += render_binding(*state.types, lts, b) + "\n";
  return out;
}

std::string trace_string(const SaturationState& state, const Lts& lts, const Hes& hes) {
  std::ostringstream os;
  const TypeTable& types = *state.types;
  auto list = [&](const TypeEnv& env) {
    std::string s = "{";
    bool first = true;
    for (const auto& b : sorted_bindings(env, hes)) {
      s += first ? "" : ", ";
      first = false;
      s += render_binding(types, lts, b);
    }
    return s + "}";
  };
  os << "iteration 0: Gamma_0 = " << list(state.gamma0) << "\n";
  for (std::size_t k = 0; k < state.deltas.size(); ++k) {
    for (const auto& j : state.delta_judgments[k]) {
      TypeEnv env = j.gamma_part;
      for (const auto& b : j.delta) env_insert(env, b);
      os << "  " << list(env) << " |- psi_" << j.binding.var.str() << " : "
         << lts.state_name(types.target(j.binding.type)).str() << "  gives " << render_binding(types, lts, j.binding)
         << "\n";
    }
    os << "iteration " << (k + 1) << ": Gamma_" << (k + 1) << " = Gamma_" << k << " + " << list(state.deltas[k])
       << "\n";
  }
  os << "fixpoint after " << state.iterations << " productive iteration(s), |Gamma| = " << state.gamma.size()
     << "\n";
  return os.str();
}

}  // namespace hflmc
