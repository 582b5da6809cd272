#include "hflmc/game.hpp"

#include <unordered_map>

namespace hflmc {
namespace {

class Builder {
 public:
  Builder(const Lts& lts, const Hes& hes, std::shared_ptr<TypeTable> types)
      : lts_(lts), hes_(hes), omega_(priorities(hes)) {
    game_.types = std::move(types);
  }

  int binding(const Binding& b) {
    if (auto it = game_.position.find(b); it != game_.position.end()) return it->second;
    int v = game_.arena.add_vertex(0, omega_[hes_.index_of(b.var)], render_binding(*game_.types, lts_, b));
    game_.position.emplace(b, v);
    game_.binding_at.push_back(b);
    game_.env_at.emplace_back();
    return v;
  }

  int env(const TypeEnv& e) {
    if (auto it = envs_.find(e); it != envs_.end()) return it->second;
    int v = game_.arena.add_vertex(1, 0, render_env(*game_.types, lts_, e));
    envs_.emplace(e, v);
    game_.binding_at.emplace_back();
    game_.env_at.push_back(e);
    pending_.push_back(v);
    return v;
  }

  void edges(const Binding& b, const Family& witnesses) {
    int v = binding(b);
    for (const auto& w : witnesses) game_.arena.add_edge(v, env(w));
  }

  // E₁ by membership, once all environments are known.
  void close() {
    for (int v : pending_)
      for (const auto& b : game_.env_at[v]) game_.arena.add_edge(v, binding(b));
    pending_.clear();
  }

  TypabilityGame& game() { return game_; }

 private:
  const Lts& lts_;
  const Hes& hes_;
  std::vector<int> omega_;
  TypabilityGame game_;
  std::map<TypeEnv, int> envs_;
  std::vector<int> pending_;
};

Binding entry_binding(TypeTable& types, const Lts& lts, const Hes& hes) {
  return Binding{hes.entry().name, types.atom(lts.initial())};
}

// Minimal Γ-parts with Γ ∪ {X_i : σ_i} ⊢ ψ_j : q for τ = σ₁ → ⋯ → σ_ℓ → q,
// heads of equations ranging over `available`.
Family witnesses_for(TypeTable& types, const Lts& lts, const Hes& hes, const Binding& b,
                     const std::function<const std::vector<TypeId>&(Symbol)>& available) {
  const auto& eq = hes[hes.index_of(b.var)];
  std::unordered_map<Symbol, std::vector<TypeId>> params;
  auto sets = types.args(b.type);
  for (std::size_t i = 0; i < eq.params.size(); ++i) params[eq.params[i].name] = types.members(sets[i]);
  static const std::vector<TypeId> none;
  Deriver d(types, lts, [&](Symbol x) -> const std::vector<TypeId>& {
    if (auto it = params.find(x); it != params.end()) return it->second;
    if (hes.is_equation(x)) return available(x);
    return none;
  });
  Family out;
  for (const auto& w : d.derive(eq.body, types.atom(types.target(b.type)))) {
    TypeEnv g;
    for (const auto& x : w)
      if (hes.is_equation(x.var)) g.push_back(x);
    out.push_back(std::move(g));
  }
  minimize(out);
  return out;
}

}  // namespace

TypabilityGame build_subgame(const Lts& lts, const Hes& hes, const SaturationState& sat) {
  Builder bld(lts, hes, sat.types);
  Binding init = entry_binding(*sat.types, lts, hes);
  bld.game().arena.initial = bld.binding(init);
  for (const auto& b : sorted_bindings(sat.gamma, hes)) {
    auto it = sat.witnesses.find(b);
    bld.edges(b, it == sat.witnesses.end() ? Family{} : it->second);
  }
  bld.close();
  return std::move(bld.game());
}

TypabilityGame build_full_game(const Lts& lts, const Hes& hes, std::size_t cap) {
  auto types = std::make_shared<TypeTable>(lts.num_states());
  std::unordered_map<Symbol, std::vector<TypeId>> all;
  for (const auto& eq : hes.equations) all[eq.name] = types->refinements(eq.kind, cap);
  auto available = [&](Symbol x) -> const std::vector<TypeId>& { return all.at(x); };

  Builder bld(lts, hes, types);
  bld.game().arena.initial = bld.binding(entry_binding(*types, lts, hes));
  for (const auto& eq : hes.equations)
    for (TypeId t : all[eq.name]) {
      Binding b{eq.name, t};
      bld.edges(b, witnesses_for(*types, lts, hes, b, available));
    }
  bld.close();
  return std::move(bld.game());
}

void apply_priorities(TypabilityGame& game, const Hes& hes, const std::vector<int>& omega) {
  for (int v = 0; v < game.arena.size(); ++v)
    if (const auto& b = game.binding_at[v]) game.arena.priority[v] = omega[hes.index_of(b->var)];
}

bool derives_binding(TypeTable& types, const Lts& lts, const Hes& hes, const TypeEnv& gamma, const Binding& b) {
  std::unordered_map<Symbol, std::vector<TypeId>> by_var;
  for (const auto& x : gamma) by_var[x.var].push_back(x.type);
  static const std::vector<TypeId> none;
  auto fam = witnesses_for(types, lts, hes, b, [&](Symbol x) -> const std::vector<TypeId>& {
    auto it = by_var.find(x);
    return it == by_var.end() ? none : it->second;
  });
  return !fam.empty();
}

}  // namespace hflmc
