#include "hflmc/transform.hpp"

#include <deque>
#include <functional>
#include <map>
#include <set>

#include "hflmc/errors.hpp"
#include "hflmc/kinds.hpp"

namespace hflmc {
namespace {

Formula mk_fix(Sign s, Symbol x, const Kind& k, Formula body) {
  return s == Sign::Mu ? mk_mu(x, k, std::move(body)) : mk_nu(x, k, std::move(body));
}

Formula abstract_params(const Equation& eq) {
  Formula f = eq.body;
  for (auto it = eq.params.rbegin(); it != eq.params.rend(); ++it) f = mk_abs(it->name, it->kind, f);
  return f;
}

Formula instantiate(const Equation& eq, const std::vector<Formula>& args) {
  std::map<Symbol, Formula> s;
  for (std::size_t i = 0; i < args.size(); ++i) s.emplace(eq.params[i].name, args[i]);
  return substitute(eq.body, s);
}

// Index of the equation whose fully applied head `f` is, or -1.
int redex_head(const Formula& f, const Hes& hes, Spine& sp) {
  if (f->op != Op::Var && f->op != Op::App) return -1;
  sp = spine_of(f);
  if (sp.head->op != Op::Var) return -1;
  int j = hes.index_of(sp.head->sym);
  if (j < 0 || hes[j].params.size() != sp.args.size()) return -1;
  return j;
}

void collect_binders(const Formula& f, std::set<Symbol>& out) {
  if (!f) return;
  if (f->op == Op::Abs) out.insert(f->sym);
  collect_binders(f->left, out);
  collect_binders(f->right, out);
}

class Lifter {
 public:
  struct Pending {
    Symbol name;
    Sign sign;
    Kind kind;
    Formula body;  // closed apart from equation names
  };

  explicit Lifter(const Formula& root) { collect_binders(root, used_); }

  Symbol pick(Symbol base, std::set<Symbol>& taken) {
    if (!taken.contains(base)) {
      taken.insert(base);
      return base;
    }
    Symbol s = fresh_symbol(base.str());
    taken.insert(s);
    return s;
  }

  // Replaces every fixpoint by an applied equation name, recording the
  // equations in pre-order.
  Formula lift_fixpoints(const Formula& f, std::vector<std::pair<Symbol, Kind>>& scope) {
    switch (f->op) {
      case Op::True:
      case Op::False:
      case Op::Var:
        return f;
      case Op::Dia:
        return mk_dia(f->sym, lift_fixpoints(f->left, scope));
      case Op::Box:
        return mk_box(f->sym, lift_fixpoints(f->left, scope));
      case Op::Or: {
        auto l = lift_fixpoints(f->left, scope);
        return mk_or(l, lift_fixpoints(f->right, scope));
      }
      case Op::And: {
        auto l = lift_fixpoints(f->left, scope);
        return mk_and(l, lift_fixpoints(f->right, scope));
      }
      case Op::App: {
        auto l = lift_fixpoints(f->left, scope);
        return mk_app(l, lift_fixpoints(f->right, scope));
      }
      case Op::Abs: {
        scope.emplace_back(f->sym, *f->annot);
        auto body = lift_fixpoints(f->left, scope);
        scope.pop_back();
        return mk_abs(f->sym, f->annot, body);
      }
      case Op::Mu:
      case Op::Nu:
        break;
    }
    auto fv = free_vars(f);
    std::vector<std::pair<Symbol, Kind>> captured;
    std::set<Symbol> seen;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (fv.contains(it->first) && seen.insert(it->first).second) captured.push_back(*it);
    }
    std::reverse(captured.begin(), captured.end());
    std::vector<Formula> cap_vars;
    std::vector<Kind> cap_kinds;
    for (const auto& [x, k] : captured) {
      cap_vars.push_back(mk_var(x));
      cap_kinds.push_back(k);
    }
    Symbol name = pick(f->sym, used_);
    Formula self = mk_apps(mk_var(name), cap_vars);
    Formula body = substitute(f->left, {{f->sym, self}});
    for (auto it = captured.rbegin(); it != captured.rend(); ++it) body = mk_abs(it->first, it->second, body);
    std::size_t slot = fixpoints_.size();
    fixpoints_.push_back({name, f->op == Op::Mu ? Sign::Mu : Sign::Nu, Kind::arrows(cap_kinds, *f->annot), nullptr});
    std::vector<std::pair<Symbol, Kind>> inner;
    fixpoints_[slot].body = lift_fixpoints(body, inner);
    return self;
  }

  // Turns a closed λ-term into an equation in λ-prefix normal form,
  // appending it and the equations lifted out of it to `out`.
  void emit(const Pending& p, std::vector<Equation>& out) {
    Equation eq;
    eq.name = p.name;
    eq.sign = p.sign;
    eq.kind = p.kind;
    std::map<Symbol, Formula> rename;
    Formula f = p.body;
    std::size_t n = 0;
    std::vector<Kind> arg_kinds = p.kind.args();
    while (f->op == Op::Abs && n < arg_kinds.size()) {
      Symbol fresh = pick(f->sym, taken_);
      rename[f->sym] = mk_var(fresh);
      eq.params.push_back({fresh, arg_kinds[n], false});
      f = f->left;
      ++n;
    }
    f = substitute(f, rename);
    for (; n < arg_kinds.size(); ++n) {
      Symbol fresh = pick(Symbol("X"), taken_);
      eq.params.push_back({fresh, arg_kinds[n], false});
      f = mk_app(f, mk_var(fresh));
    }
    std::vector<Pending> lifted;
    eq.body = lift_lambdas(f, eq, lifted);
    out.push_back(std::move(eq));
    for (const auto& l : lifted) emit(l, out);
  }

  Formula lift_lambdas(const Formula& f, const Equation& eq, std::vector<Pending>& lifted) {
    switch (f->op) {
      case Op::True:
      case Op::False:
      case Op::Var:
        return f;
      case Op::Dia:
        return mk_dia(f->sym, lift_lambdas(f->left, eq, lifted));
      case Op::Box:
        return mk_box(f->sym, lift_lambdas(f->left, eq, lifted));
      case Op::Or: {
        auto l = lift_lambdas(f->left, eq, lifted);
        return mk_or(l, lift_lambdas(f->right, eq, lifted));
      }
      case Op::And: {
        auto l = lift_lambdas(f->left, eq, lifted);
        return mk_and(l, lift_lambdas(f->right, eq, lifted));
      }
      case Op::App: {
        auto l = lift_lambdas(f->left, eq, lifted);
        return mk_app(l, lift_lambdas(f->right, eq, lifted));
      }
      case Op::Abs:
        break;
      case Op::Mu:
      case Op::Nu:
        throw KindError("unexpected fixpoint after lifting");
    }
    auto fv = free_vars(f);
    std::map<Symbol, Kind> env = kinds_;
    std::vector<Formula> cap_vars;
    std::vector<Kind> cap_kinds;
    Formula body = f;
    for (const auto& p : eq.params) {
      env[p.name] = p.kind;
      if (!fv.contains(p.name)) continue;
      cap_vars.push_back(mk_var(p.name));
      cap_kinds.push_back(p.kind);
    }
    Kind k = kind_of(f, env);
    for (auto it = eq.params.rbegin(); it != eq.params.rend(); ++it)
      if (fv.contains(it->name)) body = mk_abs(it->name, it->kind, body);
    Symbol name = pick(Symbol(eq.name.str() + "_lam"), taken_);
    Kind full = Kind::arrows(cap_kinds, k);
    kinds_[name] = full;
    lifted.push_back({name, eq.sign, full, body});
    return mk_apps(mk_var(name), cap_vars);
  }

  Hes run(const Formula& f) {
    std::vector<std::pair<Symbol, Kind>> scope;
    Formula top = lift_fixpoints(f, scope);
    std::vector<Pending> order;
    if (f->op != Op::Mu && f->op != Op::Nu) order.push_back({pick(Symbol("S"), used_), Sign::Nu, Kind::prop(), top});
    order.insert(order.end(), fixpoints_.begin(), fixpoints_.end());
    for (const auto& p : order) {
      taken_.insert(p.name);
      kinds_[p.name] = p.kind;
    }
    Hes hes;
    for (const auto& p : order) emit(p, hes.equations);
    for (const auto& eq : hes.equations) hes.order = std::max(hes.order, eq.kind.order());
    hes.kinded = true;
    hes.finalize();
    return hes;
  }

 private:
  std::set<Symbol> used_;
  std::set<Symbol> taken_;
  std::map<Symbol, Kind> kinds_;
  std::vector<Pending> fixpoints_;
};

bool has_cycle(const std::vector<std::vector<int>>& succ) {
  std::vector<int> state(succ.size(), 0);
  std::function<bool(int)> dfs = [&](int v) {
    state[v] = 1;
    for (int w : succ[v]) {
      if (state[w] == 1) return true;
      if (state[w] == 0 && dfs(w)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < succ.size(); ++v)
    if (state[v] == 0 && dfs(static_cast<int>(v))) return true;
  return false;
}

}  // namespace

Formula to_hfl(const Hes& hes) {
  std::vector<Formula> bodies;
  for (const auto& eq : hes.equations) bodies.push_back(abstract_params(eq));
  for (std::size_t j = hes.size(); j-- > 1;) {
    const auto& eq = hes[j];
    Formula fix = mk_fix(eq.sign, eq.name, eq.kind, bodies[j]);
    for (std::size_t i = 0; i < j; ++i)
      if (occurs_free(bodies[i], eq.name)) bodies[i] = substitute(bodies[i], {{eq.name, fix}});
  }
  const auto& e = hes.entry();
  return mk_fix(e.sign, e.name, e.kind, bodies[0]);
}

Hes hes_of_formula(const Formula& f) {
  if (auto fv = free_vars(f); !fv.empty()) throw KindError("formula is not closed: `" + fv.begin()->str() + "` is free");
  Formula g = annotate_kinds(f, {});
  if (!kind_of(g, {}).is_prop()) throw KindError("formula is not of kind o");
  return Lifter(g).run(g);
}

std::vector<Formula> unfold_step(const Formula& f, const Hes& hes) {
  std::vector<Formula> out;
  switch (f->op) {
    case Op::Or:
    case Op::And: {
      auto mk = f->op == Op::Or ? mk_or : mk_and;
      for (auto& l : unfold_step(f->left, hes)) out.push_back(mk(l, f->right));
      for (auto& r : unfold_step(f->right, hes)) out.push_back(mk(f->left, r));
      return out;
    }
    case Op::Dia:
      for (auto& b : unfold_step(f->left, hes)) out.push_back(mk_dia(f->sym, b));
      return out;
    case Op::Box:
      for (auto& b : unfold_step(f->left, hes)) out.push_back(mk_box(f->sym, b));
      return out;
    default: {
      Spine sp;
      int j = redex_head(f, hes, sp);
      if (j >= 0) out.push_back(instantiate(hes[j], sp.args));
      return out;
    }
  }
}

Formula normalize(const Formula& f, const Hes& hes, std::size_t max_steps) {
  std::size_t steps = 0;
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    switch (g->op) {
      case Op::Or:
        return mk_or(go(g->left), go(g->right));
      case Op::And:
        return mk_and(go(g->left), go(g->right));
      case Op::Dia:
        return mk_dia(g->sym, go(g->left));
      case Op::Box:
        return mk_box(g->sym, go(g->left));
      default: {
        Spine sp;
        int j = redex_head(g, hes, sp);
        if (j < 0) return g;
        if (++steps > max_steps) throw BudgetExceeded("normalization exceeded " + std::to_string(max_steps) + " steps");
        return go(instantiate(hes[j], sp.args));
      }
    }
  };
  return go(f);
}

Hes approximate(const Hes& hes, int m, ApproxTags tags) {
  if (m <= 0) throw Error("approximation depth must be positive");
  std::set<Symbol> names;
  for (const auto& eq : hes.equations) {
    names.insert(eq.name);
    for (const auto& p : eq.params) names.insert(p.name);
  }
  std::map<std::pair<int, std::vector<int>>, Symbol> tagged;
  std::deque<std::pair<int, std::vector<int>>> queue;
  auto name_of = [&](int j, const std::vector<int>& beta) {
    auto key = std::make_pair(j, beta);
    if (auto it = tagged.find(key); it != tagged.end()) return it->second;
    Symbol s(hes[j].name.str() + tag_string(beta));
    tagged.emplace(key, s);
    queue.push_back(key);
    return s;
  };
  auto suffix = [](const std::vector<int>& beta) {
    std::string s;
    for (int b : beta) s += "_" + std::to_string(b);
    return s;
  };

  if (tags == ApproxTags::All) {
    for (int j = 0; j < static_cast<int>(hes.size()); ++j) {
      std::vector<int> beta(j + 1, m);
      for (;;) {
        name_of(j, beta);
        int i = j;
        while (i >= 0 && beta[i] == 0) beta[i--] = m;
        if (i < 0) break;
        --beta[i];
      }
    }
  } else {
    name_of(0, {m});
  }

  Hes out;
  while (!queue.empty()) {
    auto [j, beta] = queue.front();
    queue.pop_front();
    const auto& src = hes[j];
    Equation eq;
    eq.name = tagged.at({j, beta});
    eq.sign = src.sign;
    eq.kind = src.kind;
    eq.tag = beta;
    eq.base = j;
    std::map<Symbol, Formula> s;
    for (const auto& p : src.params) {
      Symbol fresh(p.name.str() + suffix(beta));
      if (names.contains(fresh)) fresh = fresh_symbol(fresh.str());
      s.emplace(p.name, mk_var(fresh));
      eq.params.push_back({fresh, p.kind, p.annotated});
    }
    if (beta.back() == 0) {
      eq.body = src.sign == Sign::Nu ? mk_true() : mk_false();
    } else {
      auto fv = free_vars(src.body);
      for (int k = 0; k < static_cast<int>(hes.size()); ++k) {
        if (!fv.contains(hes[k].name)) continue;
        std::vector<int> bk;
        if (k < j) {
          bk.assign(beta.begin(), beta.begin() + k + 1);
        } else {
          bk.assign(beta.begin(), beta.begin() + j + 1);
          bk.back() -= 1;
          bk.resize(k + 1, m);
        }
        s[hes[k].name] = mk_var(name_of(k, bk));
      }
      eq.body = substitute(src.body, s);
    }
    out.equations.push_back(std::move(eq));
  }
  out.order = hes.order;
  out.kinded = hes.kinded;
  out.finalize();
  return out;
}

bool is_recursion_free(const Hes& hes) {
  std::vector<std::vector<int>> succ(hes.size());
  for (std::size_t i = 0; i < hes.size(); ++i)
    for (Symbol s : free_vars(hes[i].body))
      if (int k = hes.index_of(s); k >= 0) succ[i].push_back(k);
  return !has_cycle(succ);
}

}  // namespace hflmc
