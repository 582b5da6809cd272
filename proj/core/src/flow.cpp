#include "hflmc/flow.hpp"

#include <functional>

namespace hflmc {

const std::set<std::uint32_t>& FlowMap::operator[](Symbol param) const {
  static const std::set<std::uint32_t> none;
  auto it = flows.find(param);
  return it == flows.end() ? none : it->second;
}

std::set<std::uint32_t> FlowMap::closure(Symbol param, const Hes& hes) const {
  std::set<std::uint32_t> out;
  std::set<Symbol> visited;
  std::function<void(Symbol)> go = [&](Symbol x) {
    if (!visited.insert(x).second) return;
    for (auto occ : (*this)[x]) {
      const Formula& f = hes.occurrence(occ);
      if (f->op == Op::Var && !hes.is_equation(f->sym))
        go(f->sym);
      else
        out.insert(occ);
    }
  };
  go(param);
  return out;
}

namespace {

// Abstract closure: equation index and number of arguments applied so far.
using AbsVal = std::pair<int, int>;

class Cfa {
 public:
  explicit Cfa(const Hes& hes) : hes_(hes) {
    for (const auto& eq : hes.equations)
      for (std::size_t i = 0; i < eq.params.size(); ++i) param_vals_[eq.params[i].name];
  }

  FlowMap run() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& eq : hes_.equations) changed |= visit(eq.body).second;
    }
    return std::move(flow_);
  }

 private:
  // Returns the abstract values of `f` and whether anything grew.
  std::pair<std::set<AbsVal>, bool> visit(const Formula& f) {
    switch (f->op) {
      case Op::Var: {
        int j = hes_.index_of(f->sym);
        if (j >= 0) return {{{j, 0}}, false};
        return {param_vals_[f->sym], false};
      }
      case Op::App: {
        auto [fn, c1] = visit(f->left);
        auto [arg, c2] = visit(f->right);
        bool changed = c1 || c2;
        std::set<AbsVal> out;
        for (auto [j, n] : fn) {
          const auto& eq = hes_[j];
          if (n >= static_cast<int>(eq.params.size())) continue;
          out.insert({j, n + 1});
          Symbol x = eq.params[n].name;
          changed |= flow_.flows[x].insert(f->right->occ).second;
          auto& vals = param_vals_[x];
          for (const auto& v : arg) changed |= vals.insert(v).second;
        }
        return {out, changed};
      }
      default: {
        bool changed = false;
        if (f->left) changed |= visit(f->left).second;
        if (f->right) changed |= visit(f->right).second;
        return {{}, changed};
      }
    }
  }

  const Hes& hes_;
  std::map<Symbol, std::set<AbsVal>> param_vals_;
  FlowMap flow_;
};

}  // namespace

FlowMap compute_flow(const Hes& hes) { return Cfa(hes).run(); }

std::string dump_flow(const FlowMap& flow, const Hes& hes) {
  std::string out;
  for (const auto& eq : hes.equations) {
    for (const auto& p : eq.params) {
      out += p.name.str() + ":";
      bool first = true;
      for (auto occ : flow[p.name]) {
        out += first ? " " : ", ";
        first = false;
        out += "occ#" + std::to_string(occ) + " (" + to_string(hes.occurrence(occ)) + ")";
      }
      out += "\n";
    }
  }
  return out;
}

CallGraph call_graph(const Hes& hes) {
  CallGraph cg;
  cg.succ.resize(hes.size());
  for (std::size_t j = 0; j < hes.size(); ++j)
    for (Symbol s : free_vars(hes[j].body))
      if (int k = hes.index_of(s); k >= 0) cg.succ[j].push_back(k);
  for (auto& s : cg.succ) std::sort(s.begin(), s.end());
  return cg;
}

std::set<int> nu_heads_on_cycles(const CallGraph& cg, const Hes& hes, const std::vector<int>& omega) {
  std::set<int> out;
  const int n = static_cast<int>(hes.size());
  for (int f = 0; f < n; ++f) {
    if (hes[f].sign != Sign::Nu) continue;
    std::vector<char> seen(n, 0);
    std::vector<int> stack;
    for (int s : cg.succ[f])
      if (omega[s] <= omega[f] && !seen[s]) {
        seen[s] = 1;
        stack.push_back(s);
      }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == f) {
        out.insert(f);
        break;
      }
      for (int w : cg.succ[v])
        if (omega[w] <= omega[f] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
  }
  return out;
}

}  // namespace hflmc
