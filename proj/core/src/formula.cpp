#include "hflmc/formula.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <unordered_map>

namespace hflmc {
namespace {

Formula make(Op op, Symbol sym, std::optional<Kind> annot, Formula l, Formula r) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->sym = sym;
  n->annot = std::move(annot);
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

void collect_free(const Formula& f, std::multiset<Symbol>& bound,
                  std::set<Symbol>& out) {
  switch (f->op) {
    case Op::True:
    case Op::False:
      return;
    case Op::Var:
      if (!bound.contains(f->sym)) out.insert(f->sym);
      return;
    case Op::Abs:
    case Op::Mu:
    case Op::Nu: {
      auto it = bound.insert(f->sym);
      collect_free(f->left, bound, out);
      bound.erase(it);
      return;
    }
    case Op::Dia:
    case Op::Box:
      collect_free(f->left, bound, out);
      return;
    case Op::Or:
    case Op::And:
    case Op::App:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
      return;
  }
}

Formula subst_rec(const Formula& f, const std::map<Symbol, Formula>& subst,
                  std::unordered_map<const FormulaNode*, std::set<Symbol>>& fv_cache) {
  if (subst.empty()) return f;
  switch (f->op) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Var: {
      auto it = subst.find(f->sym);
      return it == subst.end() ? f : it->second;
    }
    case Op::Dia:
    case Op::Box: {
      auto body = subst_rec(f->left, subst, fv_cache);
      if (body == f->left) return f;
      return make(f->op, f->sym, f->annot, body, nullptr);
    }
    case Op::Or:
    case Op::And:
    case Op::App: {
      auto l = subst_rec(f->left, subst, fv_cache);
      auto r = subst_rec(f->right, subst, fv_cache);
      if (l == f->left && r == f->right) return f;
      return make(f->op, f->sym, f->annot, l, r);
    }
    case Op::Abs:
    case Op::Mu:
    case Op::Nu: {
      std::map<Symbol, Formula> inner = subst;
      inner.erase(f->sym);
      if (inner.empty()) return f;
      auto body_fv = free_vars(f->left);
      bool capture = false;
      for (auto& [x, rep] : inner) {
        if (!body_fv.contains(x)) continue;
        auto& fv = fv_cache[rep.get()];
        if (fv.empty()) fv = free_vars(rep);
        if (fv.contains(f->sym)) {
          capture = true;
          break;
        }
      }
      Symbol binder = f->sym;
      if (capture) {
        binder = fresh_symbol(f->sym.str());
        inner[f->sym] = mk_var(binder);
      }
      auto body = subst_rec(f->left, inner, fv_cache);
      if (body == f->left && binder == f->sym) return f;
      return make(f->op, binder, f->annot, body, nullptr);
    }
  }
  return f;
}

bool alpha_rec(const Formula& a, const Formula& b, std::vector<std::pair<Symbol, Symbol>>& env) {
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::True:
    case Op::False:
      return true;
    case Op::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == a->sym || it->second == b->sym) return it->first == a->sym && it->second == b->sym;
      }
      return a->sym == b->sym;
    }
    case Op::Dia:
    case Op::Box:
      return a->sym == b->sym && alpha_rec(a->left, b->left, env);
    case Op::Or:
    case Op::And:
    case Op::App:
      return alpha_rec(a->left, b->left, env) && alpha_rec(a->right, b->right, env);
    case Op::Abs:
    case Op::Mu:
    case Op::Nu: {
      env.emplace_back(a->sym, b->sym);
      bool ok = alpha_rec(a->left, b->left, env);
      env.pop_back();
      return ok;
    }
  }
  return false;
}

int level(Op op) {
  switch (op) {
    case Op::Abs:
    case Op::Mu:
    case Op::Nu:
      return 0;
    case Op::Or:
      return 1;
    case Op::And:
      return 2;
    case Op::Dia:
    case Op::Box:
      return 3;
    case Op::App:
      return 4;
    default:
      return 5;
  }
}

void print(std::ostream& os, const Formula& f, int ctx) {
  bool paren = level(f->op) < ctx;
  if (paren) os << '(';
  switch (f->op) {
    case Op::True:
      os << "true";
      break;
    case Op::False:
      os << "false";
      break;
    case Op::Var:
      os << f->sym.str();
      break;
    case Op::Or:
      print(os, f->left, 1);
      os << " \\/ ";
      print(os, f->right, 2);
      break;
    case Op::And:
      print(os, f->left, 2);
      os << " /\\ ";
      print(os, f->right, 3);
      break;
    case Op::Dia:
      os << '<' << f->sym.str() << "> ";
      print(os, f->left, 3);
      break;
    case Op::Box:
      os << '[' << f->sym.str() << "] ";
      print(os, f->left, 3);
      break;
    case Op::App:
      print(os, f->left, 4);
      os << ' ';
      print(os, f->right, 5);
      break;
    case Op::Abs:
      os << '\\' << f->sym.str();
      if (f->annot) {
        if (f->annot->is_arrow())
          os << "^(" << *f->annot << ')';
        else
          os << "^o";
      }
      os << ". ";
      print(os, f->left, 0);
      break;
    case Op::Mu:
    case Op::Nu:
      os << (f->op == Op::Mu ? "mu " : "nu ") << f->sym.str() << ". ";
      print(os, f->left, 0);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

Formula mk_true() {
  static const Formula t = make(Op::True, {}, std::nullopt, nullptr, nullptr);
  return t;
}
Formula mk_false() {
  static const Formula f = make(Op::False, {}, std::nullopt, nullptr, nullptr);
  return f;
}
Formula mk_var(Symbol name) { return make(Op::Var, name, std::nullopt, nullptr, nullptr); }
Formula mk_or(Formula l, Formula r) { return make(Op::Or, {}, std::nullopt, std::move(l), std::move(r)); }
Formula mk_and(Formula l, Formula r) { return make(Op::And, {}, std::nullopt, std::move(l), std::move(r)); }
Formula mk_dia(Symbol a, Formula body) { return make(Op::Dia, a, std::nullopt, std::move(body), nullptr); }
Formula mk_box(Symbol a, Formula body) { return make(Op::Box, a, std::nullopt, std::move(body), nullptr); }
Formula mk_abs(Symbol x, std::optional<Kind> k, Formula body) {
  return make(Op::Abs, x, std::move(k), std::move(body), nullptr);
}
Formula mk_app(Formula f, Formula a) { return make(Op::App, {}, std::nullopt, std::move(f), std::move(a)); }
Formula mk_mu(Symbol x, Kind k, Formula body) { return make(Op::Mu, x, std::move(k), std::move(body), nullptr); }
Formula mk_nu(Symbol x, Kind k, Formula body) { return make(Op::Nu, x, std::move(k), std::move(body), nullptr); }

Formula mk_apps(Formula head, const std::vector<Formula>& args) {
  for (const auto& a : args) head = mk_app(std::move(head), a);
  return head;
}

Formula with_occ(const Formula& f, std::uint32_t occ) {
  auto n = std::make_shared<FormulaNode>(*f);
  n->occ = occ;
  return n;
}

Spine spine_of(const Formula& f) {
  Spine s;
  Formula cur = f;
  while (cur->op == Op::App) {
    s.args.push_back(cur->right);
    cur = cur->left;
  }
  s.head = cur;
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

std::size_t formula_size(const Formula& f) {
  if (!f) return 0;
  return 1 + formula_size(f->left) + formula_size(f->right);
}

std::set<Symbol> free_vars(const Formula& f) {
  std::set<Symbol> out;
  std::multiset<Symbol> bound;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(const Formula& f, Symbol x) { return free_vars(f).contains(x); }

Formula substitute(const Formula& f, const std::map<Symbol, Formula>& subst) {
  std::unordered_map<const FormulaNode*, std::set<Symbol>> cache;
  return subst_rec(f, subst, cache);
}

bool alpha_equal(const Formula& a, const Formula& b) {
  std::vector<std::pair<Symbol, Symbol>> env;
  return alpha_rec(a, b, env);
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, f, 0);
  return os.str();
}

}  // namespace hflmc
