#include "hflmc/kinds.hpp"

#include <functional>

#include "hflmc/errors.hpp"

namespace hflmc {
namespace {

// Union-find over kind terms. A node is either a variable (possibly bound
// through `parent`), the proposition kind, or an arrow of two nodes.
class Unifier {
 public:
  int var() {
    nodes_.push_back({Tag::Var, -1, -1, -1});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int prop() {
    nodes_.push_back({Tag::Prop, -1, -1, -1});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int arrow(int a, int r) {
    nodes_.push_back({Tag::Arrow, a, r, -1});
    return static_cast<int>(nodes_.size()) - 1;
  }

  int from_kind(const Kind& k) { return k.is_prop() ? prop() : arrow(from_kind(k.arg()), from_kind(k.result())); }

  int find(int n) {
    while (nodes_[n].parent >= 0) {
      int p = nodes_[n].parent;
      if (nodes_[p].parent >= 0) nodes_[n].parent = nodes_[p].parent;
      n = p;
    }
    return n;
  }

  // Returns false on mismatch or occurs-check failure.
  bool unify(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return true;
    if (nodes_[a].tag == Tag::Var) return bind(a, b);
    if (nodes_[b].tag == Tag::Var) return bind(b, a);
    if (nodes_[a].tag != nodes_[b].tag) return false;
    if (nodes_[a].tag == Tag::Prop) return true;
    int a1 = nodes_[a].arg, a2 = nodes_[a].res, b1 = nodes_[b].arg, b2 = nodes_[b].res;
    nodes_[a].parent = b;
    return unify(a1, b1) && unify(a2, b2);
  }

  bool is_arrow(int n) { return nodes_[find(n)].tag == Tag::Arrow; }

  // Throws when a variable is left unresolved.
  Kind resolve(int n, const std::string& what) {
    n = find(n);
    switch (nodes_[n].tag) {
      case Tag::Prop:
        return Kind::prop();
      case Tag::Arrow:
        return Kind::arrow(resolve(nodes_[n].arg, what), resolve(nodes_[n].res, what));
      case Tag::Var:
        break;
    }
    throw KindError("ambiguous kind for " + what);
  }

  std::string show(int n) {
    n = find(n);
    switch (nodes_[n].tag) {
      case Tag::Prop:
        return "o";
      case Tag::Var:
        return "?" + std::to_string(n);
      case Tag::Arrow: {
        std::string l = show(nodes_[n].arg);
        if (is_arrow(nodes_[n].arg)) l = "(" + l + ")";
        return l + " -> " + show(nodes_[n].res);
      }
    }
    return "?";
  }

 private:
  enum class Tag { Var, Prop, Arrow };
  struct Node {
    Tag tag;
    int arg, res, parent;
  };

  bool occurs(int v, int n) {
    n = find(n);
    if (n == v) return true;
    if (nodes_[n].tag != Tag::Arrow) return false;
    return occurs(v, nodes_[n].arg) || occurs(v, nodes_[n].res);
  }

  bool bind(int v, int n) {
    if (occurs(v, n)) return false;
    nodes_[v].parent = n;
    return true;
  }

  std::vector<Node> nodes_;
};

class Inference {
 public:
  Unifier u;
  std::map<Symbol, int> env;
  std::string where;
  // When set, binder kind nodes are appended here in pre-order.
  std::vector<int>* binders = nullptr;

  void require(int a, int b, const Formula& at) {
    if (!u.unify(a, b))
      throw KindError("kind mismatch in " + where + " at `" + to_string(at) + "`: " + u.show(a) + " vs " +
                      u.show(b));
  }

  int infer(const Formula& f) {
    switch (f->op) {
      case Op::True:
      case Op::False:
        return u.prop();
      case Op::Var: {
        auto it = env.find(f->sym);
        if (it == env.end()) throw KindError("unbound variable `" + f->sym.str() + "` in " + where);
        return it->second;
      }
      case Op::Or:
      case Op::And: {
        int o = u.prop();
        require(infer(f->left), o, f->left);
        require(infer(f->right), o, f->right);
        return o;
      }
      case Op::Dia:
      case Op::Box: {
        int o = u.prop();
        require(infer(f->left), o, f->left);
        return o;
      }
      case Op::App: {
        int fn = infer(f->left);
        int arg = infer(f->right);
        int res = u.var();
        require(fn, u.arrow(arg, res), f);
        return res;
      }
      case Op::Abs:
      case Op::Mu:
      case Op::Nu: {
        int x = f->annot ? u.from_kind(*f->annot) : u.var();
        if (binders) binders->push_back(x);
        auto saved = bind(f->sym, x);
        int body = infer(f->left);
        restore(f->sym, saved);
        if (f->op == Op::Abs) return u.arrow(x, body);
        require(body, x, f);
        return x;
      }
    }
    return u.var();
  }

  std::optional<int> bind(Symbol s, int n) {
    std::optional<int> old;
    if (auto it = env.find(s); it != env.end()) old = it->second;
    env[s] = n;
    return old;
  }

  void restore(Symbol s, std::optional<int> old) {
    if (old)
      env[s] = *old;
    else
      env.erase(s);
  }

  // Rebuilds `f` with every binder annotated, replaying the binder nodes
  // recorded by a previous infer(f).
  Formula annotate(const Formula& f, std::vector<int>& binder_nodes, std::size_t& next) {
    switch (f->op) {
      case Op::True:
      case Op::False:
      case Op::Var:
        return f;
      case Op::Dia:
        return mk_dia(f->sym, annotate(f->left, binder_nodes, next));
      case Op::Box:
        return mk_box(f->sym, annotate(f->left, binder_nodes, next));
      case Op::Or: {
        auto l = annotate(f->left, binder_nodes, next);
        return mk_or(l, annotate(f->right, binder_nodes, next));
      }
      case Op::And: {
        auto l = annotate(f->left, binder_nodes, next);
        return mk_and(l, annotate(f->right, binder_nodes, next));
      }
      case Op::App: {
        auto l = annotate(f->left, binder_nodes, next);
        return mk_app(l, annotate(f->right, binder_nodes, next));
      }
      case Op::Abs: {
        Kind k = u.resolve(binder_nodes[next++], "`" + f->sym.str() + "`");
        return mk_abs(f->sym, k, annotate(f->left, binder_nodes, next));
      }
      case Op::Mu: {
        Kind k = u.resolve(binder_nodes[next++], "`" + f->sym.str() + "`");
        return mk_mu(f->sym, k, annotate(f->left, binder_nodes, next));
      }
      case Op::Nu: {
        Kind k = u.resolve(binder_nodes[next++], "`" + f->sym.str() + "`");
        return mk_nu(f->sym, k, annotate(f->left, binder_nodes, next));
      }
    }
    return f;
  }
};

}  // namespace

Hes infer_kinds(Hes hes) {
  Inference inf;
  std::vector<int> eq_nodes;
  std::vector<std::vector<int>> param_nodes(hes.size());
  for (const auto& eq : hes.equations) {
    int n = inf.u.var();
    eq_nodes.push_back(n);
    inf.env[eq.name] = n;
  }
  for (std::size_t i = 0; i < hes.size(); ++i) {
    const auto& eq = hes[i];
    inf.where = "equation `" + eq.name.str() + "`";
    for (const auto& p : eq.params) {
      int n = p.annotated ? inf.u.from_kind(p.kind) : inf.u.var();
      param_nodes[i].push_back(n);
      inf.env[p.name] = n;
    }
    int body = inf.infer(eq.body);
    inf.require(body, inf.u.prop(), eq.body);
    int k = inf.u.prop();
    for (auto it = param_nodes[i].rbegin(); it != param_nodes[i].rend(); ++it) k = inf.u.arrow(*it, k);
    if (!inf.u.unify(eq_nodes[i], k))
      throw KindError("kind mismatch for `" + eq.name.str() + "`: used as " + inf.u.show(eq_nodes[i]) +
                      " but defined as " + inf.u.show(k));
    for (const auto& p : eq.params) inf.env.erase(p.name);
  }
  int order = 0;
  for (std::size_t i = 0; i < hes.size(); ++i) {
    auto& eq = hes[i];
    eq.kind = inf.u.resolve(eq_nodes[i], "equation `" + eq.name.str() + "`");
    for (std::size_t p = 0; p < eq.params.size(); ++p)
      eq.params[p].kind =
          inf.u.resolve(param_nodes[i][p], "parameter `" + eq.params[p].name.str() + "` of `" + eq.name.str() + "`");
    order = std::max(order, eq.kind.order());
  }
  if (!hes.entry().kind.is_prop())
    throw KindError("entry equation `" + hes.entry().name.str() + "` must have kind o, has " + hes.entry().kind.str());
  hes.order = order;
  hes.kinded = true;
  return hes;
}

Kind kind_of(const Formula& f, const std::map<Symbol, Kind>& env) {
  Inference inf;
  inf.where = "formula";
  for (const auto& [s, k] : env) inf.env[s] = inf.u.from_kind(k);
  int n = inf.infer(f);
  return inf.u.resolve(n, "formula `" + to_string(f) + "`");
}

Formula annotate_kinds(const Formula& f, const std::map<Symbol, Kind>& env) {
  Inference inf;
  inf.where = "formula";
  for (const auto& [s, k] : env) inf.env[s] = inf.u.from_kind(k);
  std::vector<int> binders;
  inf.binders = &binders;
  inf.infer(f);
  std::size_t next = 0;
  return inf.annotate(f, binders, next);
}

}  // namespace hflmc
