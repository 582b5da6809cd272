#include "hflmc/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "hflmc/errors.hpp"
#include "hflmc/transform.hpp"

namespace hflmc {

std::size_t Domain::TableHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::size_t h = v.size();
  for (auto x : v) h = h * 1000003u ^ x;
  return h;
}

std::uint32_t Domain::index_of(const std::vector<std::uint32_t>& table) const {
  auto it = index_.find(table);
  return it == index_.end() ? UINT32_MAX : it->second;
}

bool Domain::leq(std::uint32_t a, std::uint32_t b) const {
  if (kind.is_prop()) return (a & ~b) == 0;
  const auto& ta = tables_[a];
  const auto& tb = tables_[b];
  for (std::size_t x = 0; x < ta.size(); ++x)
    if (!res->leq(ta[x], tb[x])) return false;
  return true;
}

class ValueStore {
 public:
  Kind kind;
  ValueStore* arg = nullptr;
  ValueStore* res = nullptr;
  // Arrow kinds: id -> result ids indexed by argument position.
  std::vector<std::vector<std::uint32_t>> tables;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, Domain::TableHash> ids;
  // id -> position in the enumerated domain, filled on demand.
  std::unordered_map<std::uint32_t, std::uint32_t> positions;
  // position -> id, filled when the domain is first used as an argument.
  std::vector<std::uint32_t> pos_to_id;

  std::uint32_t intern(std::vector<std::uint32_t> table) {
    auto [it, fresh] = ids.emplace(table, static_cast<std::uint32_t>(tables.size()));
    if (fresh) tables.push_back(std::move(table));
    return it->second;
  }
};

namespace {

struct MemoKey {
  const FormulaNode* node;
  std::vector<std::uint32_t> vals;
  bool operator==(const MemoKey&) const = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<const void*>{}(k.node);
    for (auto v : k.vals) h = h * 1000003u ^ v;
    return h;
  }
};

struct NodeInfo {
  ValueStore* store = nullptr;  // binders only: store of the node's own kind
  std::vector<Symbol> free;     // binders only, for memo keys
};

}  // namespace

struct Oracle::Impl {
  std::unordered_map<Kind, std::unique_ptr<Domain>> domains;
  std::unordered_map<Kind, std::unique_ptr<ValueStore>> stores;
  std::unordered_map<const FormulaNode*, NodeInfo> nodes;
  std::unordered_map<MemoKey, std::uint32_t, MemoHash> memo;
  SemEnv env;
};

Oracle::Oracle(const Lts& lts, OracleOptions opts) : lts_(lts), opts_(opts), impl_(std::make_unique<Impl>()) {
  if (lts.num_states() > 30) throw DomainTooLarge(std::ldexp(1.0, lts.num_states()), "kind o");
}

Oracle::~Oracle() = default;

StateSet Oracle::all_states() const { return (StateSet{1} << lts_.num_states()) - 1; }

ValueStore& Oracle::store(const Kind& kind) {
  if (auto it = impl_->stores.find(kind); it != impl_->stores.end()) return *it->second;
  auto st = std::make_unique<ValueStore>();
  st->kind = kind;
  if (kind.is_arrow()) {
    st->arg = &store(kind.arg());
    st->res = &store(kind.result());
  }
  auto& slot = impl_->stores[kind];
  slot = std::move(st);
  return *slot;
}

const Domain& Oracle::domain(const Kind& kind) {
  if (auto it = impl_->domains.find(kind); it != impl_->domains.end()) return *it->second;
  if (kind.order() > 2) throw DomainTooLarge(0, "kind " + kind.str() + " has order above 2");
  auto d = std::make_unique<Domain>();
  d->kind = kind;
  if (kind.is_prop()) {
    double count = std::ldexp(1.0, lts_.num_states());
    if (count > static_cast<double>(opts_.domain_cap)) throw DomainTooLarge(count, "kind o");
    d->size_ = static_cast<std::uint32_t>(count);
  } else {
    const Domain& a = domain(kind.arg());
    const Domain& r = domain(kind.result());
    d->arg = &a;
    d->res = &r;
    std::uint32_t na = a.size();
    // preds[x]: positions y < x with y ⊑ x; the canonical order is a linear
    // extension, so no later position can be below x.
    std::vector<std::vector<std::uint32_t>> preds(na);
    for (std::uint32_t x = 0; x < na; ++x)
      for (std::uint32_t y = 0; y < x; ++y)
        if (a.leq(y, x)) preds[x].push_back(y);
    std::vector<std::uint32_t> table(na);
    std::function<void(std::uint32_t)> fill = [&](std::uint32_t x) {
      if (x == na) {
        if (d->tables_.size() >= opts_.domain_cap)
          throw DomainTooLarge(static_cast<double>(opts_.domain_cap) + 1, "kind " + kind.str());
        d->tables_.push_back(table);
        return;
      }
      for (std::uint32_t v = 0; v < r.size(); ++v) {
        bool ok = true;
        for (auto y : preds[x]) {
          if (!r.leq(table[y], v)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        table[x] = v;
        fill(x + 1);
      }
    };
    fill(0);
    d->size_ = static_cast<std::uint32_t>(d->tables_.size());
    for (std::uint32_t i = 0; i < d->size_; ++i) d->index_.emplace(d->tables_[i], i);
  }
  auto& slot = impl_->domains[kind];
  slot = std::move(d);
  return *slot;
}

SemValue Oracle::value_at(const Domain& d, std::uint32_t pos) {
  ValueStore& st = store(d.kind);
  if (d.kind.is_prop()) return {&st, pos};
  if (st.pos_to_id.empty()) {
    st.pos_to_id.resize(d.size());
    for (std::uint32_t p = 0; p < d.size(); ++p) {
      std::vector<std::uint32_t> ids;
      ids.reserve(d.table(p).size());
      for (auto c : d.table(p)) ids.push_back(value_at(*d.res, c).id);
      std::uint32_t id = st.intern(std::move(ids));
      st.pos_to_id[p] = id;
      st.positions.emplace(id, p);
    }
  }
  return {&st, st.pos_to_id[pos]};
}

std::uint32_t Oracle::position(const SemValue& v) {
  if (v.store->kind.is_prop()) return v.id;
  auto* st = const_cast<ValueStore*>(v.store);
  if (auto it = st->positions.find(v.id); it != st->positions.end()) return it->second;
  const Domain& d = domain(st->kind);
  std::vector<std::uint32_t> pos;
  for (auto c : st->tables[v.id]) pos.push_back(position({st->res, c}));
  std::uint32_t p = d.index_of(pos);
  if (p == UINT32_MAX) throw Error("oracle: function value is not monotone");
  st->positions.emplace(v.id, p);
  return p;
}

std::vector<SemValue> Oracle::enumerate_domain(const Kind& kind) {
  const Domain& d = domain(kind);
  std::vector<SemValue> out;
  out.reserve(d.size());
  for (std::uint32_t p = 0; p < d.size(); ++p) out.push_back(value_at(d, p));
  return out;
}

SemValue Oracle::apply(const SemValue& f, const SemValue& a) {
  return {f.store->res, f.store->tables[f.id][position(a)]};
}

SemValue Oracle::bottom(const Kind& kind) {
  ValueStore& st = store(kind);
  if (kind.is_prop()) return {&st, 0};
  std::vector<std::uint32_t> t(domain(kind.arg()).size(), bottom(kind.result()).id);
  return {&st, st.intern(std::move(t))};
}

SemValue Oracle::top(const Kind& kind) {
  ValueStore& st = store(kind);
  if (kind.is_prop()) return {&st, static_cast<std::uint32_t>(all_states())};
  std::vector<std::uint32_t> t(domain(kind.arg()).size(), top(kind.result()).id);
  return {&st, st.intern(std::move(t))};
}

SemValue Oracle::eval(const Formula& f, const SemEnv& env) {
  Impl& im = *impl_;
  im.nodes.clear();
  im.memo.clear();
  im.env = env;

  std::vector<std::pair<Symbol, Kind>> kenv;
  for (const auto& [x, v] : env) kenv.emplace_back(x, v.store->kind);
  std::function<Kind(const Formula&)> annotate = [&](const Formula& g) -> Kind {
    switch (g->op) {
      case Op::True:
      case Op::False:
        return Kind::prop();
      case Op::Var: {
        auto it = std::find_if(kenv.rbegin(), kenv.rend(), [&](auto& p) { return p.first == g->sym; });
        if (it == kenv.rend()) throw KindError("oracle: unbound variable `" + g->sym.str() + "`");
        return it->second;
      }
      case Op::Or:
      case Op::And:
        annotate(g->left);
        annotate(g->right);
        return Kind::prop();
      case Op::Dia:
      case Op::Box:
        annotate(g->left);
        return Kind::prop();
      case Op::App: {
        Kind fk = annotate(g->left);
        annotate(g->right);
        if (!fk.is_arrow()) throw KindError("oracle: application of a proposition");
        return fk.result();
      }
      case Op::Abs:
      case Op::Mu:
      case Op::Nu:
        break;
    }
    if (!g->annot) throw KindError("oracle: binder `" + g->sym.str() + "` lacks a kind");
    kenv.emplace_back(g->sym, *g->annot);
    Kind body = annotate(g->left);
    kenv.pop_back();
    Kind k = g->op == Op::Abs ? Kind::arrow(*g->annot, body) : *g->annot;
    NodeInfo& info = im.nodes[g.get()];
    info.store = &store(k);
    if (opts_.memo) {
      auto fv = free_vars(g);
      info.free.assign(fv.begin(), fv.end());
    }
    return k;
  };
  annotate(f);

  const StateSet full = all_states();
  const int n = lts_.num_states();
  ValueStore* prop = &store(Kind::prop());

  auto lookup = [&](Symbol x) -> SemValue {
    for (auto it = im.env.rbegin(); it != im.env.rend(); ++it)
      if (it->first == x) return it->second;
    throw KindError("oracle: unbound variable `" + x.str() + "`");
  };

  std::function<SemValue(const Formula&)> ev = [&](const Formula& g) -> SemValue {
    switch (g->op) {
      case Op::True:
        return {prop, static_cast<std::uint32_t>(full)};
      case Op::False:
        return {prop, 0};
      case Op::Var:
        return lookup(g->sym);
      case Op::Or: {
        auto l = ev(g->left);
        return {prop, l.id | ev(g->right).id};
      }
      case Op::And: {
        auto l = ev(g->left);
        return {prop, l.id & ev(g->right).id};
      }
      case Op::Dia:
      case Op::Box: {
        StateSet s = ev(g->left).id, out = 0;
        for (int q = 0; q < n; ++q) {
          bool hit = g->op == Op::Box;
          for (int r : lts_.succ(q, g->sym)) {
            bool in = (s >> r) & 1;
            if (g->op == Op::Dia ? in : !in) {
              hit = !hit;
              break;
            }
          }
          if (hit) out |= StateSet{1} << q;
        }
        return {prop, static_cast<std::uint32_t>(out)};
      }
      case Op::App: {
        auto fn = ev(g->left);
        return apply(fn, ev(g->right));
      }
      case Op::Abs:
      case Op::Mu:
      case Op::Nu:
        break;
    }
    const NodeInfo& info = im.nodes.at(g.get());
    ValueStore* st = info.store;
    MemoKey key;
    if (opts_.memo) {
      key.node = g.get();
      for (Symbol x : info.free) key.vals.push_back(lookup(x).id);
      if (auto it = im.memo.find(key); it != im.memo.end()) return {st, it->second};
    }
    SemValue result;
    if (g->op == Op::Abs) {
      const Domain& a = domain(st->kind.arg());
      std::vector<std::uint32_t> table(a.size());
      for (std::uint32_t p = 0; p < a.size(); ++p) {
        im.env.emplace_back(g->sym, value_at(a, p));
        table[p] = ev(g->left).id;
        im.env.pop_back();
      }
      result = {st, st->intern(std::move(table))};
    } else {
      SemValue cur = g->op == Op::Mu ? bottom(st->kind) : top(st->kind);
      for (;;) {
        im.env.emplace_back(g->sym, cur);
        SemValue next = ev(g->left);
        im.env.pop_back();
        if (next.id == cur.id) break;
        cur = next;
      }
      result = cur;
    }
    if (opts_.memo) im.memo.emplace(std::move(key), result.id);
    return result;
  };
  return ev(f);
}

Verdict check_naive(const Lts& lts, const Hes& hes, OracleOptions opts) {
  Oracle oracle(lts, opts);
  auto v = oracle.eval(to_hfl(hes));
  return (v.states() >> lts.initial()) & 1 ? Verdict::Valid : Verdict::Invalid;
}

StateSet eval_propositional(const Lts& lts, const Formula& f) {
  const int n = lts.num_states();
  if (n > 64) throw DomainTooLarge(std::ldexp(1.0, n), "kind o");
  const StateSet full = n == 64 ? ~StateSet{0} : ((StateSet{1} << n) - 1);
  std::function<StateSet(const Formula&)> go = [&](const Formula& g) -> StateSet {
    switch (g->op) {
      case Op::True:
        return full;
      case Op::False:
        return 0;
      case Op::Or:
        return go(g->left) | go(g->right);
      case Op::And:
        return go(g->left) & go(g->right);
      case Op::Dia:
      case Op::Box: {
        StateSet s = go(g->left), out = 0;
        for (int q = 0; q < n; ++q) {
          bool hit = g->op == Op::Box;
          for (int r : lts.succ(q, g->sym)) {
            bool in = (s >> r) & 1;
            if (g->op == Op::Dia ? in : !in) {
              hit = !hit;
              break;
            }
          }
          if (hit) out |= StateSet{1} << q;
        }
        return out;
      }
      default:
        throw Error("eval_propositional: formula `" + to_string(g) + "` is not propositional");
    }
  };
  return go(f);
}

Verdict check_by_unfolding(const Lts& lts, const Hes& hes, int m, std::size_t max_steps) {
  Hes approx = approximate(hes, m);
  Formula chi = normalize(mk_var(approx.entry().name), approx, max_steps);
  return (eval_propositional(lts, chi) >> lts.initial()) & 1 ? Verdict::Valid : Verdict::Invalid;
}

}  // namespace hflmc
