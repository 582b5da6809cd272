#include "hflmc/derive.hpp"

#include <algorithm>
#include <map>

#include "hflmc/errors.hpp"

namespace hflmc {

void env_insert(TypeEnv& env, Binding b) {
  auto it = std::lower_bound(env.begin(), env.end(), b);
  if (it == env.end() || *it != b) env.insert(it, b);
}

bool env_contains(const TypeEnv& env, const Binding& b) { return std::binary_search(env.begin(), env.end(), b); }

bool env_subset(const TypeEnv& a, const TypeEnv& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

void minimize(Family& fam) {
  std::sort(fam.begin(), fam.end(), [](const TypeEnv& x, const TypeEnv& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  Family kept;
  for (auto& w : fam) {
    bool dominated = false;
    for (const auto& k : kept) {
      if (k.size() < w.size() && env_subset(k, w)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(w));
  }
  std::sort(kept.begin(), kept.end());
  fam = std::move(kept);
}

namespace {

TypeEnv merge(const TypeEnv& a, const TypeEnv& b) {
  TypeEnv out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Family product(const Family& a, const Family& b, std::size_t cap) {
  Family out;
  if (a.empty() || b.empty()) return out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(merge(x, y));
  minimize(out);
  if (out.size() > cap) throw BudgetExceeded("derivation witness family exceeded " + std::to_string(cap));
  return out;
}

const Family& unit_family() {
  static const Family f{TypeEnv{}};
  return f;
}

}  // namespace

Deriver::Deriver(TypeTable& types, const Lts& lts, Available available, std::size_t family_cap)
    : types_(types), lts_(lts), available_(std::move(available)), cap_(family_cap) {}

const Family& Deriver::derive(const Formula& f, TypeId target) {
  auto key = std::make_pair(f.get(), target);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Family out;
  switch (f->op) {
    case Op::True:
      if (types_.is_atom(target)) out = unit_family();
      break;
    case Op::False:
      break;
    case Op::Or: {
      out = derive(f->left, target);
      const Family& r = derive(f->right, target);
      out.insert(out.end(), r.begin(), r.end());
      minimize(out);
      break;
    }
    case Op::And: {
      Family l = derive(f->left, target);
      out = product(l, derive(f->right, target), cap_);
      break;
    }
    case Op::Dia:
      for (int q2 : lts_.succ(types_.state(target), f->sym)) {
        const Family& b = derive(f->left, types_.atom(q2));
        out.insert(out.end(), b.begin(), b.end());
      }
      minimize(out);
      break;
    case Op::Box:
      out = unit_family();
      for (int q2 : lts_.succ(types_.state(target), f->sym)) {
        Family b = derive(f->left, types_.atom(q2));
        out = product(out, b, cap_);
        if (out.empty()) break;
      }
      break;
    case Op::Var:
    case Op::App:
      out = derive_spine(f, target);
      break;
    case Op::Abs:
    case Op::Mu:
    case Op::Nu:
      throw Error("derive: body is not λ-free: `" + to_string(f) + "`");
  }
  return memo_.emplace(key, std::move(out)).first->second;
}

Family Deriver::derive_spine(const Formula& f, TypeId target) {
  Spine sp = spine_of(f);
  if (sp.head->op != Op::Var) throw Error("derive: application head is not a variable: `" + to_string(f) + "`");
  Family out;
  const int k = static_cast<int>(sp.args.size());
  for (TypeId t : available_(sp.head->sym)) {
    if (!types_.subtype(types_.drop(t, k), target)) continue;
    Family acc{TypeEnv{Binding{sp.head->sym, t}}};
    TypeId cur = t;
    for (int i = 0; i < k && !acc.empty(); ++i) {
      for (TypeId need : types_.members(types_.arg(cur))) {
        Family arg = derive(sp.args[i], need);
        acc = product(acc, arg, cap_);
        if (acc.empty()) break;
      }
      cur = types_.res(cur);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
  minimize(out);
  return out;
}

std::vector<TypeId> Deriver::types_of(const Formula& f, const Kind& kind) {
  std::vector<TypeId> out;
  if (kind.is_prop()) {
    for (int q = 0; q < types_.num_states(); ++q)
      if (!derive(f, types_.atom(q)).empty()) out.push_back(types_.atom(q));
    return out;
  }
  Spine sp = spine_of(f);
  if (sp.head->op != Op::Var) throw Error("types_of: term of arrow kind is not a spine: `" + to_string(f) + "`");
  const int k = static_cast<int>(sp.args.size());
  for (TypeId t : available_(sp.head->sym)) {
    TypeId cur = t;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      for (TypeId need : types_.members(types_.arg(cur))) {
        if (derive(sp.args[i], need).empty()) {
          ok = false;
          break;
        }
      }
      cur = types_.res(cur);
    }
    if (ok) out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::unordered_map<Symbol, std::vector<TypeId>> group(const TypeEnv& gamma) {
  std::unordered_map<Symbol, std::vector<TypeId>> by_var;
  for (const auto& b : gamma) by_var[b.var].push_back(b.type);
  return by_var;
}

}  // namespace

Family derive(TypeTable& types, const Lts& lts, const TypeEnv& gamma, const Formula& body, int q,
              const std::unordered_map<Symbol, std::vector<TypeId>>& candidates) {
  auto by_var = group(gamma);
  for (const auto& [x, ts] : candidates) by_var[x].insert(by_var[x].end(), ts.begin(), ts.end());
  static const std::vector<TypeId> none;
  Deriver d(types, lts, [&](Symbol x) -> const std::vector<TypeId>& {
    auto it = by_var.find(x);
    return it == by_var.end() ? none : it->second;
  });
  return d.derive(body, types.atom(q));
}

std::vector<TypeId> types_of(TypeTable& types, const Lts& lts, const TypeEnv& gamma, const Formula& f,
                             const Kind& kind) {
  auto by_var = group(gamma);
  static const std::vector<TypeId> none;
  Deriver d(types, lts, [&](Symbol x) -> const std::vector<TypeId>& {
    auto it = by_var.find(x);
    return it == by_var.end() ? none : it->second;
  });
  return d.types_of(f, kind);
}

}  // namespace hflmc
