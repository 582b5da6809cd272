#include "hflmc/rtype.hpp"

#include <algorithm>
#include <cmath>

#include "hflmc/errors.hpp"

namespace hflmc {

std::size_t TypeTable::KeyHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::size_t h = v.size();
  for (auto x : v) h = h * 1000003u ^ x;
  return h;
}

TypeTable::TypeTable(int num_states) : num_states_(num_states) {
  std::uint32_t o = kind_id(Kind::prop());
  for (int q = 0; q < num_states; ++q) types_.push_back({true, q, 0, 0, o});
}

std::uint32_t TypeTable::kind_id(const Kind& k) {
  auto [it, fresh] = kind_ids_.emplace(k, static_cast<std::uint32_t>(kinds_.size()));
  if (fresh) kinds_.push_back(k);
  return it->second;
}

TypeId TypeTable::atom(int q) { return static_cast<TypeId>(q); }

TypeId TypeTable::arrow(SetId arg, TypeId res) {
  std::uint64_t key = (std::uint64_t{arg} << 32) | res;
  if (auto it = arrow_ids_.find(key); it != arrow_ids_.end()) return it->second;
  Kind k = Kind::arrow(set_kind(arg), kind(res));
  auto id = static_cast<TypeId>(types_.size());
  types_.push_back({false, -1, arg, res, kind_id(k)});
  arrow_ids_.emplace(key, id);
  return id;
}

SetId TypeTable::set(const Kind& k, std::vector<TypeId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::uint32_t kid = kind_id(k);
  for (TypeId t : members)
    if (types_[t].kind != kid) throw KindError("intersection member does not refine " + k.str());
  std::vector<std::uint32_t> key;
  key.reserve(members.size() + 1);
  key.push_back(kid);
  key.insert(key.end(), members.begin(), members.end());
  if (auto it = set_ids_.find(key); it != set_ids_.end()) return it->second;
  auto id = static_cast<SetId>(sets_.size());
  sets_.push_back({kid, std::move(members)});
  set_ids_.emplace(std::move(key), id);
  return id;
}

TypeId TypeTable::arrows(const std::vector<SetId>& args, int q) {
  TypeId t = atom(q);
  for (auto it = args.rbegin(); it != args.rend(); ++it) t = arrow(*it, t);
  return t;
}

int TypeTable::target(TypeId t) const {
  while (!types_[t].atom) t = types_[t].res;
  return types_[t].state;
}

std::vector<SetId> TypeTable::args(TypeId t) const {
  std::vector<SetId> out;
  while (!types_[t].atom) {
    out.push_back(types_[t].arg);
    t = types_[t].res;
  }
  return out;
}

TypeId TypeTable::drop(TypeId t, int n) const {
  for (int i = 0; i < n; ++i) t = types_[t].res;
  return t;
}

bool TypeTable::subtype(TypeId a, TypeId b) {
  if (a == b) return true;
  if (types_[a].kind != types_[b].kind)
    throw KindError("subtype: " + kind(a).str() + " vs " + kind(b).str());
  if (types_[a].atom) return false;
  std::uint64_t key = (std::uint64_t{a} << 32) | b;
  if (auto it = sub_memo_.find(key); it != sub_memo_.end()) return it->second;
  bool r = subtype(types_[a].res, types_[b].res) && subtype_set(types_[b].arg, types_[a].arg);
  sub_memo_.emplace(key, r);
  return r;
}

bool TypeTable::subtype_set(SetId a, SetId b) {
  if (a == b) return true;
  for (TypeId need : sets_[b].members) {
    bool found = false;
    for (TypeId have : sets_[a].members) {
      if (subtype(have, need)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

double TypeTable::refinement_count(const Kind& k) const {
  if (k.is_prop()) return num_states_;
  return std::pow(2.0, refinement_count(k.arg())) * refinement_count(k.result());
}

std::vector<TypeId> TypeTable::refinements(const Kind& k, std::size_t cap) {
  if (auto it = refinement_cache_.find(k); it != refinement_cache_.end()) {
    if (it->second.size() > cap) throw TooManyTypes(static_cast<double>(it->second.size()), k.str());
    return it->second;
  }
  double count = refinement_count(k);
  if (count > static_cast<double>(cap)) throw TooManyTypes(count, k.str());
  std::vector<TypeId> out;
  if (k.is_prop()) {
    for (int q = 0; q < num_states_; ++q) out.push_back(atom(q));
  } else {
    auto args = refinements(k.arg(), cap);
    auto results = refinements(k.result(), cap);
    std::uint64_t subsets = std::uint64_t{1} << args.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      std::vector<TypeId> members;
      for (std::size_t i = 0; i < args.size(); ++i)
        if ((mask >> i) & 1) members.push_back(args[i]);
      SetId s = set(k.arg(), std::move(members));
      for (TypeId r : results) out.push_back(arrow(s, r));
    }
  }
  refinement_cache_.emplace(k, out);
  return out;
}

std::string TypeTable::render_set(SetId s, const Lts& lts) const {
  const auto& ms = sets_[s].members;
  if (ms.empty()) return "T";
  auto elem = [&](TypeId t) {
    std::string r = render(t, lts);
    return types_[t].atom ? r : "(" + r + ")";
  };
  if (ms.size() == 1) return elem(ms[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += " /\\ ";
    out += elem(ms[i]);
  }
  return out + ")";
}

std::string TypeTable::render(TypeId t, const Lts& lts) const {
  if (types_[t].atom) return lts.state_name(types_[t].state).str();
  return render_set(types_[t].arg, lts) + " -> " + render(types_[t].res, lts);
}

}  // namespace hflmc
