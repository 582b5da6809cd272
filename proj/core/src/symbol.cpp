#include "hflmc/symbol.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace hflmc {
namespace {

struct InternTable {
  std::mutex mu;
  std::deque<std::string> names{std::string{}};  // id 0 is the invalid symbol
  std::unordered_map<std::string_view, std::uint32_t> ids;
  std::uint64_t fresh_counter = 0;
};

InternTable& table() {
  static InternTable t;
  return t;
}

std::uint32_t intern_locked(InternTable& t, std::string_view name) {
  if (auto it = t.ids.find(name); it != t.ids.end()) return it->second;
  t.names.emplace_back(name);
  auto id = static_cast<std::uint32_t>(t.names.size() - 1);
  t.ids.emplace(t.names.back(), id);
  return id;
}

}  // namespace

Symbol::Symbol(std::string_view name) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  id_ = intern_locked(t, name);
}

const std::string& Symbol::str() const {
  auto& t = table();
  std::lock_guard lock(t.mu);
  return t.names[id_];
}

Symbol Symbol::from_id(std::uint32_t id) {
  Symbol s;
  s.id_ = id;
  return s;
}

Symbol fresh_symbol(std::string_view base) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  std::string candidate(base);
  if (candidate.empty()) candidate = "v";
  if (!t.ids.contains(candidate)) return Symbol::from_id(intern_locked(t, candidate));
  for (;;) {
    std::string next = candidate + "_" + std::to_string(++t.fresh_counter);
    if (!t.ids.contains(next)) return Symbol::from_id(intern_locked(t, next));
  }
}

}  // namespace hflmc
