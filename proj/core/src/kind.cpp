#include "hflmc/kind.hpp"

#include <algorithm>
#include <cassert>

namespace hflmc {

Kind Kind::arrow(Kind arg, Kind result) {
  Kind k;
  k.node_ = std::make_shared<const Node>(Node{std::move(arg), std::move(result)});
  return k;
}

Kind Kind::arrows(const std::vector<Kind>& args, Kind result) {
  for (auto it = args.rbegin(); it != args.rend(); ++it) result = arrow(*it, std::move(result));
  return result;
}

const Kind& Kind::arg() const {
  assert(node_);
  return node_->arg;
}

const Kind& Kind::result() const {
  assert(node_);
  return node_->result;
}

int Kind::arity() const {
  int n = 0;
  for (const Kind* k = this; k->is_arrow(); k = &k->result()) ++n;
  return n;
}

std::vector<Kind> Kind::args() const {
  std::vector<Kind> out;
  for (const Kind* k = this; k->is_arrow(); k = &k->result()) out.push_back(k->arg());
  return out;
}

Kind Kind::drop(int n) const {
  Kind k = *this;
  for (int i = 0; i < n; ++i) {
    assert(k.is_arrow());
    k = k.result();
  }
  return k;
}

int Kind::order() const {
  if (is_prop()) return 0;
  return std::max(arg().order() + 1, result().order());
}

std::string Kind::str() const {
  if (is_prop()) return "o";
  std::string lhs = arg().str();
  if (arg().is_arrow()) lhs = "(" + lhs + ")";
  return lhs + " -> " + result().str();
}

std::size_t Kind::hash() const {
  if (is_prop()) return 0x9e3779b9u;
  std::size_t h = arg().hash();
  h ^= result().hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h * 31 + 7;
}

bool operator==(const Kind& a, const Kind& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_prop() || b.is_prop()) return false;
  return a.arg() == b.arg() && a.result() == b.result();
}

std::ostream& operator<<(std::ostream& os, const Kind& k) { return os << k.str(); }

}  // namespace hflmc
