#include "hflmc/hes.hpp"

#include <sstream>

namespace hflmc {
namespace {

Formula number(const Formula& f, std::vector<Formula>& table) {
  auto n = std::make_shared<FormulaNode>(*f);
  n->occ = static_cast<std::uint32_t>(table.size());
  table.push_back(nullptr);
  std::size_t slot = table.size() - 1;
  if (n->left) n->left = number(n->left, table);
  if (n->right) n->right = number(n->right, table);
  table[slot] = n;
  return n;
}

}  // namespace

int Hes::index_of(Symbol name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void Hes::finalize() {
  index_.clear();
  for (std::size_t i = 0; i < equations.size(); ++i) index_.emplace(equations[i].name, static_cast<int>(i));
  occurrences_.assign(1, nullptr);
  for (auto& eq : equations) eq.body = number(eq.body, occurrences_);
}

std::size_t Hes::ast_size() const {
  std::size_t n = 0;
  for (const auto& eq : equations) n += eq.params.size() + formula_size(eq.body);
  return n;
}

int Hes::alternations() const {
  int n = 0;
  for (std::size_t i = 1; i < equations.size(); ++i)
    if (equations[i].sign != equations[i - 1].sign) ++n;
  return n;
}

std::string tag_string(const std::vector<int>& tag) {
  if (tag.empty()) return {};
  std::string s = "^(";
  for (std::size_t i = 0; i < tag.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(tag[i]);
  }
  return s + ")";
}

std::string to_string(const Equation& eq) {
  std::ostringstream os;
  os << eq.name.str() << " =" << sign_str(eq.sign) << ' ';
  for (const auto& p : eq.params) {
    os << '\\' << p.name.str();
    if (p.annotated) {
      if (p.kind.is_arrow())
        os << "^(" << p.kind << ')';
      else
        os << "^o";
    }
    os << ". ";
  }
  os << to_string(eq.body) << ';';
  return os.str();
}

std::string to_string(const Hes& hes) {
  std::string out;
  for (const auto& eq : hes.equations) {
    out += to_string(eq);
    out += '\n';
  }
  return out;
}

}  // namespace hflmc

namespace hflmc {

std::vector<int> priorities(const Hes& hes) {
  std::vector<int> omega(hes.size(), 0);
  for (int j = static_cast<int>(hes.size()) - 1; j >= 0; --j) {
    int parity = hes[j].sign == Sign::Nu ? 0 : 1;
    int base = j + 1 < static_cast<int>(hes.size()) ? omega[j + 1] : 0;
    omega[j] = base % 2 == parity ? base : base + 1;
  }
  return omega;
}

}  // namespace hflmc
