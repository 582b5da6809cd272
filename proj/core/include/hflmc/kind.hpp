#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace hflmc {

/// Simple type of a formula: the proposition kind `o` or an arrow.
class Kind {
 public:
  Kind() = default;  // o

  static Kind prop() { return Kind{}; }
  static Kind arrow(Kind arg, Kind result);
  /// k1 -> k2 -> ... -> o
  static Kind arrows(const std::vector<Kind>& args, Kind result = Kind{});

  [[nodiscard]] bool is_prop() const { return node_ == nullptr; }
  [[nodiscard]] bool is_arrow() const { return node_ != nullptr; }
  [[nodiscard]] const Kind& arg() const;
  [[nodiscard]] const Kind& result() const;

  /// Number of arguments before reaching `o`.
  [[nodiscard]] int arity() const;
  /// Argument kinds η₁ … η_ℓ of η₁ → ⋯ → η_ℓ → o.
  [[nodiscard]] std::vector<Kind> args() const;
  /// The kind left after applying `n` arguments.
  [[nodiscard]] Kind drop(int n) const;

  [[nodiscard]] int order() const;
  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::size_t hash() const;

  friend bool operator==(const Kind& a, const Kind& b);

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct Kind::Node {
  Kind arg;
  Kind result;
};

std::ostream& operator<<(std::ostream& os, const Kind& k);

}  // namespace hflmc

template <>
struct std::hash<hflmc::Kind> {
  std::size_t operator()(const hflmc::Kind& k) const noexcept { return k.hash(); }
};
