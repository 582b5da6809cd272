#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace hflmc {

/// Interned identifier. Two symbols compare equal iff their spellings do.
/// The intern table is process-wide, append-only and thread-safe.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string_view name);

  [[nodiscard]] std::uint32_t id() const { return id_; }
  [[nodiscard]] bool valid() const { return id_ != 0; }
  [[nodiscard]] const std::string& str() const;

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend auto operator<=>(Symbol a, Symbol b) { return a.id_ <=> b.id_; }

  static Symbol from_id(std::uint32_t id);

 private:
  std::uint32_t id_ = 0;
};

/// Returns a symbol spelled `base` or `base_N` that has never been interned
/// before.
Symbol fresh_symbol(std::string_view base);

}  // namespace hflmc

template <>
struct std::hash<hflmc::Symbol> {
  std::size_t operator()(hflmc::Symbol s) const noexcept { return s.id(); }
};
