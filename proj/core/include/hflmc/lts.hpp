#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hflmc/symbol.hpp"

namespace hflmc {

struct Transition {
  int src;
  int action;
  int dst;
  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Finite labelled transition system (Q, A, →, q₀). States and actions are
/// dense indices; names are kept for printing.
class Lts {
 public:
  int add_state(Symbol name);
  int add_action(Symbol name);
  /// Duplicate transitions are ignored.
  void add_transition(int src, int action, int dst);
  void set_initial(int q) { initial_ = q; }

  [[nodiscard]] int initial() const { return initial_; }
  [[nodiscard]] int num_states() const { return static_cast<int>(states_.size()); }
  [[nodiscard]] int num_actions() const { return static_cast<int>(actions_.size()); }
  [[nodiscard]] Symbol state_name(int q) const { return states_[q]; }
  [[nodiscard]] Symbol action_name(int a) const { return actions_[a]; }
  [[nodiscard]] int state_index(Symbol name) const;
  [[nodiscard]] int action_index(Symbol name) const;

  [[nodiscard]] const std::vector<int>& succ(int q, int action) const;
  /// Successors under the named action; empty when the action is unknown.
  [[nodiscard]] const std::vector<int>& succ(int q, Symbol action) const;
  [[nodiscard]] const std::vector<Transition>& transitions() const { return transitions_; }

 private:
  std::vector<Symbol> states_;
  std::vector<Symbol> actions_;
  std::unordered_map<Symbol, int> state_ids_;
  std::unordered_map<Symbol, int> action_ids_;
  std::vector<Transition> transitions_;
  // succ_[q][a]
  std::vector<std::vector<std::vector<int>>> succ_;
  int initial_ = 0;
};

/// `initial q0` on the first non-comment line, then `src action dst` lines.
Lts parse_lts(std::string_view text);
std::string to_string(const Lts& lts);

}  // namespace hflmc
