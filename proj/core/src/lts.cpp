#include "hflmc/lts.hpp"

#include <algorithm>
#include <sstream>

#include "hflmc/errors.hpp"

namespace hflmc {

int Lts::add_state(Symbol name) {
  if (auto it = state_ids_.find(name); it != state_ids_.end()) return it->second;
  int id = num_states();
  states_.push_back(name);
  state_ids_.emplace(name, id);
  succ_.emplace_back(actions_.size());
  return id;
}

int Lts::add_action(Symbol name) {
  if (auto it = action_ids_.find(name); it != action_ids_.end()) return it->second;
  int id = num_actions();
  actions_.push_back(name);
  action_ids_.emplace(name, id);
  for (auto& row : succ_) row.emplace_back();
  return id;
}

void Lts::add_transition(int src, int action, int dst) {
  auto& row = succ_[src][action];
  if (std::find(row.begin(), row.end(), dst) != row.end()) return;
  row.push_back(dst);
  transitions_.push_back({src, action, dst});
}

int Lts::state_index(Symbol name) const {
  auto it = state_ids_.find(name);
  return it == state_ids_.end() ? -1 : it->second;
}

int Lts::action_index(Symbol name) const {
  auto it = action_ids_.find(name);
  return it == action_ids_.end() ? -1 : it->second;
}

const std::vector<int>& Lts::succ(int q, int action) const { return succ_[q][action]; }

const std::vector<int>& Lts::succ(int q, Symbol action) const {
  static const std::vector<int> none;
  int a = action_index(action);
  return a < 0 ? none : succ_[q][a];
}

Lts parse_lts(std::string_view text) {
  Lts lts;
  bool have_initial = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    if (!have_initial) {
      if (tok.size() != 2 || tok[0] != "initial")
        throw ParseError(line_no, 1, "expected `initial STATE` before any transition");
      lts.set_initial(lts.add_state(Symbol(tok[1])));
      have_initial = true;
      continue;
    }
    if (tok.size() != 3)
      throw ParseError(line_no, 1, "transition line needs exactly 3 tokens, got " + std::to_string(tok.size()));
    int src = lts.add_state(Symbol(tok[0]));
    int act = lts.add_action(Symbol(tok[1]));
    int dst = lts.add_state(Symbol(tok[2]));
    lts.add_transition(src, act, dst);
  }
  if (!have_initial) throw ParseError(line_no > 0 ? line_no : 1, 1, "missing `initial` declaration");
  return lts;
}

std::string to_string(const Lts& lts) {
  std::string out = "initial " + lts.state_name(lts.initial()).str() + "\n";
  for (const auto& t : lts.transitions())
    out += lts.state_name(t.src).str() + " " + lts.action_name(t.action).str() + " " +
           lts.state_name(t.dst).str() + "\n";
  return out;
}

}  // namespace hflmc
