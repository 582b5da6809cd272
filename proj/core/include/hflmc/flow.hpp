#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hflmc/hes.hpp"

namespace hflmc {

/// Parameter ↦ occurrence ids of the argument formulas that may be bound
/// to it. An argument that is itself a parameter variable stays in the set
/// as that occurrence; its own flow is resolved lazily by the consumer.
struct FlowMap {
  std::map<Symbol, std::set<std::uint32_t>> flows;

  [[nodiscard]] const std::set<std::uint32_t>& operator[](Symbol param) const;
  /// Occurrences reaching `param` with parameter-variable arguments
  /// replaced by their own flow, transitively.
  [[nodiscard]] std::set<std::uint32_t> closure(Symbol param, const Hes& hes) const;
};

/// Context-insensitive 0-CFA over partial applications of equation heads.
FlowMap compute_flow(const Hes& hes);

/// `PARAM: occ#n (formula), ...`, one parameter per line.
std::string dump_flow(const FlowMap& flow, const Hes& hes);

struct CallGraph {
  /// succ[j]: equations whose names occur in the body of equation j.
  std::vector<std::vector<int>> succ;
};

CallGraph call_graph(const Hes& hes);

/// ν-equations F lying on a cycle whose highest priority is Ω(F).
std::set<int> nu_heads_on_cycles(const CallGraph& cg, const Hes& hes, const std::vector<int>& omega);

}  // namespace hflmc
