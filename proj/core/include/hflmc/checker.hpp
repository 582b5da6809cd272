#pragma once

#include <optional>
#include <string>

#include "hflmc/flow.hpp"
#include "hflmc/game.hpp"
#include "hflmc/saturation.hpp"
#include "hflmc/semantics.hpp"

namespace hflmc {

struct CheckOptions {
  SaturationOptions saturation;
  /// Decide with the semantic oracle instead of saturation.
  bool naive_oracle = false;
  /// Replaces priorities() when building the game; used by mutation tests.
  std::function<std::vector<int>(const Hes&)> priority_override;
};

struct RunReport {
  Verdict verdict = Verdict::Invalid;
  double parse_ms = 0, kind_ms = 0, flow_ms = 0, sat_ms = 0, game_ms = 0, solve_ms = 0, total_ms = 0;
  std::size_t hes_size = 0;
  int lts_states = 0;
  int num_eqs = 0;
  int order = 0;
  int alternations = 0;
  std::size_t gamma_size = 0;
  int game_positions = 0;
  std::size_t game_edges = 0;
  int iterations = 0;
};

struct CheckResult {
  Verdict verdict = Verdict::Invalid;
  RunReport report;
  Hes hes;
  Lts lts;
  std::optional<FlowMap> flow;
  std::optional<SaturationState> saturation;
  std::optional<TypabilityGame> game;
  std::optional<ParitySolution> solution;
};

/// infer_kinds → compute_flow → saturate → build_subgame → solve.
/// `hes` may be unkinded.
CheckResult check(const Lts& lts, Hes hes, const CheckOptions& opts = {});
/// Same, starting from source texts; parse time is recorded.
CheckResult check_text(const std::string& hes_text, const std::string& lts_text, const CheckOptions& opts = {});

}  // namespace hflmc
