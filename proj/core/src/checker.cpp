#include "hflmc/checker.hpp"

#include <chrono>

#include "hflmc/kinds.hpp"
#include "hflmc/parser.hpp"

namespace hflmc {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

CheckResult check(const Lts& lts, Hes hes, const CheckOptions& opts) {
  CheckResult r;
  auto t0 = Clock::now();
  auto t = Clock::now();
  if (!hes.kinded) hes = infer_kinds(std::move(hes));
  r.report.kind_ms = since(t);
  r.hes = std::move(hes);
  r.lts = lts;
  const Hes& h = r.hes;

  RunReport& rep = r.report;
  rep.hes_size = h.ast_size();
  rep.lts_states = lts.num_states();
  rep.num_eqs = static_cast<int>(h.size());
  rep.order = h.order;
  rep.alternations = h.alternations();

  if (opts.naive_oracle) {
    t = Clock::now();
    r.verdict = check_naive(lts, h);
    rep.solve_ms = since(t);
  } else {
    t = Clock::now();
    r.flow = compute_flow(h);
    rep.flow_ms = since(t);

    t = Clock::now();
    r.saturation = saturate(lts, h, *r.flow, opts.saturation);
    rep.sat_ms = since(t);
    rep.gamma_size = r.saturation->gamma.size();
    rep.iterations = r.saturation->iterations;

    t = Clock::now();
    r.game = build_subgame(lts, h, *r.saturation);
    if (opts.priority_override) apply_priorities(*r.game, h, opts.priority_override(h));
    rep.game_ms = since(t);
    rep.game_positions = r.game->arena.size();
    rep.game_edges = r.game->arena.num_edges();

    t = Clock::now();
    r.solution = solve_zielonka(r.game->arena);
    rep.solve_ms = since(t);
    r.verdict = r.solution->winner_at(r.game->initial()) == 0 ? Verdict::Valid : Verdict::Invalid;
  }
  rep.verdict = r.verdict;
  rep.total_ms = since(t0);
  return r;
}

CheckResult check_text(const std::string& hes_text, const std::string& lts_text, const CheckOptions& opts) {
  auto t0 = Clock::now();
  Hes hes = parse_hes(hes_text);
  Lts lts = parse_lts(lts_text);
  double parse_ms = since(t0);
  CheckResult r = check(lts, std::move(hes), opts);
  r.report.parse_ms = parse_ms;
  r.report.total_ms += parse_ms;
  return r;
}

}  // namespace hflmc
