#include "hflmc/generate.hpp"

#include <cmath>
#include <vector>

#include "hflmc/kinds.hpp"
#include "hflmc/parser.hpp"

namespace hflmc {
namespace {

struct Head {
  std::string name;
  Kind kind;
};

class Gen {
 public:
  Gen(std::mt19937_64& rng, const GenOptions& opts) : rng_(rng), opts_(opts) {}

  std::string hes() {
    int n = opts_.max_order >= 1 && chance(0.85) ? uniform(2, opts_.max_equations) : uniform(1, opts_.max_equations);
    std::vector<std::vector<Kind>> params(n);
    bool has_oo = false;
    for (int j = 1; j < n; ++j) {
      int arity = opts_.max_order >= 1 && chance(0.8) ? uniform(1, opts_.max_arity) : 0;
      params[j].assign(arity, Kind::prop());
      if (arity == 1) has_oo = true;
    }
    if (opts_.max_order >= 2 && has_oo) {
      for (int j = 1; j < n; ++j)
        for (auto& k : params[j])
          if (chance(0.5)) k = Kind::arrow(Kind::prop(), Kind::prop());
    }
    // Keep at least one equation of kind o -> o with only o parameters so
    // that higher-order parameters always have something to receive.
    bool provider = false;
    for (int j = 1; j < n; ++j)
      if (params[j].size() == 1 && params[j][0].is_prop()) provider = true;
    if (!provider)
      for (int j = 1; j < n; ++j)
        for (auto& k : params[j]) k = Kind::prop();

    for (int j = 0; j < n; ++j) eqs_.push_back(Head{name(j), Kind::arrows(params[j])});

    std::string out;
    for (int j = 0; j < n; ++j) {
      scope_.clear();
      out += eqs_[j].name + (chance(0.5) ? " =v " : " =m ");
      for (std::size_t i = 0; i < params[j].size(); ++i) {
        std::string x = "X" + std::to_string(j) + "_" + std::to_string(i);
        scope_.push_back(Head{x, params[j][i]});
        out += "\\" + x + "^" + kind_text(params[j][i]) + ". ";
      }
      out += gen(Kind::prop(), opts_.max_depth) + ";\n";
    }
    return out;
  }

 private:
  static std::string name(int j) { return j == 0 ? "S" : "F" + std::to_string(j); }

  static std::string kind_text(const Kind& k) { return k.is_arrow() ? "(" + k.str() + ")" : "o"; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string action() { return "a" + std::to_string(uniform(0, opts_.num_actions - 1)); }

  // Heads that reach `target` after some number of arguments.
  std::vector<std::pair<Head, int>> heads_for(const Kind& target) {
    std::vector<std::pair<Head, int>> out;
    auto consider = [&](const Head& h) {
      int ar = h.kind.arity();
      for (int k = 0; k <= ar; ++k)
        if (h.kind.drop(k) == target) out.emplace_back(h, k);
    };
    for (const auto& h : eqs_) consider(h);
    for (const auto& h : scope_) consider(h);
    return out;
  }

  std::string application(const Head& h, int nargs, int depth) {
    std::string s = h.name;
    auto args = h.kind.args();
    for (int i = 0; i < nargs; ++i) s += " (" + gen(args[i], depth - 1) + ")";
    return nargs ? "(" + s + ")" : s;
  }

  // Below depth 0 only heads without arguments are used, if there are any.
  std::string head(const Kind& kind, int depth) {
    auto hs = heads_for(kind);
    if (depth <= 0) {
      std::vector<std::pair<Head, int>> bare;
      for (const auto& h : hs)
        if (h.second == 0) bare.push_back(h);
      if (!bare.empty()) hs = std::move(bare);
    }
    auto [h, k] = hs[uniform(0, static_cast<int>(hs.size()) - 1)];
    return application(h, k, depth);
  }

  std::string gen(const Kind& kind, int depth) {
    if (kind.is_arrow()) return head(kind, depth);
    int choice = depth <= 0 ? uniform(0, 2) : uniform(0, 8);
    switch (choice) {
      case 0:
        return chance(0.5) ? "true" : "false";
      case 1:
      case 2:
      case 3:
        return head(kind, depth);
      case 4:
        return "(" + gen(kind, depth - 1) + " \\/ " + gen(kind, depth - 1) + ")";
      case 5:
        return "(" + gen(kind, depth - 1) + " /\\ " + gen(kind, depth - 1) + ")";
      case 6:
      case 7:
        return "<" + action() + "> " + gen(kind, depth - 1);
      default:
        return "[" + action() + "] " + gen(kind, depth - 1);
    }
  }

  std::mt19937_64& rng_;
  const GenOptions& opts_;
  std::vector<Head> eqs_;
  std::vector<Head> scope_;
};

}  // namespace

Lts generate_lts(std::mt19937_64& rng, int states, int actions, double density) {
  std::string text = "initial q0\n";
  std::bernoulli_distribution edge(density);
  for (int p = 0; p < states; ++p)
    for (int a = 0; a < actions; ++a)
      for (int q = 0; q < states; ++q)
        if (edge(rng))
          text += "q" + std::to_string(p) + " a" + std::to_string(a) + " q" + std::to_string(q) + "\n";
  // States without transitions cannot be written down, so they are dropped.
  return parse_lts(text);
}

double oracle_table_size(const Hes& hes, int states) {
  // Monotone Boolean functions of n variables.
  static const double kMonotone[] = {2, 3, 6, 20, 168, 7581};
  const double prop = std::ldexp(1.0, states);
  const double fun = states < 6 ? std::pow(kMonotone[states], states) : HUGE_VAL;
  double worst = 1;
  for (const auto& eq : hes.equations) {
    double n = 1;
    for (const auto& p : eq.params) n *= p.kind.is_prop() ? prop : fun;
    worst = std::max(worst, n);
  }
  return worst;
}

Instance generate_instance(std::mt19937_64& rng, const GenOptions& opts) {
  Instance inst;
  int states = std::uniform_int_distribution<int>(1, std::max(1, opts.max_states))(rng);
  inst.lts = generate_lts(rng, states, opts.num_actions, opts.edge_density);
  inst.lts_text = to_string(inst.lts);
  do {
    inst.hes_text = Gen(rng, opts).hes();
    inst.hes = infer_kinds(parse_hes(inst.hes_text));
  } while (opts.max_oracle_table > 0 && oracle_table_size(inst.hes, inst.lts.num_states()) > opts.max_oracle_table);
  return inst;
}

}  // namespace hflmc
