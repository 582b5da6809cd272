#include "hflmc/parity.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace hflmc {

int ParityGame::add_vertex(int own, int prio, std::string lab) {
  owner.push_back(own);
  priority.push_back(prio);
  succ.emplace_back();
  label.push_back(std::move(lab));
  return size() - 1;
}

std::size_t ParityGame::num_edges() const {
  std::size_t n = 0;
  for (const auto& s : succ) n += s.size();
  return n;
}

namespace {

// Copy of `g` in which every stuck position moves to a sink won by the
// opponent. Sinks are the last two vertices: n (won by 0), n+1 (won by 1).
ParityGame with_sinks(const ParityGame& g) {
  ParityGame h = g;
  int sink0 = h.add_vertex(0, 0, "sink0");
  int sink1 = h.add_vertex(0, 1, "sink1");
  h.add_edge(sink0, sink0);
  h.add_edge(sink1, sink1);
  for (int v = 0; v < g.size(); ++v)
    if (h.succ[v].empty()) h.add_edge(v, h.owner[v] == 0 ? sink1 : sink0);
  return h;
}

using Set = std::vector<char>;

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g), pred_(g.size()) {
    for (int v = 0; v < g.size(); ++v)
      for (int w : g.succ[v]) pred_[w].push_back(v);
  }

  struct Result {
    Set win[2];
  };

  std::vector<int> strategy;

  Result solve(const Set& arena) {
    const int n = g_.size();
    Result r;
    r.win[0].assign(n, 0);
    r.win[1].assign(n, 0);
    int d = -1;
    for (int v = 0; v < n; ++v)
      if (arena[v]) d = std::max(d, g_.priority[v]);
    if (d < 0) return r;
    const int i = d % 2;

    Set top(n, 0);
    for (int v = 0; v < n; ++v)
      if (arena[v] && g_.priority[v] == d) top[v] = 1;
    Set a = attractor(arena, top, i);

    Set rest = minus(arena, a);
    Result sub = solve(rest);
    if (none(sub.win[1 - i])) {
      r.win[i] = arena;
      // Top positions owned by i may move anywhere inside the arena.
      for (int v = 0; v < n; ++v)
        if (top[v] && g_.owner[v] == i)
          for (int w : g_.succ[v])
            if (arena[w]) {
              strategy[v] = w;
              break;
            }
      return r;
    }
    Set b = attractor(arena, sub.win[1 - i], 1 - i);
    Result sub2 = solve(minus(arena, b));
    r.win[i] = sub2.win[i];
    r.win[1 - i] = unite(sub2.win[1 - i], b);
    return r;
  }

 private:
  // Attractor of `target` for player p inside `arena`; records attracting
  // moves of p in `strategy` for the newly added positions.
  Set attractor(const Set& arena, const Set& target, int p) {
    const int n = g_.size();
    Set in = target;
    std::vector<int> count(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
      if (!arena[v]) continue;
      for (int w : g_.succ[v])
        if (arena[w]) ++count[v];
      if (in[v]) queue.push_back(v);
    }
    while (!queue.empty()) {
      int w = queue.back();
      queue.pop_back();
      for (int v : pred_[w]) {
        if (!arena[v] || in[v]) continue;
        if (g_.owner[v] == p) {
          in[v] = 1;
          strategy[v] = w;
          queue.push_back(v);
        } else if (--count[v] == 0) {
          in[v] = 1;
          queue.push_back(v);
        }
      }
    }
    return in;
  }

  static Set minus(const Set& a, const Set& b) {
    Set out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && !b[i];
    return out;
  }
  static Set unite(const Set& a, const Set& b) {
    Set out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
    return out;
  }
  static bool none(const Set& a) { return std::none_of(a.begin(), a.end(), [](char c) { return c; }); }

  const ParityGame& g_;
  std::vector<std::vector<int>> pred_;
};

}  // namespace

ParitySolution solve_zielonka(const ParityGame& game) {
  ParityGame h = with_sinks(game);
  Zielonka z(h);
  z.strategy.assign(h.size(), -1);
  auto res = z.solve(Set(h.size(), 1));

  ParitySolution sol;
  sol.winner.assign(game.size(), 0);
  sol.strategy.assign(game.size(), -1);
  for (int v = 0; v < game.size(); ++v) {
    sol.winner[v] = res.win[1][v] ? 1 : 0;
    if (sol.winner[v] != game.owner[v]) continue;
    int w = z.strategy[v];
    sol.strategy[v] = w >= 0 && w < game.size() ? w : -1;
  }
  return sol;
}

std::vector<int> solve_spm(const ParityGame& game) {
  ParityGame h = with_sinks(game);
  const int n = h.size();
  int maxp = 0;
  for (int p : h.priority) maxp = std::max(maxp, p);
  if (maxp % 2) ++maxp;
  // Max-parity to min-parity with player 0 even: p ↦ maxp - p.
  std::vector<int> pr(n);
  for (int v = 0; v < n; ++v) pr[v] = maxp - h.priority[v];
  const int d = maxp + 1;
  std::vector<int> bound(d, 0);
  for (int v = 0; v < n; ++v)
    if (pr[v] % 2) ++bound[pr[v]];

  using Measure = std::vector<int>;  // empty = ⊤
  std::vector<Measure> rho(n, Measure(d, 0));
  const Measure top;

  // Least m with m ≥ ρ(w) on indices ≤ p (strictly when p is odd).
  auto prog = [&](const Measure& m, int p) -> Measure {
    if (m.empty()) return top;
    Measure out(d, 0);
    for (int i = 0; i <= p; ++i) out[i] = i % 2 ? m[i] : 0;
    if (p % 2 == 0) return out;
    for (int i = p; i >= 0; --i) {
      if (i % 2 == 0) continue;
      if (out[i] < bound[i]) {
        ++out[i];
        return out;
      }
      out[i] = 0;
    }
    return top;
  };
  // Lexicographic comparison on indices ≤ p; ⊤ is largest.
  auto less = [&](const Measure& a, const Measure& b, int p) {
    if (a.empty()) return false;
    if (b.empty()) return true;
    for (int i = 0; i <= p; ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (rho[v].empty()) continue;
      Measure best;
      bool first = true;
      for (int w : h.succ[v]) {
        Measure m = prog(rho[w], pr[v]);
        if (first || (h.owner[v] == 0 ? less(m, best, d - 1) : less(best, m, d - 1))) best = m;
        first = false;
      }
      if (less(rho[v], best, d - 1)) {
        rho[v] = best;
        changed = true;
      }
    }
  }
  std::vector<int> win(game.size());
  for (int v = 0; v < game.size(); ++v) win[v] = rho[v].empty() ? 1 : 0;
  return win;
}

bool check_strategy(const ParityGame& game, const std::vector<int>& strategy) {
  const int n = game.size();
  auto next = [&](int v) -> std::vector<int> {
    if (game.owner[v] == 0) {
      int w = v < static_cast<int>(strategy.size()) ? strategy[v] : -1;
      if (w < 0) return {};
      return {w};
    }
    return game.succ[v];
  };
  std::vector<char> reach(n, 0);
  std::vector<int> stack{game.initial};
  reach[game.initial] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (game.owner[v] == 0) {
      int w = v < static_cast<int>(strategy.size()) ? strategy[v] : -1;
      if (w < 0 || std::find(game.succ[v].begin(), game.succ[v].end(), w) == game.succ[v].end()) return false;
    }
    for (int w : next(v))
      if (!reach[w]) {
        reach[w] = 1;
        stack.push_back(w);
      }
  }

  // For each odd p: no cycle among reachable vertices of priority ≤ p
  // that passes through a vertex of priority p.
  std::set<int> odd;
  for (int v = 0; v < n; ++v)
    if (reach[v] && game.priority[v] % 2) odd.insert(game.priority[v]);
  for (int p : odd) {
    std::vector<char> in(n, 0);
    for (int v = 0; v < n; ++v) in[v] = reach[v] && game.priority[v] <= p;
    // Tarjan SCC on the restricted graph.
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on(n, 0);
    std::vector<int> st;
    int counter = 0, comps = 0;
    std::function<void(int)> dfs = [&](int v) {
      index[v] = low[v] = counter++;
      st.push_back(v);
      on[v] = 1;
      for (int w : next(v)) {
        if (!in[w]) continue;
        if (index[w] < 0) {
          dfs(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        int w;
        do {
          w = st.back();
          st.pop_back();
          on[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
    };
    for (int v = 0; v < n; ++v)
      if (in[v] && index[v] < 0) dfs(v);
    for (int v = 0; v < n; ++v) {
      if (!in[v] || game.priority[v] != p) continue;
      for (int w : next(v))
        if (in[w] && comp[w] == comp[v]) return false;
    }
  }
  return true;
}

std::string to_pgsolver(const ParityGame& game) {
  std::ostringstream os;
  os << "parity " << (game.size() - 1) << ";\n";
  for (int v = 0; v < game.size(); ++v) {
    os << v << ' ' << game.priority[v] << ' ' << game.owner[v] << ' ';
    for (std::size_t i = 0; i < game.succ[v].size(); ++i) os << (i ? "," : "") << game.succ[v][i];
    std::string lab = game.label[v];
    std::replace(lab.begin(), lab.end(), '"', '\'');
    os << " \"" << lab << "\";\n";
  }
  return os.str();
}

}  // namespace hflmc
