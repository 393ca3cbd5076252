#include "mbgame/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>

#include "mbgame/rng.hpp"

namespace mbgame {

MinimaxSolver::MinimaxSolver(const Hypergraph& f, Bias bias, std::size_t node_cap, std::size_t element_cap)
    : bias_(bias), node_cap_(node_cap) {
  if (element_cap > 24) element_cap = 24;
  if (f.board_size > element_cap)
    throw GameError("minimax board has " + std::to_string(f.board_size) + " elements, cap is " + std::to_string(element_cap));
  all_ = f.board_size == 32 ? ~0u : ((1u << f.board_size) - 1u);
  for (const auto& s : f.sets) {
    std::uint32_t m = 0;
    for (ElementId e : s) m |= 1u << e;
    sets_.push_back(m);
  }
}

std::pair<std::uint32_t, std::uint32_t> MinimaxSolver::masks(const GameState& s) const {
  std::uint32_t mk = 0, br = 0;
  for (std::size_t e = 0; e < s.size(); ++e) {
    const Owner o = s.owner(static_cast<ElementId>(e));
    if (o == Owner::Maker) mk |= 1u << e;
    if (o == Owner::Breaker) br |= 1u << e;
  }
  return {mk, br};
}

bool MinimaxSolver::maker_owns_a_set(const GameState& state) const {
  const auto [mk, br] = masks(state);
  for (auto s : sets_)
    if ((s & ~mk) == 0) return true;
  return false;
}

template <typename Visit>
void MinimaxSolver::for_each_turn(std::uint32_t mk, std::uint32_t br, Side side, Visit&& visit) const {
  const std::uint32_t free = all_ & ~(mk | br);
  std::uint32_t live = 0;
  for (auto s : sets_)
    if ((s & br) == 0) live |= s;
  const std::uint32_t relevant = free & live;
  const std::uint32_t dead = free & ~live;
  const int t = std::min(bias_.of(side), std::popcount(free));
  std::vector<int> rel;
  for (int b = 0; b < 32; ++b)
    if (relevant >> b & 1u) rel.push_back(b);
  std::uint32_t dead_prefix = 0;
  std::uint32_t dead_left = dead;
  for (int j = 0; j <= std::min(t, std::popcount(dead)); ++j) {
    if (j > 0) {
      const std::uint32_t low = dead_left & (~dead_left + 1u);
      dead_prefix |= low;
      dead_left &= ~low;
    }
    const int r = t - j;
    if (r > static_cast<int>(rel.size())) continue;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      std::uint32_t m = dead_prefix;
      for (int i : idx) m |= 1u << rel[static_cast<std::size_t>(i)];
      if (visit(m)) return;
      int i = r - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(rel.size()) - r + i) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < r; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
}

int MinimaxSolver::search(std::uint32_t mk, std::uint32_t br, Side side) {
  bool alive = false;
  for (auto s : sets_) {
    if ((s & ~mk) == 0) return 0;
    if ((s & br) == 0) alive = true;
  }
  if (!alive || (all_ & ~(mk | br)) == 0) return kInfinite;
  const std::uint64_t key =
      std::uint64_t{mk} | (std::uint64_t{br} << 24) | (std::uint64_t{side == Side::Breaker ? 1u : 0u} << 48);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (++nodes_ > node_cap_) throw CapHit{};

  int best = side == Side::Maker ? kInfinite : -1;
  for_each_turn(mk, br, side, [&](std::uint32_t m) {
    if (side == Side::Maker) {
      const std::uint32_t nm = mk | m;
      bool won = false;
      for (auto s : sets_)
        if ((s & ~nm) == 0) won = true;
      const int sub = won ? 0 : search(nm, br, Side::Breaker);
      const int v = sub >= kInfinite ? kInfinite : sub + 1;
      best = std::min(best, v);
      return best == 1;
    }
    best = std::max(best, search(mk, br | m, Side::Maker));
    return best >= kInfinite;
  });
  memo_.emplace(key, best);
  return best;
}

std::optional<int> MinimaxSolver::value(const GameState& state, Side to_move) {
  const auto [mk, br] = masks(state);
  try {
    return search(mk, br, to_move);
  } catch (const CapHit&) {
    return std::nullopt;
  }
}

std::optional<std::vector<ElementId>> MinimaxSolver::best_move(const GameState& state, Side to_move) {
  const auto [mk, br] = masks(state);
  if ((all_ & ~(mk | br)) == 0) return std::nullopt;
  std::uint32_t best_mask = 0;
  bool have = false;
  int best = to_move == Side::Maker ? kInfinite + 1 : -1;
  try {
    for_each_turn(mk, br, to_move, [&](std::uint32_t m) {
      int v;
      if (to_move == Side::Maker) {
        const std::uint32_t nm = mk | m;
        bool won = false;
        for (auto s : sets_)
          if ((s & ~nm) == 0) won = true;
        const int sub = won ? 0 : search(nm, br, Side::Breaker);
        v = sub >= kInfinite ? kInfinite : sub + 1;
        if (v < best) best = v, best_mask = m, have = true;
        return best == 1;
      }
      v = search(mk, br | m, Side::Maker);
      if (v > best) best = v, best_mask = m, have = true;
      return best >= kInfinite;
    });
  } catch (const CapHit&) {
    return std::nullopt;
  }
  if (!have) return std::nullopt;
  std::vector<ElementId> out;
  for (int b = 0; b < 32; ++b)
    if (best_mask >> b & 1u) out.push_back(b);
  return out;
}

SolveResult MinimaxSolver::solve(const GameState& state, Side first) {
  SolveResult r;
  auto v = value(state, first);
  r.nodes = nodes_;
  if (!v) return r;
  if (*v >= kInfinite) {
    r.status = SolveResult::Status::BreakerWin;
  } else {
    r.status = SolveResult::Status::MakerWin;
    r.maker_turns = *v;
  }
  return r;
}

SolveResult minimax_solve(const Hypergraph& f, Bias bias, Side first, std::size_t node_cap) {
  MinimaxSolver s(f, bias, node_cap);
  return s.solve(GameState::generic(f.board_size), first);
}

MinimaxStrategy::MinimaxStrategy(Side side, std::shared_ptr<const Hypergraph> f, Bias bias, std::size_t node_cap)
    : side_(side), f_(std::move(f)), bias_(bias), solver_(*f_, bias, node_cap) {}

TurnPlan MinimaxStrategy::play(const GameState& state, const TurnContext&) {
  if (auto m = solver_.best_move(state, side_)) return TurnPlan{*m, {}, std::nullopt};
  TurnPlan plan;
  for (std::size_t e = 0; e < state.size() && static_cast<int>(plan.claims.size()) < bias_.of(side_); ++e)
    if (state.is_free(static_cast<ElementId>(e))) plan.claims.push_back(static_cast<ElementId>(e));
  plan.note = "minimax-cap";
  return plan;
}

bool MinimaxStrategy::succeeded(const GameState& state) const { return solver_.maker_owns_a_set(state); }

bool verify_tree_copy(const TreeSpec& t, const AdjList& g, const std::vector<Vertex>& f) {
  if (static_cast<int>(f.size()) != t.n) throw GameError("embedding covers " + std::to_string(f.size()) + " of " + std::to_string(t.n) + " tree vertices");
  std::vector<char> used(g.size(), 0);
  for (Vertex x : f) {
    if (x < 0) throw GameError("embedding is partial");
    if (static_cast<std::size_t>(x) >= g.size() || used[static_cast<std::size_t>(x)]) return false;
    used[static_cast<std::size_t>(x)] = 1;
  }
  for (auto [u, v] : t.edges()) {
    const auto& nb = g[static_cast<std::size_t>(f[static_cast<std::size_t>(u)])];
    if (std::find(nb.begin(), nb.end(), f[static_cast<std::size_t>(v)]) == nb.end()) return false;
  }
  return true;
}

bool verify_tree_copy(const TreeSpec& t, const GameState& state, const std::vector<Vertex>& f) {
  return verify_tree_copy(t, maker_graph(state), f);
}

std::vector<int> maximum_matching(const std::vector<std::vector<int>>& a_adj, int r_b) {
  const int ra = static_cast<int>(a_adj.size());
  std::vector<int> match_a(static_cast<std::size_t>(ra), -1), match_b(static_cast<std::size_t>(r_b), -1);
  std::vector<int> seen(static_cast<std::size_t>(r_b), -1);
  std::function<bool(int, int)> augment = [&](int a, int stamp) {
    for (int b : a_adj[static_cast<std::size_t>(a)]) {
      if (seen[static_cast<std::size_t>(b)] == stamp) continue;
      seen[static_cast<std::size_t>(b)] = stamp;
      if (match_b[static_cast<std::size_t>(b)] < 0 || augment(match_b[static_cast<std::size_t>(b)], stamp)) {
        match_a[static_cast<std::size_t>(a)] = b;
        match_b[static_cast<std::size_t>(b)] = a;
        return true;
      }
    }
    return false;
  };
  for (int a = 0; a < ra; ++a) augment(a, a);
  return match_a;
}

std::optional<std::vector<int>> perfect_matching_oracle(const std::vector<std::vector<int>>& a_adj, int r) {
  if (static_cast<int>(a_adj.size()) != r) return std::nullopt;
  auto m = maximum_matching(a_adj, r);
  for (int b : m)
    if (b < 0) return std::nullopt;
  return m;
}

namespace {

std::vector<std::uint32_t> to_masks(const AdjList& g) {
  std::vector<std::uint32_t> m(g.size(), 0);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (Vertex w : g[v]) m[v] |= 1u << w;
  return m;
}

// reach[mask] = endpoints of Hamilton paths of G[mask] that start at s.
std::vector<std::uint32_t> path_table(const std::vector<std::uint32_t>& adj, int s) {
  const int n = static_cast<int>(adj.size());
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  reach[std::size_t{1} << s] = 1u << s;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::uint32_t ends = reach[mask];
    if (!ends || !(mask >> s & 1u)) continue;
    while (ends) {
      const int v = std::countr_zero(ends);
      ends &= ends - 1;
      std::uint32_t nxt = adj[static_cast<std::size_t>(v)] & ~mask;
      while (nxt) {
        const int w = std::countr_zero(nxt);
        nxt &= nxt - 1;
        reach[mask | (1u << w)] |= 1u << w;
      }
    }
  }
  return reach;
}

}  // namespace

std::optional<std::vector<Vertex>> find_hamilton_path(const AdjList& g, Vertex u, Vertex w) {
  const int n = static_cast<int>(g.size());
  if (n > 24) throw GameError("Hamilton path search is limited to 24 vertices");
  if (n == 1) return u == w ? std::optional<std::vector<Vertex>>{{u}} : std::nullopt;
  if (u == w) return std::nullopt;
  const auto adj = to_masks(g);
  const auto reach = path_table(adj, u);
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  if (!(reach[full] >> w & 1u)) return std::nullopt;
  std::vector<Vertex> path{w};
  std::uint32_t mask = full;
  Vertex cur = w;
  while (cur != u) {
    const std::uint32_t rest = mask & ~(1u << cur);
    std::uint32_t cands = reach[rest] & adj[static_cast<std::size_t>(cur)];
    const Vertex prev = std::countr_zero(cands);
    path.push_back(prev);
    mask = rest;
    cur = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool hamilton_path_between(const AdjList& g, Vertex u, Vertex w) { return find_hamilton_path(g, u, w).has_value(); }

std::optional<bool> hamilton_connected_oracle(const AdjList& g, int vertex_cap) {
  const int n = static_cast<int>(g.size());
  if (n > vertex_cap || n > 24) return std::nullopt;
  if (n <= 1) return true;
  const auto adj = to_masks(g);
  const std::uint32_t full = (1u << n) - 1u;
  for (int s = 0; s < n; ++s) {
    const auto reach = path_table(adj, s);
    const std::uint32_t others = full & ~(1u << s);
    if ((reach[full] & others) != others) return false;
  }
  return true;
}

namespace {

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return w[i / 64] >> (i % 64) & 1u; }
  void operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  std::size_t count_outside(const Bits& s) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w.size(); ++i) c += static_cast<std::size_t>(std::popcount(w[i] & ~s.w[i]));
    return c;
  }
};

double binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  return std::exp(std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
                  std::lgamma(static_cast<double>(n - k) + 1));
}

// Calls f on every k-subset of {0..n-1}; stops when f returns false.
template <typename F>
bool for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

namespace {

HamConReport hamcon_scan(const AdjList& g, std::uint64_t enum_cap, std::uint64_t seed, std::size_t samples,
                         std::size_t limit, std::vector<HamConWitness>* found) {
  HamConReport r;
  const std::size_t k = g.size();
  if (k <= 1) {
    r.holds = r.expansion_holds = r.joined_holds = true;
    r.regime = "trivial";
    return r;
  }
  const double logk = std::log(static_cast<double>(k));
  r.d = std::log(logk);
  r.regime = r.d < 1.0 ? "degenerate" : "literal";
  const double ratio = static_cast<double>(k) / logk;
  r.small_max = std::min(k, static_cast<std::size_t>(std::floor(ratio + 1e-12)));
  r.big_size = static_cast<std::size_t>(std::ceil(ratio - 1e-12));

  std::vector<Bits> nb(k, Bits(k));
  for (std::size_t v = 0; v < k; ++v)
    for (Vertex w : g[v]) nb[v].set(static_cast<std::size_t>(w));
  CounterRng rng(seed, 0x4A3C);

  auto closed = [&](const std::vector<std::size_t>& s, std::size_t& outside_nbrs) {
    Bits set(k), nbr(k);
    for (std::size_t v : s) set.set(v), nbr |= nb[v];
    outside_nbrs = nbr.count_outside(set);
    nbr |= set;
    return nbr;
  };
  auto rest_of = [&](const Bits& cl) {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < k; ++v)
      if (!cl.test(v)) out.push_back(v);
    return out;
  };
  auto random_subset = [&](std::size_t size) {
    std::vector<std::size_t> all(k);
    for (std::size_t i = 0; i < k; ++i) all[i] = i;
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + rng.below(k - i)]);
    all.resize(size);
    std::sort(all.begin(), all.end());
    return all;
  };
  // false stops the scan
  auto report = [&](bool expansion, const std::vector<std::size_t>& set, const Bits& cl) {
    if (expansion) r.expansion_holds = false;
    else r.joined_holds = false;
    if (!found) return false;
    found->push_back({expansion, set, rest_of(cl)});
    return found->size() < limit;
  };

  bool go = true;
  r.expansion_holds = true;
  for (std::size_t s = 1; s <= r.small_max && go; ++s) {
    auto visit = [&](const std::vector<std::size_t>& set) {
      std::size_t out = 0;
      Bits cl = closed(set, out);
      if (static_cast<double>(out) >= r.d * static_cast<double>(s)) return true;
      return go = report(true, set, cl);
    };
    if (binom(k, s) <= static_cast<double>(enum_cap)) {
      for_each_subset(k, s, visit);
    } else {
      r.exact = false;
      const std::size_t per = std::max<std::size_t>(1, samples / r.small_max);
      for (std::size_t i = 0; i < per && go; ++i, ++r.samples) visit(random_subset(s));
    }
  }

  if (!found) go = true;
  r.joined_holds = true;
  if (2 * r.big_size <= k && go) {
    // an edge joins every two disjoint t-sets iff every t-set A leaves fewer
    // than t vertices outside A ∪ N(A)
    const std::size_t t = r.big_size;
    auto visit = [&](const std::vector<std::size_t>& a) {
      std::size_t out = 0;
      Bits cl = closed(a, out);
      if (k - t - out < t) return true;
      return go = report(false, a, cl);
    };
    if (binom(k, t) <= static_cast<double>(enum_cap)) {
      for_each_subset(k, t, visit);
    } else {
      r.exact = false;
      for (std::size_t i = 0; i < samples && go; ++i, ++r.samples) visit(random_subset(t));
    }
  }
  r.holds = r.expansion_holds && r.joined_holds;
  return r;
}

}  // namespace

HamConReport hamcon_condition_check(const AdjList& g, std::uint64_t enum_cap, std::uint64_t seed, std::size_t samples) {
  return hamcon_scan(g, enum_cap, seed, samples, 0, nullptr);
}

std::vector<HamConWitness> hamcon_violations(const AdjList& g, std::size_t limit, std::uint64_t enum_cap,
                                             std::uint64_t seed, std::size_t samples) {
  std::vector<HamConWitness> out;
  if (limit > 0) hamcon_scan(g, enum_cap, seed, samples, limit, &out);
  return out;
}

AdjList graph_of(const GameState& state, Owner who) {
  const GraphBoard* g = state.graph();
  if (!g) throw GameError("graph view needs an edge board");
  AdjList out(static_cast<std::size_t>(g->vertex_count()));
  for (std::size_t e = 0; e < state.size(); ++e) {
    const Owner o = state.owner(static_cast<ElementId>(e));
    if (o != who) continue;
    auto [u, v] = g->endpoints(static_cast<ElementId>(e));
    out[static_cast<std::size_t>(u)].push_back(v);
    out[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : out) std::sort(a.begin(), a.end());
  return out;
}

AdjList maker_graph(const GameState& state) { return graph_of(state, Owner::Maker); }

AdjList available_graph(const GameState& state) {
  const GraphBoard* g = state.graph();
  if (!g) throw GameError("graph view needs an edge board");
  AdjList out(static_cast<std::size_t>(g->vertex_count()));
  for (std::size_t e = 0; e < state.size(); ++e) {
    if (state.owner(static_cast<ElementId>(e)) == Owner::Breaker) continue;
    auto [u, v] = g->endpoints(static_cast<ElementId>(e));
    out[static_cast<std::size_t>(u)].push_back(v);
    out[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : out) std::sort(a.begin(), a.end());
  return out;
}

bool triangle_invariant_check(const AdjList& m) {
  const std::size_t n = m.size();
  for (std::size_t u = 0; u < n; ++u)
    for (Vertex v : m[u]) {
      if (static_cast<std::size_t>(v) <= u) continue;
      for (Vertex w : m[static_cast<std::size_t>(v)]) {
        if (w <= v) continue;
        const auto& nu = m[u];
        if (!std::binary_search(nu.begin(), nu.end(), w)) continue;
        if (m[u].size() < 3 && m[static_cast<std::size_t>(v)].size() < 3 && m[static_cast<std::size_t>(w)].size() < 3)
          return false;
      }
    }
  return true;
}

bool triangle_invariant_check(const GameState& state) { return triangle_invariant_check(maker_graph(state)); }

std::optional<std::vector<std::array<Vertex, 3>>> find_triangle_factor(const AdjList& g) {
  const std::size_t n = g.size();
  if (n % 3 != 0) return std::nullopt;
  std::vector<char> used(n, 0);
  std::vector<std::array<Vertex, 3>> out;
  auto adjacent = [&](Vertex a, Vertex b) {
    const auto& na = g[static_cast<std::size_t>(a)];
    return std::binary_search(na.begin(), na.end(), b);
  };
  std::function<bool()> rec = [&]() {
    std::size_t v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) return true;
    for (std::size_t u = v; u < n; ++u) {
      if (used[u]) continue;
      int free_nb = 0;
      for (Vertex w : g[u])
        if (!used[static_cast<std::size_t>(w)]) ++free_nb;
      if (free_nb < 2) return false;
    }
    used[v] = 1;
    const auto& nv = g[v];
    for (std::size_t i = 0; i < nv.size(); ++i) {
      const Vertex a = nv[i];
      if (used[static_cast<std::size_t>(a)]) continue;
      for (std::size_t j = i + 1; j < nv.size(); ++j) {
        const Vertex b = nv[j];
        if (used[static_cast<std::size_t>(b)] || !adjacent(a, b)) continue;
        used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 1;
        out.push_back({static_cast<Vertex>(v), a, b});
        if (rec()) return true;
        out.pop_back();
        used[static_cast<std::size_t>(a)] = used[static_cast<std::size_t>(b)] = 0;
      }
    }
    used[v] = 0;
    return false;
  };
  if (rec()) return out;
  return std::nullopt;
}

}  // namespace mbgame
