#include "mbgame/subgames.hpp"

#include <algorithm>
#include <deque>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

namespace mbgame {

namespace {

// Calls f on every k-subset of {0..n-1} (ascending); stops when f returns false.
template <typename F>
void each_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!f(idx)) return;
    int i = k;
    while (i > 0 && idx[static_cast<std::size_t>(i - 1)] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[static_cast<std::size_t>(i - 1)];
    for (int j = i; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

double choose(double n, double k) {
  if (k < 0 || k > n) return 0;
  return std::round(std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1)));
}

int available_min_degree(const GameState& board);

std::vector<char> adj_matrix(const AdjList& g) {
  const std::size_t n = g.size();
  std::vector<char> m(n * n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex w : g[v]) m[v * n + static_cast<std::size_t>(w)] = 1;
  return m;
}

// Hamilton x..y path made of the segments of a linear forest `owned`, joined
// by edges of `avail`. nullopt when owned is not a linear forest compatible
// with such a path or the greedy joining gets stuck.
std::optional<std::vector<Vertex>> chain_segments(const AdjList& avail, const AdjList& owned, Vertex x, Vertex y) {
  const std::size_t n = owned.size();
  for (std::size_t v = 0; v < n; ++v)
    if (owned[v].size() > 2) return std::nullopt;
  if (owned[static_cast<std::size_t>(x)].size() > 1 || owned[static_cast<std::size_t>(y)].size() > 1) return std::nullopt;
  std::vector<int> seg(n, -1);
  std::vector<std::vector<Vertex>> segs;
  for (std::size_t s = 0; s < n; ++s) {
    if (seg[s] != -1 || owned[s].size() == 2) continue;
    std::vector<Vertex> walk{static_cast<Vertex>(s)};
    seg[s] = static_cast<int>(segs.size());
    Vertex prev = -1, cur = static_cast<Vertex>(s);
    while (true) {
      Vertex next = -1;
      for (Vertex w : owned[static_cast<std::size_t>(cur)])
        if (w != prev) next = w;
      if (next == -1) break;
      walk.push_back(next);
      seg[static_cast<std::size_t>(next)] = static_cast<int>(segs.size());
      prev = cur;
      cur = next;
    }
    segs.push_back(std::move(walk));
  }
  for (std::size_t v = 0; v < n; ++v)
    if (seg[v] == -1) return std::nullopt;  // a cycle
  const int sx = seg[static_cast<std::size_t>(x)], sy = seg[static_cast<std::size_t>(y)];
  auto am = adj_matrix(avail);
  auto adj = [&](Vertex u, Vertex w) { return am[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(w)] != 0; };

  std::vector<Vertex> path = segs[static_cast<std::size_t>(sx)];
  if (path.front() != x) std::reverse(path.begin(), path.end());
  if (sx == sy) {
    if (path.size() == n && path.back() == y) return path;
    return std::nullopt;
  }
  std::vector<char> done(segs.size(), 0);
  done[static_cast<std::size_t>(sx)] = 1;
  std::size_t left = segs.size() - 2;
  while (left > 0) {
    const Vertex e = path.back();
    int best = -1;
    Vertex entry = -1;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (done[i] || static_cast<int>(i) == sy) continue;
      for (Vertex u : {segs[i].front(), segs[i].back()})
        if (adj(e, u) && (entry == -1 || u < entry)) best = static_cast<int>(i), entry = u;
    }
    if (best < 0) return std::nullopt;
    auto s = segs[static_cast<std::size_t>(best)];
    if (s.front() != entry) std::reverse(s.begin(), s.end());
    path.insert(path.end(), s.begin(), s.end());
    done[static_cast<std::size_t>(best)] = 1;
    --left;
  }
  auto s = segs[static_cast<std::size_t>(sy)];
  if (s.back() != y) std::reverse(s.begin(), s.end());
  if (!adj(path.back(), s.front())) return std::nullopt;
  path.insert(path.end(), s.begin(), s.end());
  return path;
}

}  // namespace

// ---- paths -----------------------------------------------------------------

std::optional<std::vector<Vertex>> cheapest_hamilton_path(const AdjList& avail, const AdjList& owned, Vertex x, Vertex y) {
  const std::size_t n = avail.size();
  if (n > 20) throw TooLargeError("cheapest_hamilton_path handles at most 20 vertices");
  if (n == 0 || x < 0 || y < 0 || static_cast<std::size_t>(x) >= n || static_cast<std::size_t>(y) >= n)
    return std::nullopt;
  if (n == 1) return x == y ? std::optional<std::vector<Vertex>>{{x}} : std::nullopt;
  if (x == y) return std::nullopt;
  std::vector<std::uint32_t> nb(n, 0), own(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (Vertex w : avail[v]) nb[v] |= 1u << w;
    for (Vertex w : owned[v]) own[v] |= 1u << w;
  }
  const std::uint32_t full = (1u << n) - 1;
  constexpr std::uint8_t INF = 255;
  std::vector<std::uint8_t> cost((std::size_t{1} << n) * n, INF);
  auto at = [&](std::uint32_t mask, std::size_t v) -> std::uint8_t& { return cost[static_cast<std::size_t>(mask) * n + v]; };
  const std::uint32_t ybit = 1u << y;
  at(1u << x, static_cast<std::size_t>(x)) = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (!(mask >> x & 1u)) continue;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(rest));
      const std::uint8_t c = at(mask, v);
      if (c == INF || v == static_cast<std::size_t>(y)) continue;
      for (std::uint32_t cand = nb[v] & ~mask; cand; cand &= cand - 1) {
        const auto w = static_cast<std::size_t>(std::countr_zero(cand));
        const std::uint32_t next = mask | (1u << w);
        if ((1u << w) == ybit && next != full) continue;
        const auto nc = static_cast<std::uint8_t>(c + ((own[v] >> w & 1u) ? 0 : 1));
        if (nc < at(next, w)) at(next, w) = nc;
      }
    }
  }
  if (at(full, static_cast<std::size_t>(y)) == INF) return std::nullopt;
  std::vector<Vertex> path{y};
  std::uint32_t mask = full;
  auto v = static_cast<std::size_t>(y);
  while (mask != (1u << x)) {
    const std::uint8_t c = at(mask, v);
    const std::uint32_t prev = mask & ~(1u << v);
    bool found = false;
    for (std::uint32_t rest = prev & nb[v]; rest; rest &= rest - 1) {
      const auto u = static_cast<std::size_t>(std::countr_zero(rest));
      const std::uint8_t pc = at(prev, u);
      if (pc != INF && pc + ((own[u] >> v & 1u) ? 0 : 1) == c) {
        path.push_back(static_cast<Vertex>(u));
        mask = prev;
        v = u;
        found = true;
        break;
      }
    }
    if (!found) throw GameError("cheapest_hamilton_path: broken back-pointer");
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::vector<Vertex>> posa_hamilton_path(const AdjList& g, const AdjList& preferred, Vertex x, Vertex y,
                                                      const std::vector<Vertex>& hint, CounterRng& rng,
                                                      std::size_t max_steps) {
  const std::size_t n = g.size();
  if (n == 0 || x < 0 || y < 0 || static_cast<std::size_t>(x) >= n || static_cast<std::size_t>(y) >= n)
    return std::nullopt;
  if (x == y) return n == 1 ? std::optional<std::vector<Vertex>>{{x}} : std::nullopt;
  const auto am = adj_matrix(g), pm = adj_matrix(preferred);
  auto adj = [&](Vertex u, Vertex w) { return am[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(w)] != 0; };
  auto pref = [&](Vertex u, Vertex w) { return pm[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(w)] != 0; };

  std::vector<Vertex> p{x};
  std::vector<int> pos(n, -1);
  pos[static_cast<std::size_t>(x)] = 0;
  if (!hint.empty() && hint.front() == x)
    for (std::size_t i = 1; i < hint.size(); ++i) {
      const Vertex w = hint[i];
      if (w < 0 || static_cast<std::size_t>(w) >= n || w == y || pos[static_cast<std::size_t>(w)] >= 0 ||
          !adj(p.back(), w))
        break;
      pos[static_cast<std::size_t>(w)] = static_cast<int>(p.size());
      p.push_back(w);
    }

  std::vector<Vertex> cand, soft;
  for (std::size_t step = 0; step < max_steps; ++step) {
    const Vertex end = p.back();
    if (p.size() == n - 1 && adj(end, y)) {
      p.push_back(y);
      return p;
    }
    if (p.size() < n - 1) {
      cand.clear();
      soft.clear();
      for (Vertex w : g[static_cast<std::size_t>(end)])
        if (w != y && pos[static_cast<std::size_t>(w)] < 0) (pref(end, w) ? cand : soft).push_back(w);
      if (!cand.empty() || !soft.empty()) {
        const Vertex w = !cand.empty() ? cand.front() : soft[rng.below(soft.size())];
        pos[static_cast<std::size_t>(w)] = static_cast<int>(p.size());
        p.push_back(w);
        continue;
      }
    }
    // rotate: end–u closes a cycle; drop the path edge after u
    cand.clear();
    soft.clear();
    for (Vertex u : g[static_cast<std::size_t>(end)]) {
      const int i = pos[static_cast<std::size_t>(u)];
      if (i < 0 || i + 2 >= static_cast<int>(p.size())) continue;
      (pref(u, p[static_cast<std::size_t>(i + 1)]) ? soft : cand).push_back(u);
    }
    if (cand.empty() && soft.empty()) return std::nullopt;
    const Vertex u = !cand.empty() && (soft.empty() || rng.below(4) != 0) ? cand[rng.below(cand.size())]
                                                                           : soft[rng.below(soft.size())];
    const auto i = static_cast<std::size_t>(pos[static_cast<std::size_t>(u)]);
    std::reverse(p.begin() + static_cast<std::ptrdiff_t>(i + 1), p.end());
    for (std::size_t j = i + 1; j < p.size(); ++j) pos[static_cast<std::size_t>(p[j])] = static_cast<int>(j);
  }
  return std::nullopt;
}

std::optional<std::vector<Vertex>> hamilton_path_in(const AdjList& g, Vertex x, Vertex y, CounterRng& rng) {
  if (g.size() <= 20) return find_hamilton_path(g, x, y);
  return posa_hamilton_path(g, g, x, y, {}, rng);
}

bool is_hamilton_path(const AdjList& g, const std::vector<Vertex>& path, Vertex x, Vertex y) {
  const std::size_t n = g.size();
  if (path.size() != n || n == 0 || path.front() != x || path.back() != y) return false;
  std::vector<char> seen(n, 0);
  for (Vertex v : path) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& nb = g[static_cast<std::size_t>(path[i])];
    if (std::find(nb.begin(), nb.end(), path[i + 1]) == nb.end()) return false;
  }
  return true;
}

// ---- Hall game -------------------------------------------------------------

double hall_set_count(int r) { return choose(2.0 * r, r + 1.0); }

Hypergraph hall_hypergraph(const GameState& board, int r, std::size_t cap) {
  if (!board.graph() || board.vertex_count() != 2 * r) throw GameError("hall game needs a bipartite board on 2r vertices");
  if (r < 1) throw GameError("hall game needs r >= 1");
  if (hall_set_count(r) > static_cast<double>(cap))
    throw TooLargeError("hall family has " + std::to_string(hall_set_count(r)) + " sets, above the cap");
  Hypergraph h;
  h.board_size = board.size();
  for (int t = 1; t <= r; ++t) {
    each_subset(r, t, [&](const std::vector<int>& a) {
      each_subset(r, r - t + 1, [&](const std::vector<int>& b) {
        std::vector<ElementId> set;
        for (int u : a)
          for (int w : b) {
            const ElementId e = board.edge(u, r + w);
            if (e >= 0) set.push_back(e);
          }
        h.sets.push_back(std::move(set));
        return true;
      });
      return true;
    });
  }
  h.normalize(true);
  return h;
}

MatchingMaker::MatchingMaker(const GameState& board, int r, int q, MatchingOptions opt,
                             std::shared_ptr<const Hypergraph> hall)
    : r_(r), q_(q), opt_(opt) {
  if (!board.graph() || board.vertex_count() != 2 * r) throw GameError("matching needs a bipartite board on 2r vertices");
  if (q < 1) throw GameError("matching needs q >= 1");
  const bool fits = hall || hall_set_count(r) <= static_cast<double>(opt.enum_cap);
  if (opt.mode == MatchingOptions::Mode::Exact && !fits)
    throw TooLargeError("exact matching mode needs at most " + std::to_string(opt.enum_cap) + " hall sets");
  min_degree_ = available_min_degree(board);
  if (opt.mode == MatchingOptions::Mode::Heuristic) return;
  if (!fits) {
    fallback_reason_ = "hall family above enum_cap";
    return;
  }
  if (!hall) hall = std::make_shared<const Hypergraph>(hall_hypergraph(board, r, opt.enum_cap));
  const Bias dual(q, 1);
  beck_ = beck_sum(*hall, dual);
  criterion_ = criterion_holds(*hall, dual);
  ledger_ = std::make_unique<PotentialLedger>(hall, dual, Side::Maker);
}

namespace {

std::vector<std::vector<int>> bipartite_maker_adj(const GameState& state, int r) {
  std::vector<std::vector<int>> a(static_cast<std::size_t>(r));
  for (int u = 0; u < r; ++u)
    for (Vertex w : state.neighbors(Side::Maker, u))
      if (w >= r) a[static_cast<std::size_t>(u)].push_back(w - r);
  return a;
}

}  // namespace

std::optional<std::vector<Vertex>> MatchingMaker::matching(const GameState& state) const {
  auto m = perfect_matching_oracle(bipartite_maker_adj(state, r_), r_);
  if (!m) return std::nullopt;
  std::vector<Vertex> out;
  for (int b : *m) out.push_back(r_ + b);
  last_matching_ = out;
  return out;
}

bool MatchingMaker::succeeded(const GameState& state) const { return matching(state).has_value(); }

TurnPlan MatchingMaker::play(const GameState& state, const TurnContext&) {
  if (ledger_) {
    auto picks = potential_breaker_move(*ledger_, state, 1);
    if (!picks.empty()) return TurnPlan::single(picks.front(), "potential");
  }
  const auto& g = *state.graph();
  const int k = 2 * r_;
  std::vector<std::vector<int>> avail(static_cast<std::size_t>(r_));
  std::vector<int> free_deg(static_cast<std::size_t>(k), 0);
  for (int u = 0; u < r_; ++u)
    for (ElementId e : g.incident(u)) {
      if (state.owner(e) == Owner::Breaker) continue;
      auto [x, y] = g.endpoints(e);
      avail[static_cast<std::size_t>(u)].push_back((x == u ? y : x) - r_);
      if (state.is_free(e)) ++free_deg[static_cast<std::size_t>(x)], ++free_deg[static_cast<std::size_t>(y)];
    }
  if (!perfect_matching_oracle(avail, r_)) return TurnPlan::give_up("no perfect matching left in the available graph");

  // maximum Maker matching, then an augmenting path with the fewest free edges
  const auto a_mate = maximum_matching(bipartite_maker_adj(state, r_), r_);
  std::vector<int> mate(static_cast<std::size_t>(k), -1);
  for (int a = 0; a < r_; ++a)
    if (a_mate[static_cast<std::size_t>(a)] >= 0) {
      mate[static_cast<std::size_t>(a)] = r_ + a_mate[static_cast<std::size_t>(a)];
      mate[static_cast<std::size_t>(r_ + a_mate[static_cast<std::size_t>(a)])] = a;
    }
  std::vector<int> order;
  for (int v = 0; v < k; ++v)
    if (mate[static_cast<std::size_t>(v)] < 0) order.push_back(v);
  auto threat = [&](int v) { return std::make_tuple(free_deg[static_cast<std::size_t>(v)], -state.degree(Side::Breaker, v), v); };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return threat(x) < threat(y); });
  for (int v : order) {
    std::vector<int> dist(static_cast<std::size_t>(k), k + 1), via(static_cast<std::size_t>(k), -1);
    std::deque<int> dq{v};
    dist[static_cast<std::size_t>(v)] = 0;
    int end = -1;
    while (!dq.empty() && end < 0) {
      const int x = dq.front();
      dq.pop_front();
      for (ElementId e : g.incident(x)) {
        const Owner o = state.owner(e);
        if (o == Owner::Breaker) continue;
        auto [p, q] = g.endpoints(e);
        const int y = p == x ? q : p;
        if (y == mate[static_cast<std::size_t>(x)] || via[static_cast<std::size_t>(y)] >= 0 || y == v) continue;
        const int d = dist[static_cast<std::size_t>(x)] + (o == Owner::Free ? 1 : 0);
        via[static_cast<std::size_t>(y)] = x;
        dist[static_cast<std::size_t>(y)] = d;
        const int m = mate[static_cast<std::size_t>(y)];
        if (m < 0) {
          if (d > 0) {
            end = y;
            break;
          }
          continue;
        }
        if (dist[static_cast<std::size_t>(m)] > d) {
          dist[static_cast<std::size_t>(m)] = d;
          via[static_cast<std::size_t>(m)] = y;
          if (o == Owner::Free) dq.push_back(m); else dq.push_front(m);
        }
      }
    }
    if (end < 0) continue;
    // walk back; claim the free edge nearest v
    ElementId pick = -1;
    for (int y = end; y != v;) {
      const int x = via[static_cast<std::size_t>(y)];
      const ElementId e = state.edge(x, y);
      if (state.is_free(e)) pick = e;
      y = x;
    }
    if (pick >= 0) return TurnPlan::single(pick, "augment");
  }
  return TurnPlan::give_up("no augmenting path with a free edge");
}

nlohmann::json MatchingMaker::parameters() const {
  const double bias_cap = r_ > 1 ? r_ / (12 * std::log2(static_cast<double>(r_))) : 0.0;
  nlohmann::json j{{"r", r_},
                   {"q", q_},
                   {"mode", exact() ? "exact" : "heuristic"},
                   {"hall_sets", hall_set_count(r_)},
                   {"bias_guard", q_ <= bias_cap},
                   {"degree_guard", min_degree_ >= r_ - static_cast<int>(std::ceil(std::sqrt(static_cast<double>(r_))))},
                   {"bias_cap", bias_cap}};
  if (exact()) {
    j["beck_sum"] = beck_;
    j["criterion_holds"] = criterion_;
    j["lambda"] = ledger_->lambda();
  }
  if (!fallback_reason_.empty()) j["fallback"] = fallback_reason_;
  return j;
}

nlohmann::json MatchingMaker::result() const {
  nlohmann::json j{{"exact", exact()}, {"criterion_holds", criterion_}};
  if (last_matching_) j["matching"] = *last_matching_;
  return j;
}

std::vector<std::string> MatchingMaker::check_invariants(const GameState& state) const {
  if (!ledger_) return {};
  ledger_->sync(state);
  if (!ledger_->consistent(1e-9)) return {"hall potential ledger drifted from its recomputed sum"};
  return {};
}

// ---- Hamilton connectivity -------------------------------------------------

namespace {

int available_min_degree(const GameState& board) {
  int best = board.vertex_count();
  for (Vertex v = 0; v < board.vertex_count(); ++v) {
    int d = 0;
    for (ElementId e : board.graph()->incident(v))
      if (board.owner(e) != Owner::Breaker) ++d;
    best = std::min(best, d);
  }
  return best;
}

struct HamConSizes {
  double d = 0;
  int small_max = 0, big = 0;
};

HamConSizes hamcon_sizes(int k) {
  HamConSizes s;
  if (k < 3) return s;
  const double logk = std::log(static_cast<double>(k));
  s.d = std::log(logk);
  const double ratio = k / logk;
  s.small_max = std::min(k, static_cast<int>(std::floor(ratio + 1e-12)));
  s.big = static_cast<int>(std::ceil(ratio - 1e-12));
  return s;
}

}  // namespace

int h1_b_size(int k, int a) {
  const auto s = hamcon_sizes(k);
  return k - a - static_cast<int>(std::ceil(s.d * a - 1e-12)) + 1;
}

DualFamilySize hamcon_family_size(int k) {
  DualFamilySize out;
  const auto s = hamcon_sizes(k);
  for (int a = 1; a <= s.small_max; ++a) {
    const int b = h1_b_size(k, a);
    if (b >= 1 && b <= k - a) out.h1 += choose(k, a) * choose(k - a, b);
  }
  if (s.big >= 1 && 2 * s.big <= k) out.h2 = choose(k, s.big) * choose(k - s.big, s.big) / 2;
  return out;
}

Hypergraph hamcon_hypergraph(const GameState& board, std::size_t cap) {
  if (!board.graph()) throw GameError("hamcon needs an edge board");
  const int k = board.vertex_count();
  if (hamcon_family_size(k).total() > static_cast<double>(cap))
    throw TooLargeError("H1 ∪ H2 has " + std::to_string(hamcon_family_size(k).total()) + " sets, above the cap");
  const auto s = hamcon_sizes(k);
  Hypergraph h;
  h.board_size = board.size();
  auto edges_between = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<ElementId> set;
    for (int u : a)
      for (int w : b) {
        const ElementId e = board.edge(u, w);
        if (e >= 0) set.push_back(e);
      }
    return set;
  };
  for (int a = 1; a <= s.small_max; ++a) {
    const int bs = h1_b_size(k, a);
    if (bs < 1 || bs > k - a) continue;
    each_subset(k, a, [&](const std::vector<int>& av) {
      std::vector<int> rest;
      for (int v = 0, i = 0; v < k; ++v) {
        if (i < a && av[static_cast<std::size_t>(i)] == v) ++i;
        else rest.push_back(v);
      }
      each_subset(k - a, bs, [&](const std::vector<int>& bi) {
        std::vector<int> bv;
        for (int i : bi) bv.push_back(rest[static_cast<std::size_t>(i)]);
        h.sets.push_back(edges_between(av, bv));
        return true;
      });
      return true;
    });
  }
  if (s.big >= 1 && 2 * s.big <= k) {
    each_subset(k, s.big, [&](const std::vector<int>& av) {
      std::vector<int> rest;
      for (int v = av.front() + 1, i = 1; v < k; ++v) {
        if (i < s.big && av[static_cast<std::size_t>(i)] == v) ++i;
        else rest.push_back(v);
      }
      each_subset(static_cast<int>(rest.size()), s.big, [&](const std::vector<int>& bi) {
        std::vector<int> bv;
        for (int i : bi) bv.push_back(rest[static_cast<std::size_t>(i)]);
        h.sets.push_back(edges_between(av, bv));
        return true;
      });
      return true;
    });
  }
  h.normalize(true);
  return h;
}

HamConMaker::HamConMaker(const GameState& board, int q, HamConOptions opt)
    : k_(board.vertex_count()), q_(q), opt_(std::move(opt)), rng_(opt_.seed, 0x4C0) {
  if (!board.graph()) throw GameError("hamcon needs an edge board");
  if (k_ < opt_.min_k)
    throw GameError("region of " + std::to_string(k_) + " vertices is below the floor of " + std::to_string(opt_.min_k));
  if (q < 1) throw GameError("hamcon needs q >= 1");
  if (opt_.endpoints) {
    auto [x, y] = *opt_.endpoints;
    if (x == y || x < 0 || y < 0 || x >= k_ || y >= k_) throw GameError("hamcon endpoints must be two distinct vertices");
  }
  min_degree_ = available_min_degree(board);
  const double size = hamcon_family_size(k_).total();
  const bool fits = size <= static_cast<double>(opt_.enum_cap);
  if (opt_.mode == HamConOptions::Mode::Exact && !fits)
    throw TooLargeError("exact hamcon mode needs at most " + std::to_string(opt_.enum_cap) + " dual sets");
  exact_ = opt_.mode != HamConOptions::Mode::Heuristic && fits && k_ >= 3;
  path_first_ = !exact_ && opt_.endpoints.has_value();
  if (exact_) {
    auto h = std::make_shared<const Hypergraph>(hamcon_hypergraph(board, opt_.enum_cap));
    const Bias dual(q, 1);
    beck_ = beck_sum(*h, dual);
    criterion_ = criterion_holds(*h, dual);
    ledger_ = std::make_unique<PotentialLedger>(h, dual, Side::Maker);
  }
}

bool HamConMaker::condition_now(const GameState& state) const {
  if (condition_done_) return true;
  const auto rep = hamcon_condition_check(maker_graph(state), opt_.check_cap, opt_.seed, 4000);
  condition_done_ = rep.holds;
  return condition_done_;
}

bool HamConMaker::goal_now(const GameState& state) const {
  if (!opt_.endpoints) {
    if (k_ > 12) return true;
    if (!hc_) {
      auto r = hamilton_connected_oracle(maker_graph(state), 12);
      if (r && *r) hc_ = true;
    }
    return hc_.value_or(false);
  }
  if (!done_path_.empty()) return true;
  auto [x, y] = *opt_.endpoints;
  bool owned = !target_.empty();
  for (std::size_t i = 0; owned && i + 1 < target_.size(); ++i) owned = state.edge_owned(Side::Maker, target_[i], target_[i + 1]);
  if (owned) {
    done_path_ = target_;
    return true;
  }
  if (k_ <= 16) {
    if (auto p = find_hamilton_path(maker_graph(state), x, y)) {
      done_path_ = *p;
      return true;
    }
  }
  return false;
}

bool HamConMaker::succeeded(const GameState& state) const {
  if (opt_.endpoints) return goal_now(state);
  return condition_now(state) && goal_now(state);
}

std::optional<ElementId> HamConMaker::condition_move(const GameState& state) {
  if (ledger_) {
    auto picks = potential_breaker_move(*ledger_, state, 1);
    if (!picks.empty()) return picks.front();
    return std::nullopt;
  }
  const auto found = hamcon_violations(maker_graph(state), 16, opt_.check_cap, opt_.seed + moves_, 4000);
  for (const auto& w : found) {
    for (std::size_t s : w.set)
      for (std::size_t o : w.outside) {
        const ElementId e = state.edge(static_cast<Vertex>(s), static_cast<Vertex>(o));
        if (e >= 0 && state.is_free(e)) return e;
      }
  }
  return std::nullopt;
}

std::optional<ElementId> HamConMaker::goal_move(const GameState& state, std::string& why) {
  const AdjList avail = available_graph(state);
  const AdjList owned = maker_graph(state);
  std::pair<Vertex, Vertex> ends;
  if (opt_.endpoints) {
    ends = *opt_.endpoints;
  } else {
    // Hamilton connectivity: the first pair without a Maker path
    bool found = false;
    for (Vertex u = 0; u < k_ && !found; ++u)
      for (Vertex w = u + 1; w < k_ && !found; ++w)
        if (!hamilton_path_between(owned, u, w)) ends = {u, w}, found = true;
    if (!found) {
      why = "goal already holds";
      return std::nullopt;
    }
  }
  auto [x, y] = ends;
  bool intact = !target_.empty() && target_.front() == x && target_.back() == y;
  for (std::size_t i = 0; intact && i + 1 < target_.size(); ++i)
    intact = state.edge_owner(target_[i], target_[i + 1]) != Owner::Breaker;
  if (!intact) {
    ++replans_;
    std::optional<std::vector<Vertex>> p;
    if (k_ <= 16) {
      p = cheapest_hamilton_path(avail, owned, x, y);
    } else {
      p = chain_segments(avail, owned, x, y);
      if (!p) p = posa_hamilton_path(avail, owned, x, y, target_, rng_);
    }
    if (!p) {
      why = "no Hamilton path " + std::to_string(x) + ".." + std::to_string(y) + " left in the available graph";
      return std::nullopt;
    }
    target_ = std::move(*p);
  }
  // most threatened vertex first, path order otherwise
  std::optional<ElementId> best;
  int best_threat = -1;
  for (std::size_t i = 0; i + 1 < target_.size(); ++i) {
    const ElementId e = state.edge(target_[i], target_[i + 1]);
    if (!state.is_free(e)) continue;
    const int threat = std::max(state.degree(Side::Breaker, target_[i]), state.degree(Side::Breaker, target_[i + 1]));
    if (threat > best_threat) best = e, best_threat = threat;
  }
  if (!best) why = "target path already owned";
  return best;
}

TurnPlan HamConMaker::play(const GameState& state, const TurnContext&) {
  ++moves_;
  if (!path_first_ && !condition_now(state)) {
    if (auto e = condition_move(state)) {
      ++condition_moves_;
      return TurnPlan::single(*e, exact_ ? "dual-potential" : "expand");
    }
  }
  if (!opt_.endpoints && k_ > 12) {
    if (condition_now(state)) return TurnPlan::pass("condition holds");
    return TurnPlan::give_up("no free edge repairs a violating set");
  }
  std::string why;
  if (auto e = goal_move(state, why)) return TurnPlan::single(*e, "path");
  if (goal_now(state)) return TurnPlan::pass(why);
  return TurnPlan::give_up(why);
}

nlohmann::json HamConMaker::parameters() const {
  nlohmann::json j{{"k", k_},
                   {"q", q_},
                   {"mode", exact_ ? "exact" : "heuristic"},
                   {"dual_sets", hamcon_family_size(k_).total()},
                   {"move_bound", opt_.move_constant * k_ * std::pow(std::log(std::max(k_, 2)), 2)},
                   {"path_first", path_first_},
                   {"bias_guard", k_ > 2 && q_ <= k_ / std::pow(std::log(static_cast<double>(k_)), 2)},
                   {"degree_guard", k_ > 2 && min_degree_ >= k_ - std::ceil(k_ / std::pow(std::log(static_cast<double>(k_)), 2))}};
  if (exact_) {
    j["beck_sum"] = beck_;
    j["criterion_holds"] = criterion_;
  }
  if (opt_.endpoints) j["endpoints"] = {opt_.endpoints->first, opt_.endpoints->second};
  return j;
}

nlohmann::json HamConMaker::result() const {
  const double bound = opt_.move_constant * k_ * std::pow(std::log(std::max(k_, 2)), 2);
  nlohmann::json j{{"moves", moves_},
                   {"condition_moves", condition_moves_},
                   {"condition_held", condition_done_},
                   {"replans", replans_},
                   {"within_move_bound", static_cast<double>(moves_) <= bound}};
  if (!done_path_.empty()) j["path"] = done_path_;
  if (hc_) j["hamilton_connected"] = *hc_;
  return j;
}

// ---- Hamilton path between fixed endpoints ---------------------------------

void HamPathParams::resolve() {
  if (!delta_prime) delta_prime = std::max(0.5 + 2 * gamma, beta) + 0.01;
  if (!delta) delta = *delta_prime + 2 * gamma + 0.01;
}

HamPathMaker::HamPathMaker(const GameState& board, Vertex a, Vertex b, int q, HamPathParams params)
    : k_(board.vertex_count()), q_(q), a_(a), b_(b), p_(std::move(params)) {
  if (!board.graph()) throw GameError("hampath needs an edge board");
  if (a == b || a < 0 || b < 0 || a >= k_ || b >= k_) throw GameError("hampath endpoints must be two distinct vertices");
  if (q < 1) throw GameError("hampath needs q >= 1");
  p_.resolve();
  const double k = k_;
  danger_threshold_ = std::pow(k, p_.dp());
  stop_threshold_ = 2 * std::pow(k, p_.d());
  int min_deg = k_;
  for (Vertex v = 0; v < k_; ++v) {
    int d = 0;
    for (ElementId e : board.graph()->incident(v))
      if (board.owner(e) != Owner::Breaker) ++d;
    min_deg = std::min(min_deg, d);
  }
  const double g = p_.gamma, be = p_.beta;
  guards_ = min_deg >= k - std::pow(k, be) && q <= std::pow(k, g) && g < 0.125 && be + 2 * g < 1 &&
            p_.dp() > std::max(0.5 + 2 * g, be) && p_.d() > p_.dp() + 2 * g && p_.d() < 1;
  used_.assign(static_cast<std::size_t>(k_), 0);
  ever_dangerous_.assign(static_cast<std::size_t>(k_), 0);
  used_[static_cast<std::size_t>(a)] = used_[static_cast<std::size_t>(b)] = 1;
  pa_ = {a};
  pb_ = {b};
}

bool HamPathMaker::eligible(const GameState&, Vertex v) const {
  if (!used_[static_cast<std::size_t>(v)]) return true;
  return (v == pa_.back() && v != a_) || (v == pb_.back() && v != b_);
}

std::vector<Vertex> HamPathMaker::dangerous(const GameState& state) const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < k_; ++v)
    if (eligible(state, v) && state.degree(Side::Breaker, v) >= danger_threshold_) out.push_back(v);
  return out;
}

bool HamPathMaker::stage1_running() const {
  return static_cast<double>(k_) - static_cast<double>(pa_.size() + pb_.size()) >= stop_threshold_;
}

std::optional<ElementId> HamPathMaker::extend(const GameState& state, std::vector<Vertex>& path, std::string& note) {
  while (true) {
    const Vertex x = path.back();
    Vertex owned = -1, fresh = -1;
    for (Vertex w = 0; w < k_ && owned < 0; ++w) {
      if (used_[static_cast<std::size_t>(w)]) continue;
      const auto o = state.edge_owner(x, w);
      if (o == Owner::Maker) owned = w;
      else if (o == Owner::Free && fresh < 0) fresh = w;
    }
    const Vertex w = owned >= 0 ? owned : fresh;
    if (w < 0) return std::nullopt;
    path.push_back(w);
    used_[static_cast<std::size_t>(w)] = 1;
    if (owned < 0) {
      note += " " + std::to_string(x) + "-" + std::to_string(w);
      return state.edge(x, w);
    }
  }
}

TurnPlan HamPathMaker::connector_step(const GameState& state) {
  auto& c = *conn_;
  auto step = [&](Vertex u, Vertex w, const char* what) {
    ++c.moves;
    max_connector_moves_ = std::max(max_connector_moves_, c.moves);
    if (c.moves > static_cast<int>(std::floor(11 * std::pow(static_cast<double>(k_), p_.gamma))))
      return TurnPlan::give_up("connector to " + std::to_string(c.v) + " exceeded 11k^gamma moves");
    return TurnPlan::single(state.edge(u, w), std::string("stage1 connector ") + what);
  };
  auto maker_nbrs = [&](Vertex u, const std::vector<Vertex>& pool) {
    std::vector<Vertex> out;
    for (Vertex w : pool)
      if (state.edge_owned(Side::Maker, u, w)) out.push_back(w);
    return out;
  };
  if (c.nv.empty()) {
    auto have = maker_nbrs(c.v, c.indep);
    if (static_cast<int>(have.size()) < c.c) {
      for (Vertex w : c.indep)
        if (state.edge_free(c.v, w)) return step(c.v, w, "v-side");
      return TurnPlan::give_up("connector: no free edge from " + std::to_string(c.v) + " into I");
    }
    c.nv.assign(have.begin(), have.begin() + c.c);
  }
  std::vector<Vertex> rest;
  for (Vertex w : c.indep)
    if (std::find(c.nv.begin(), c.nv.end(), w) == c.nv.end()) rest.push_back(w);
  auto nx = maker_nbrs(c.x, rest);
  if (static_cast<int>(nx.size()) < c.c) {
    for (Vertex w : rest)
      if (state.edge_free(c.x, w)) return step(c.x, w, "x-side");
    return TurnPlan::give_up("connector: no free edge from " + std::to_string(c.x) + " into I");
  }
  nx.resize(static_cast<std::size_t>(c.c));
  std::optional<std::pair<Vertex, Vertex>> bridge, owned;
  for (Vertex x1 : nx)
    for (Vertex y1 : c.nv) {
      const auto o = state.edge_owner(x1, y1);
      if (o == Owner::Maker && !owned) owned = std::pair{x1, y1};
      if (o == Owner::Free && !bridge) bridge = std::pair{x1, y1};
    }
  auto finish = [&](std::pair<Vertex, Vertex> xy) {
    for (Vertex w : {xy.first, xy.second, c.v}) {
      pa_.push_back(w);
      used_[static_cast<std::size_t>(w)] = 1;
    }
    conn_.reset();
    extend_next_ = 0;
  };
  if (owned) {
    finish(*owned);
    std::string note = "stage1 connector-done extend";
    extend_next_ = -1;
    if (auto e = extend(state, pa_, note)) return TurnPlan::single(*e, note);
    return TurnPlan::give_up("no free edge to extend P_a");
  }
  if (!bridge) return TurnPlan::give_up("connector: no free bridge edge");
  auto plan = step(bridge->first, bridge->second, "bridge");
  if (!plan.forfeit) finish(*bridge);
  return plan;
}

TurnPlan HamPathMaker::start_stage2(const GameState& state, const TurnContext& ctx) {
  stage_ = 2;
  stage1_moves_ = moves_ - 1;
  const Vertex ea = pa_.back(), eb = pb_.back();
  g_vertices_.clear();
  std::vector<int> local(static_cast<std::size_t>(k_), -1);
  for (Vertex v = 0; v < k_; ++v)
    if (!used_[static_cast<std::size_t>(v)] || v == ea || v == eb) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(g_vertices_.size());
      g_vertices_.push_back(v);
    }
  const int n = static_cast<int>(g_vertices_.size());
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<ElementId> global;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ElementId e = state.edge(g_vertices_[static_cast<std::size_t>(i)], g_vertices_[static_cast<std::size_t>(j)]);
      if (e >= 0 && state.owner(e) != Owner::Breaker) pairs.emplace_back(i, j);
    }
  auto board = GraphBoard::from_edges(n, pairs);
  global.assign(board->edge_count(), -1);
  for (auto [i, j] : pairs)
    global[static_cast<std::size_t>(board->edge_id(i, j))] =
        state.edge(g_vertices_[static_cast<std::size_t>(i)], g_vertices_[static_cast<std::size_t>(j)]);
  GameState local_state = GameState::on_graph(board);
  HamConOptions o = p_.stage2;
  o.endpoints = std::pair{local[static_cast<std::size_t>(ea)], local[static_cast<std::size_t>(eb)]};
  o.min_k = std::min(o.min_k, 2);
  auto inner = std::make_unique<HamConMaker>(local_state, q_, o);
  stage2_inner_ = inner.get();
  std::vector<SubGame> games;
  games.push_back(SubGame{std::move(global), std::move(local_state), std::move(inner), {}, 0});
  stage2_ = std::make_unique<ParallelMaker>(std::move(games), q_, state.size());
  auto plan = stage2_->play(state, ctx);
  plan.note = "stage2 " + plan.note;
  return plan;
}

TurnPlan HamPathMaker::play(const GameState& state, const TurnContext& ctx) {
  ++moves_;
  if (moves_ > 2 * static_cast<std::size_t>(k_)) return TurnPlan::give_up("hampath exceeded 2k Maker moves");
  if (stage_ == 2) {
    auto plan = stage2_->play(state, ctx);
    plan.note = "stage2 " + plan.note;
    return plan;
  }
  if (conn_) return connector_step(state);
  if (extend_next_ >= 0) {
    auto& path = extend_next_ == 0 ? pa_ : pb_;
    extend_next_ = -1;
    std::string note = "stage1 extend-after-connect";
    if (auto e = extend(state, path, note)) return TurnPlan::single(*e, note);
    return TurnPlan::give_up("no free edge to extend after connecting a dangerous vertex");
  }
  if (!stage1_running()) return start_stage2(state, ctx);

  const auto d = dangerous(state);
  max_dangerous_ = std::max(max_dangerous_, d.size());
  for (Vertex v : d)
    if (!ever_dangerous_[static_cast<std::size_t>(v)]) ever_dangerous_[static_cast<std::size_t>(v)] = 1, ++ever_dangerous_count_;
  std::string note = "stage1";
  if (d.empty()) {
    auto& path = pa_.size() <= pb_.size() ? pa_ : pb_;
    note += " extend";
    if (auto e = extend(state, path, note)) return TurnPlan::single(*e, note);
    return TurnPlan::give_up("no free edge extends the shorter path");
  }
  const Vertex v = d.front();
  if (used_[static_cast<std::size_t>(v)]) {
    auto& path = pa_.back() == v ? pa_ : pb_;
    note += " dangerous-end " + std::to_string(v);
    if (auto e = extend(state, path, note)) return TurnPlan::single(*e, note);
    return TurnPlan::give_up("no free edge extends past dangerous end " + std::to_string(v));
  }
  const Vertex x = pa_.back();
  const auto o = state.edge_owner(x, v);
  if (o == Owner::Maker || o == Owner::Free) {
    pa_.push_back(v);
    used_[static_cast<std::size_t>(v)] = 1;
    note += " dangerous-direct " + std::to_string(v);
    if (o == Owner::Free) {
      extend_next_ = 0;
      return TurnPlan::single(state.edge(x, v), note);
    }
    if (auto e = extend(state, pa_, note)) return TurnPlan::single(*e, note);
    return TurnPlan::give_up("no free edge extends past " + std::to_string(v));
  }

  Connector c;
  c.v = v;
  c.x = x;
  std::vector<char> blocked(static_cast<std::size_t>(k_), 0);
  blocked[static_cast<std::size_t>(v)] = 1;
  for (Vertex w : state.neighbors(Side::Breaker, x)) blocked[static_cast<std::size_t>(w)] = 1;
  for (Vertex w : state.neighbors(Side::Breaker, v)) blocked[static_cast<std::size_t>(w)] = 1;
  for (Vertex w = 0; w < k_; ++w) {
    if (used_[static_cast<std::size_t>(w)] || blocked[static_cast<std::size_t>(w)]) continue;
    bool independent = true;
    for (Vertex u : c.indep)
      if (state.edge_owned(Side::Breaker, u, w)) {
        independent = false;
        break;
      }
    if (independent) c.indep.push_back(w);
  }
  if (c.indep.size() < 2) return TurnPlan::give_up("connector: independent set around " + std::to_string(v) + " too small");
  c.c = std::max(1, static_cast<int>(std::floor(5 * std::pow(static_cast<double>(k_), p_.gamma))));
  c.c = std::min(c.c, static_cast<int>(c.indep.size() / 2));
  conn_ = std::move(c);
  ++connectors_;
  return connector_step(state);
}

std::optional<std::vector<Vertex>> HamPathMaker::final_path(const GameState& state) const {
  if (stage_ != 2 || !stage2_inner_ || !stage2_->succeeded(state) || stage2_inner_->path().empty()) return std::nullopt;
  std::vector<Vertex> out = pa_;
  const auto& mid = stage2_inner_->path();
  for (std::size_t i = 1; i + 1 < mid.size(); ++i) out.push_back(g_vertices_[static_cast<std::size_t>(mid[i])]);
  out.insert(out.end(), pb_.rbegin(), pb_.rend());
  if (out.size() != static_cast<std::size_t>(k_)) return std::nullopt;
  for (std::size_t i = 0; i + 1 < out.size(); ++i)
    if (!state.edge_owned(Side::Maker, out[i], out[i + 1])) return std::nullopt;
  return out;
}

bool HamPathMaker::succeeded(const GameState& state) const {
  if (stage_ != 2 || !stage2_) return false;
  return final_path(state).has_value();
}

std::vector<std::string> HamPathMaker::check_invariants(const GameState& state) const {
  std::vector<std::string> found;
  if (stage_ == 2) {
    if (stage2_) found = stage2_->check_invariants(state);
    return found;
  }
  const double k = k_;
  const double left = k - static_cast<double>(pa_.size() + pb_.size());
  if (left < std::pow(k, p_.d()))
    found.push_back("leftover " + std::to_string(left) + " fell below k^delta");
  long worst = 0;
  for (Vertex v = 0; v < k_; ++v)
    if (eligible(state, v)) worst = std::max<long>(worst, state.degree(Side::Breaker, v));
  max_eligible_breaker_degree_ = std::max(max_eligible_breaker_degree_, worst);
  if (static_cast<double>(worst) > 2 * danger_threshold_)
    found.push_back("eligible Breaker degree " + std::to_string(worst) + " exceeds 2k^delta'");
  const double cap = 4 * std::pow(k, 1 + p_.gamma) / danger_threshold_;
  if (static_cast<double>(ever_dangerous_count_) > cap)
    found.push_back(std::to_string(ever_dangerous_count_) + " vertices turned dangerous, above 4k^(1+gamma)/k^delta'");
  if (guards_) return found;
  soft_count_ += found.size();
  for (auto& f : found)
    if (soft_.size() < 20) soft_.push_back(f);
  return {};
}

nlohmann::json HamPathMaker::parameters() const {
  return {{"k", k_},
          {"q", q_},
          {"a", a_},
          {"b", b_},
          {"gamma", p_.gamma},
          {"beta", p_.beta},
          {"delta_prime", p_.dp()},
          {"delta", p_.d()},
          {"danger_threshold", danger_threshold_},
          {"stage1_stop", stop_threshold_},
          {"guards_held", guards_}};
}

nlohmann::json HamPathMaker::result() const {
  nlohmann::json j{{"stage", stage_},
                   {"moves", moves_},
                   {"stage1_moves", stage_ == 2 ? stage1_moves_ : moves_},
                   {"connectors", connectors_},
                   {"max_connector_moves", max_connector_moves_},
                   {"max_dangerous", max_dangerous_},
                   {"ever_dangerous", ever_dangerous_count_},
                   {"max_eligible_breaker_degree", max_eligible_breaker_degree_},
                   {"path_a", pa_},
                   {"path_b", pb_},
                   {"soft_violations", soft_count_},
                   {"soft_examples", soft_}};
  if (stage2_) {
    j["g_prime_size"] = g_vertices_.size();
    j["stage2"] = stage2_->result();
  }
  return j;
}

}  // namespace mbgame
