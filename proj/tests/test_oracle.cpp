#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/hypergraph.hpp"
#include "mbgame/oracle.hpp"
#include "mbgame/potential.hpp"
#include "mbgame/rng.hpp"

using namespace mbgame;

namespace {

AdjList from_pairs(int n, const std::vector<std::pair<int, int>>& e) {
  AdjList g(static_cast<std::size_t>(n));
  for (auto [u, v] : e) {
    g[static_cast<std::size_t>(u)].push_back(v);
    g[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : g) std::sort(a.begin(), a.end());
  return g;
}

AdjList complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return from_pairs(n, e);
}

AdjList cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return from_pairs(n, e);
}

AdjList path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return from_pairs(n, e);
}

// Hamilton-connectedness by permutation enumeration, for cross-checking.
bool brute_hamcon(const AdjList& g) {
  const int n = static_cast<int>(g.size());
  auto adj = [&](int a, int b) {
    return std::binary_search(g[static_cast<std::size_t>(a)].begin(), g[static_cast<std::size_t>(a)].end(), b);
  };
  std::vector<std::vector<char>> ok(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    bool good = true;
    for (int i = 0; i + 1 < n && good; ++i) good = adj(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i + 1)]);
    if (good) ok[static_cast<std::size_t>(p.front())][static_cast<std::size_t>(p.back())] = 1;
  } while (std::next_permutation(p.begin(), p.end()));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && !ok[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) return false;
  return true;
}

}  // namespace

TEST_CASE("minimax on hand-solved games") {
  auto a = minimax_solve(Hypergraph{1, {{0}}}, Bias(1, 1), Side::Maker);
  CHECK(a.status == SolveResult::Status::MakerWin);
  CHECK(a.maker_turns == 1);
  CHECK(minimax_solve(Hypergraph{1, {{0}}}, Bias(1, 1), Side::Breaker).status == SolveResult::Status::BreakerWin);
  CHECK(minimax_solve(Hypergraph{4, {{0, 1}, {2, 3}}}, Bias(1, 1), Side::Breaker).status ==
        SolveResult::Status::BreakerWin);
  CHECK(minimax_solve(Hypergraph{2, {{0, 1}}}, Bias(1, 1), Side::Maker).status == SolveResult::Status::BreakerWin);
  // two pairs sharing 0, Maker first: takes 0, then whichever pair survives
  auto fork = minimax_solve(Hypergraph{3, {{0, 1}, {0, 2}}}, Bias(1, 1), Side::Maker);
  CHECK(fork.status == SolveResult::Status::MakerWin);
  CHECK(fork.maker_turns == 2);
  // (2:1) makes a pair trivial
  auto biased = minimax_solve(Hypergraph{2, {{0, 1}}}, Bias(2, 1), Side::Maker);
  CHECK(biased.maker_turns == 1);
}

TEST_CASE("minimax cap is inconclusive, never wrong") {
  Hypergraph h{12, {}};
  for (int i = 0; i < 12; i += 3) h.sets.push_back({i, i + 1, i + 2});
  auto r = minimax_solve(h, Bias(1, 1), Side::Maker, 5);
  CHECK(r.status == SolveResult::Status::Inconclusive);
  CHECK_THROWS_AS(MinimaxSolver(Hypergraph{20, {{0}}}, Bias(1, 1)), GameError);
}

TEST_CASE("minimax agrees with plain exhaustive search on tiny boards") {
  CounterRng rng(77);
  for (int it = 0; it < 150; ++it) {
    const std::size_t size = 2 + rng.below(4);
    Hypergraph h{size, {}};
    const std::size_t count = 1 + rng.below(3);
    for (std::size_t i = 0; i < count; ++i) {
      std::vector<ElementId> s;
      for (std::size_t e = 0; e < size; ++e)
        if (rng.below(2)) s.push_back(static_cast<ElementId>(e));
      if (s.empty()) s.push_back(0);
      h.sets.push_back(s);
    }
    h.normalize();
    // naive: Maker wins iff some line of play forces a set
    std::function<bool(GameState&, Side)> wins = [&](GameState& s, Side side) -> bool {
      if (winner_check(s, h) == WinStatus::MakerWin) return true;
      if (s.free_count() == 0) return false;
      bool any = side == Side::Breaker;
      for (std::size_t e = 0; e < s.size(); ++e) {
        if (!s.is_free(static_cast<ElementId>(e))) continue;
        GameState c = s;
        c.claim(side, static_cast<ElementId>(e));
        const bool w = wins(c, opponent(side));
        if (side == Side::Maker && w) return true;
        if (side == Side::Breaker && !w) return false;
      }
      return any;
    };
    for (Side first : {Side::Maker, Side::Breaker}) {
      GameState s = GameState::generic(size);
      const bool expected = wins(s, first);
      auto r = minimax_solve(h, Bias(1, 1), first);
      CHECK((r.status == SolveResult::Status::MakerWin) == expected);
    }
  }
}

TEST_CASE("minimax strategy plays optimal Maker") {
  auto h = std::make_shared<Hypergraph>(Hypergraph{3, {{0, 1}, {0, 2}}});
  MinimaxStrategy maker(Side::Maker, h, Bias(1, 1));
  PotentialBreaker breaker(h, Bias(1, 1));
  GameOptions o;
  o.first = Side::Maker;
  auto t = run_game(GameState::generic(3), Bias(1, 1), maker, breaker, hypergraph_win_check(*h), o);
  CHECK(t.outcome.kind == Outcome::Kind::MakerWin);
  CHECK(t.maker_moves() == 2);
}

TEST_CASE("tree copy verification") {
  auto t = TreeSpec::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  AdjList g = from_pairs(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(verify_tree_copy(t, g, {0, 1, 2, 3}));
  AdjList missing = from_pairs(4, {{0, 1}, {1, 2}});
  CHECK_FALSE(verify_tree_copy(t, missing, {0, 1, 2, 3}));
  CHECK_FALSE(verify_tree_copy(t, g, {0, 1, 2, 2}));
  CHECK_THROWS_AS(verify_tree_copy(t, g, {0, 1, 2}), GameError);
  CHECK_THROWS_AS(verify_tree_copy(t, g, {0, 1, 2, -1}), GameError);

  CounterRng rng(9);
  for (int i = 0; i < 30; ++i) {
    auto tree = random_prufer_tree(15, rng);
    std::vector<Vertex> perm(15);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(perm, rng);
    AdjList host(15);
    for (auto [u, v] : tree.edges()) {
      host[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])].push_back(perm[static_cast<std::size_t>(v)]);
      host[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])].push_back(perm[static_cast<std::size_t>(u)]);
    }
    CHECK(verify_tree_copy(tree, host, perm));
  }
}

TEST_CASE("perfect matching oracle") {
  CHECK(perfect_matching_oracle({{0, 1}, {0, 1}}, 2).has_value());
  CHECK_FALSE(perfect_matching_oracle({{0, 1, 2}, {}, {}}, 3).has_value());
  CounterRng rng(4);
  for (int it = 0; it < 100; ++it) {
    const int r = 2 + static_cast<int>(rng.below(15));
    std::vector<int> planted(static_cast<std::size_t>(r));
    std::iota(planted.begin(), planted.end(), 0);
    shuffle_in_place(planted, rng);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(r));
    for (int a = 0; a < r; ++a) {
      adj[static_cast<std::size_t>(a)].push_back(planted[static_cast<std::size_t>(a)]);
      for (int b = 0; b < r; ++b)
        if (rng.below(5) == 0) adj[static_cast<std::size_t>(a)].push_back(b);
    }
    auto m = perfect_matching_oracle(adj, r);
    REQUIRE(m.has_value());
    std::vector<int> used = *m;
    std::sort(used.begin(), used.end());
    for (int b = 0; b < r; ++b) CHECK(used[static_cast<std::size_t>(b)] == b);
    for (int a = 0; a < r; ++a) {
      const auto& row = adj[static_cast<std::size_t>(a)];
      CHECK(std::find(row.begin(), row.end(), (*m)[static_cast<std::size_t>(a)]) != row.end());
    }
  }
}

TEST_CASE("hamilton connectivity oracle") {
  CHECK(hamilton_connected_oracle(complete(4)) == std::optional<bool>(true));
  CHECK(hamilton_connected_oracle(path(5)) == std::optional<bool>(false));
  CHECK(hamilton_connected_oracle(cycle(5)) == std::optional<bool>(false));
  CHECK_FALSE(hamilton_connected_oracle(complete(13)).has_value());
  auto p = find_hamilton_path(cycle(6), 0, 1);
  REQUIRE(p.has_value());
  CHECK(p->front() == 0);
  CHECK(p->back() == 1);
  CHECK(p->size() == 6);
  CHECK_FALSE(hamilton_path_between(cycle(6), 0, 2));

  CounterRng rng(12);
  for (int it = 0; it < 60; ++it) {
    const int n = 3 + static_cast<int>(rng.below(5));
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.below(10) < 7) e.emplace_back(u, v);
    auto g = from_pairs(n, e);
    CHECK(hamilton_connected_oracle(g) == std::optional<bool>(brute_hamcon(g)));
  }
}

TEST_CASE("hamcon condition checker") {
  for (int k : {4, 8, 12, 20}) CHECK(hamcon_condition_check(complete(k)).holds);
  auto iso = complete(8);
  for (auto& a : iso) a.erase(std::remove(a.begin(), a.end(), 7), a.end());
  iso[7].clear();
  CHECK_FALSE(hamcon_condition_check(iso).holds);
  for (int k : {6, 8, 10, 12}) {
    auto g = complete(k);
    for (int v = 0; v < k; v += 2) {
      auto& a = g[static_cast<std::size_t>(v)];
      a.erase(std::remove(a.begin(), a.end(), v + 1), a.end());
      auto& b = g[static_cast<std::size_t>(v + 1)];
      b.erase(std::remove(b.begin(), b.end(), v), b.end());
    }
    auto r = hamcon_condition_check(g);
    CHECK(r.holds);
    CHECK(r.exact);
  }
  auto r8 = hamcon_condition_check(complete(8));
  CHECK(r8.regime == "degenerate");
  CHECK(r8.small_max == 3);
  CHECK(r8.big_size == 4);
}

TEST_CASE("triangle invariant") {
  CHECK_FALSE(triangle_invariant_check(from_pairs(3, {{0, 1}, {1, 2}, {0, 2}})));
  CHECK(triangle_invariant_check(from_pairs(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}})));
  CHECK(triangle_invariant_check(path(5)));
}

TEST_CASE("triangle factor search") {
  CHECK(find_triangle_factor(complete(6)).has_value());
  CHECK_FALSE(find_triangle_factor(cycle(6)).has_value());
  auto two = from_pairs(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  auto f = find_triangle_factor(two);
  REQUIRE(f.has_value());
  CHECK(f->size() == 2);
  CHECK_FALSE(find_triangle_factor(complete(5)).has_value());
}
