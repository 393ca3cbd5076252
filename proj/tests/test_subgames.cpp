#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mbgame/adversaries.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/oracle.hpp"
#include "mbgame/rng.hpp"
#include "mbgame/subgames.hpp"

using namespace mbgame;

namespace {

AdjList random_graph(int n, double p, CounterRng& rng) {
  AdjList g(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) {
        g[static_cast<std::size_t>(u)].push_back(v);
        g[static_cast<std::size_t>(v)].push_back(u);
      }
  return g;
}

bool has_edge(const AdjList& g, Vertex u, Vertex v) {
  const auto& a = g[static_cast<std::size_t>(u)];
  return std::find(a.begin(), a.end(), v) != a.end();
}

// fewest non-owned edges over all Hamilton x..y paths, by permutations
int brute_cheapest(const AdjList& avail, const AdjList& owned, Vertex x, Vertex y) {
  const int n = static_cast<int>(avail.size());
  std::vector<Vertex> mid;
  for (int v = 0; v < n; ++v)
    if (v != x && v != y) mid.push_back(v);
  int best = -1;
  do {
    std::vector<Vertex> p{x};
    p.insert(p.end(), mid.begin(), mid.end());
    p.push_back(y);
    int cost = 0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < p.size() && ok; ++i) {
      if (!has_edge(avail, p[i], p[i + 1])) ok = false;
      else if (!has_edge(owned, p[i], p[i + 1])) ++cost;
    }
    if (ok && (best < 0 || cost < best)) best = cost;
  } while (std::next_permutation(mid.begin(), mid.end()));
  return best;
}

GameState bipartite_board(int r) { return GameState::on_graph(GraphBoard::complete_bipartite(r)); }

}  // namespace

TEST_CASE("hall family sizes") {
  auto b1 = bipartite_board(1);
  auto h1 = hall_hypergraph(b1, 1);
  CHECK(h1.sets.size() == 1);
  CHECK(h1.sets[0].size() == 1);

  auto b2 = bipartite_board(2);
  auto h2 = hall_hypergraph(b2, 2);
  REQUIRE(h2.sets.size() == 4);
  for (const auto& s : h2.sets) CHECK(s.size() == 2);

  for (int r = 3; r <= 7; ++r) {
    auto b = bipartite_board(r);
    auto h = hall_hypergraph(b, r);
    double closed = 0;
    for (int t = 1; t <= r; ++t)
      closed += std::round(std::tgamma(r + 1.0) / std::tgamma(t + 1.0) / std::tgamma(r - t + 1.0)) *
                std::round(std::tgamma(r + 1.0) / std::tgamma(r - t + 2.0) / std::tgamma(t + 0.0));
    CHECK(static_cast<double>(h.sets.size()) == closed);
    CHECK(hall_set_count(r) == closed);
  }
  CHECK(hall_set_count(3) == 15);
  CHECK(hall_set_count(10) == 167960);
  CHECK_THROWS_AS(hall_hypergraph(bipartite_board(6), 6, 100), TooLargeError);
}

TEST_CASE("hall sets only hold board edges") {
  auto g = GraphBoard::from_edges(4, {{0, 2}, {1, 3}});
  GameState s = GameState::on_graph(g);
  auto h = hall_hypergraph(s, 2);
  REQUIRE(h.sets.size() == 4);
  // A' = {0}, B' = {2,3}: only the edge 0-2
  CHECK(h.sets[0] == std::vector<ElementId>{g->edge_id(0, 2)});
}

TEST_CASE("matching r=1 in one move") {
  auto board = bipartite_board(1);
  MatchingMaker m(board, 1, 1);
  NullBreaker nb;
  GameOptions opt;
  opt.first = Side::Maker;
  auto t = run_game(board, Bias(1, 1), m, nb, maker_goal_check(m), opt);
  CHECK(t.outcome.kind == Outcome::Kind::MakerWin);
  CHECK(t.maker_moves() == 1);
}

TEST_CASE("matching r=4 exact vs random breaker") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto board = bipartite_board(4);
    MatchingMaker m(board, 4, 1, {MatchingOptions::Mode::Exact});
    REQUIRE(m.exact());
    RandomBreaker rb(1, seed);
    GameState fin = board;
    auto t = run_game(board, Bias(1, 1), m, rb, maker_goal_check(m), {Side::Breaker, 1000, seed, true}, &fin);
    CHECK(t.violations.empty());
    if (t.outcome.kind == Outcome::Kind::MakerWin) {
      ++wins;
      auto mm = m.matching(fin);
      REQUIRE(mm);
      std::vector<Vertex> sorted = *mm;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == std::vector<Vertex>{4, 5, 6, 7});
      for (int a = 0; a < 4; ++a) CHECK(fin.edge_owned(Side::Maker, a, (*mm)[static_cast<std::size_t>(a)]));
    }
  }
  MESSAGE("r=4 exact matching wins: " << wins << "/100");
  CHECK(wins > 50);
}

TEST_CASE("heuristic matching vs null uses exactly r moves") {
  for (int r : {1, 3, 8, 20}) {
    auto board = bipartite_board(r);
    MatchingMaker m(board, r, 1, {MatchingOptions::Mode::Heuristic});
    NullBreaker nb;
    auto t = run_game(board, Bias(1, 1), m, nb, maker_goal_check(m), {Side::Maker, 10000, 0, true});
    CHECK(t.outcome.kind == Outcome::Kind::MakerWin);
    CHECK(t.maker_moves() == static_cast<std::size_t>(r));
  }
}

TEST_CASE("matching auto mode falls back above the cap") {
  auto board = bipartite_board(12);
  MatchingMaker m(board, 12, 1);
  CHECK_FALSE(m.exact());
  CHECK(m.parameters()["fallback"] == "hall family above enum_cap");
  CHECK_THROWS_AS(MatchingMaker(board, 12, 1, {MatchingOptions::Mode::Exact}), TooLargeError);
  CHECK(MatchingMaker(bipartite_board(5), 5, 1).parameters()["bias_guard"] == false);
}

TEST_CASE("cheapest Hamilton path matches brute force") {
  CounterRng rng(7, 1);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(6));
    AdjList avail = random_graph(n, 0.7, rng);
    AdjList owned(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
      for (Vertex v : avail[static_cast<std::size_t>(u)])
        if (u < v && rng.below(3) == 0) {
          owned[static_cast<std::size_t>(u)].push_back(v);
          owned[static_cast<std::size_t>(v)].push_back(u);
        }
    const Vertex x = 0, y = n - 1;
    const int want = brute_cheapest(avail, owned, x, y);
    auto got = cheapest_hamilton_path(avail, owned, x, y);
    CHECK(got.has_value() == (want >= 0));
    if (!got) continue;
    ++tested;
    CHECK(is_hamilton_path(avail, *got, x, y));
    int cost = 0;
    for (std::size_t i = 0; i + 1 < got->size(); ++i)
      if (!has_edge(owned, (*got)[i], (*got)[i + 1])) ++cost;
    CHECK(cost == want);
  }
  CHECK(tested > 50);
  CHECK_THROWS_AS(cheapest_hamilton_path(AdjList(21), AdjList(21), 0, 1), TooLargeError);
}

TEST_CASE("rotation-extension finds paths in dense graphs") {
  CounterRng rng(11, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 30 + static_cast<int>(rng.below(40));
    AdjList g = random_graph(n, 0.5, rng);
    auto p = posa_hamilton_path(g, AdjList(static_cast<std::size_t>(n)), 3, n - 2, {}, rng);
    REQUIRE(p);
    CHECK(is_hamilton_path(g, *p, 3, n - 2));
  }
  // a star has no Hamilton path
  AdjList star(5);
  for (int v = 1; v < 5; ++v) star[0].push_back(v), star[static_cast<std::size_t>(v)].push_back(0);
  CHECK_FALSE(posa_hamilton_path(star, star, 1, 2, {}, rng, 1000));
  CHECK_FALSE(hamilton_path_in(star, 1, 2, rng));
}

TEST_CASE("is_hamilton_path") {
  AdjList p4{{1}, {0, 2}, {1, 3}, {2}};
  CHECK(is_hamilton_path(p4, {0, 1, 2, 3}, 0, 3));
  CHECK_FALSE(is_hamilton_path(p4, {0, 1, 2, 3}, 3, 0));
  CHECK_FALSE(is_hamilton_path(p4, {0, 2, 1, 3}, 0, 3));
  CHECK_FALSE(is_hamilton_path(p4, {0, 1, 2}, 0, 2));
}

TEST_CASE("hamcon dual family at k=8") {
  CHECK(h1_b_size(8, 1) == 7);
  CHECK(h1_b_size(8, 2) == 5);
  CHECK(h1_b_size(8, 3) == 3);
  auto sz = hamcon_family_size(8);
  CHECK(sz.h1 == 736);
  CHECK(sz.h2 == 35);
  GameState b = complete_board(8);
  auto h = hamcon_hypergraph(b, 1'000'000);
  CHECK(h.sets.size() == 771);
  CHECK(hamcon_family_size(14).total() == 435540);
  CHECK_THROWS_AS(hamcon_hypergraph(complete_board(14), 1000), TooLargeError);
}

TEST_CASE("hamcon region floor") {
  CHECK_THROWS_AS(HamConMaker(complete_board(5), 1), GameError);
  HamConOptions o;
  o.min_k = 2;
  CHECK_NOTHROW(HamConMaker(complete_board(5), 1, o));
}

TEST_CASE("hamcon k=8 exact vs random breaker") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GameState b = complete_board(8);
    HamConMaker m(b, 1, {HamConOptions::Mode::Exact});
    REQUIRE(m.name() == "hamcon-exact");
    RandomBreaker rb(1, seed);
    GameState fin = b;
    auto t = run_game(b, Bias(1, 1), m, rb, maker_goal_check(m), {Side::Breaker, 1000, seed, true}, &fin);
    if (t.outcome.kind != Outcome::Kind::MakerWin) continue;
    ++wins;
    auto hc = hamilton_connected_oracle(maker_graph(fin), 12);
    REQUIRE(hc);
    CHECK(*hc);
    CHECK(hamcon_condition_check(maker_graph(fin)).holds);
  }
  MESSAGE("k=8 hamcon wins: " << wins << "/50");
}

TEST_CASE("hamcon with endpoints against null breaker claims only path edges") {
  for (int k : {8, 14, 20, 40}) {
    GameState b = complete_board(k);
    HamConOptions o;
    o.mode = HamConOptions::Mode::Heuristic;
    o.endpoints = std::pair{0, k - 1};
    HamConMaker m(b, 1, o);
    NullBreaker nb;
    GameState fin = b;
    auto t = run_game(b, Bias(1, 1), m, nb, maker_goal_check(m), {Side::Maker, 10000, 0, true}, &fin);
    REQUIRE(t.outcome.kind == Outcome::Kind::MakerWin);
    CHECK(t.maker_moves() == static_cast<std::size_t>(k - 1));
    CHECK(is_hamilton_path(maker_graph(fin), m.path(), 0, k - 1));
  }
}

TEST_CASE("hamcon with endpoints vs active breakers returns valid paths") {
  for (const char* name : {"random", "max-degree", "isolator"})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      GameState b = complete_board(24);
      HamConOptions o;
      o.endpoints = std::pair{5, 17};
      HamConMaker m(b, 1, o);
      auto br = make_breaker(name, 1, seed);
      GameState fin = b;
      auto t = run_game(b, Bias(1, 1), m, *br, maker_goal_check(m), {Side::Breaker, 10000, seed, true}, &fin);
      if (t.outcome.kind == Outcome::Kind::MakerWin) CHECK(is_hamilton_path(maker_graph(fin), m.path(), 5, 17));
    }
}

TEST_CASE("hampath parameter derivation") {
  HamPathParams p;
  p.resolve();
  CHECK(p.dp() == doctest::Approx(0.71));
  CHECK(p.d() == doctest::Approx(0.92));
  HamPathParams q;
  q.gamma = 0.01;
  q.beta = 0.3;
  q.resolve();
  CHECK(q.dp() == doctest::Approx(0.53));
  CHECK(q.d() == doctest::Approx(0.56));
}

TEST_CASE("hampath degenerate k=2") {
  GameState b = complete_board(2);
  HamPathMaker m(b, 0, 1, 1);
  NullBreaker nb;
  GameState fin = b;
  auto t = run_game(b, Bias(1, 1), m, nb, maker_goal_check(m), {Side::Maker, 100, 0, true}, &fin);
  CHECK(t.outcome.kind == Outcome::Kind::MakerWin);
  CHECK(t.maker_moves() == 1);
  CHECK(m.final_path(fin) == std::vector<Vertex>{0, 1});
}

TEST_CASE("hampath vs null breaker wastes no move once the second stage is heuristic") {
  for (int k : {30, 60}) {
    GameState b = complete_board(k);
    HamPathMaker m(b, 2, 7, 1);
    NullBreaker nb;
    GameState fin = b;
    auto t = run_game(b, Bias(1, 1), m, nb, maker_goal_check(m), {Side::Maker, 10000, 0, true}, &fin);
    REQUIRE(t.outcome.kind == Outcome::Kind::MakerWin);
    CHECK(t.maker_moves() == static_cast<std::size_t>(k - 1));
    auto p = m.final_path(fin);
    REQUIRE(p);
    CHECK(is_hamilton_path(maker_graph(fin), *p, 2, 7));
  }
}

TEST_CASE("hampath with an exact second stage may spend extra moves") {
  GameState b = complete_board(10);
  HamPathMaker m(b, 2, 7, 1);
  NullBreaker nb;
  GameState fin = b;
  auto t = run_game(b, Bias(1, 1), m, nb, maker_goal_check(m), {Side::Maker, 10000, 0, true}, &fin);
  REQUIRE(t.outcome.kind == Outcome::Kind::MakerWin);
  CHECK(t.maker_moves() >= 9);
  CHECK(m.result()["stage2"]["boards"][0]["result"]["condition_moves"].get<int>() > 0);
}

TEST_CASE("hampath k=30 with a running first stage") {
  HamPathParams params;
  params.gamma = 0.01;
  params.beta = 0.3;
  int wins = 0, stage1 = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GameState b = complete_board(30);
    HamPathMaker m(b, 0, 29, 1, params);
    RandomBreaker rb(1, seed);
    GameState fin = b;
    auto t = run_game(b, Bias(1, 1), m, rb, maker_goal_check(m), {Side::Breaker, 10000, seed, true}, &fin);
    if (m.result()["stage1_moves"].get<std::size_t>() > 0) ++stage1;
    if (t.outcome.kind != Outcome::Kind::MakerWin) continue;
    ++wins;
    auto p = m.final_path(fin);
    REQUIRE(p);
    CHECK(is_hamilton_path(maker_graph(fin), *p, 0, 29));
    CHECK(std::is_permutation(p->begin(), p->end(), [] {
      std::vector<Vertex> v(30);
      std::iota(v.begin(), v.end(), 0);
      return v;
    }().begin()));
  }
  MESSAGE("k=30 hampath wins: " << wins << "/100");
  CHECK(stage1 == 100);
  CHECK(wins > 0);
}

TEST_CASE("hampath connector handles a dangerous interior vertex") {
  // Breaker has starred vertex 9 and owns the edge from a's path end to it
  GameState b = complete_board(40);
  for (Vertex w = 1; w < 40; ++w)
    if (w != 9 && w % 3 == 0) b.claim(Side::Breaker, b.edge(9, w));
  b.claim(Side::Breaker, b.edge(0, 9));
  HamPathParams params;
  params.gamma = 0.01;
  params.beta = 0.3;
  HamPathMaker m(b, 0, 39, 1, params);
  NullBreaker nb;
  GameState fin = b;
  auto t = run_game(b, Bias(1, 1), m, nb, maker_goal_check(m), {Side::Maker, 10000, 0, true}, &fin);
  CHECK(m.result()["connectors"].get<int>() >= 1);
  CHECK(m.result()["max_connector_moves"].get<int>() <= static_cast<int>(11 * std::pow(40.0, 0.01)));
  REQUIRE(t.outcome.kind == Outcome::Kind::MakerWin);
  auto p = m.final_path(fin);
  REQUIRE(p);
  CHECK(is_hamilton_path(maker_graph(fin), *p, 0, 39));
}
