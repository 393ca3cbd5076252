#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/potential.hpp"
#include "mbgame/rng.hpp"

using namespace mbgame;

namespace {

std::vector<std::vector<ElementId>> k5_triangles() {
  std::vector<std::vector<ElementId>> sets;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c)
        sets.push_back({complete_edge_index(5, a, b), complete_edge_index(5, a, c), complete_edge_index(5, b, c)});
  return sets;
}

Hypergraph random_family(CounterRng& rng, std::size_t size, std::size_t count) {
  Hypergraph h{size, {}};
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<ElementId> s;
    for (std::size_t e = 0; e < size; ++e)
      if (rng.below(3) == 0) s.push_back(static_cast<ElementId>(e));
    if (s.empty()) s.push_back(static_cast<ElementId>(rng.below(size)));
    h.sets.push_back(s);
  }
  h.normalize();
  return h;
}

}  // namespace

TEST_CASE("beck sums on hand-evaluated families") {
  CHECK(beck_sum(Hypergraph{2, {{0, 1}}}, Bias(1, 1)) == doctest::Approx(0.25));
  CHECK(beck_sum(Hypergraph{3, {{0}, {1}, {2}}}, Bias(1, 1)) == doctest::Approx(1.5));
  Hypergraph k5{10, k5_triangles()};
  REQUIRE(k5.sets.size() == 10);
  CHECK(beck_sum(k5, Bias(1, 1)) == doctest::Approx(1.25));
  CHECK(beck_sum_parallel(k5, Bias(1, 1)) == doctest::Approx(1.25));
  CHECK(std::isinf(log_beck_sum(Hypergraph{3, {}}, Bias(1, 1))));
  CHECK(beck_sum(Hypergraph{3, {}}, Bias(1, 1)) == 0.0);
}

TEST_CASE("criterion is a strict inequality") {
  CHECK(criterion_holds(Hypergraph{2, {{0, 1}}}, Bias(1, 1)));
  CHECK_FALSE(criterion_holds(Hypergraph{1, {{0}}}, Bias(1, 1)));
  CHECK_FALSE(criterion_holds(Hypergraph{10, k5_triangles()}, Bias(1, 1)));
  CHECK(criterion_holds(Hypergraph{3, {}}, Bias(1, 1)));
}

TEST_CASE("log domain agrees with the direct sum where both are finite") {
  Hypergraph big{1200, {}};
  std::vector<ElementId> all(1200);
  for (int i = 0; i < 1200; ++i) all[static_cast<std::size_t>(i)] = i;
  big.sets.push_back(all);
  big.sets.push_back({0, 1, 2});
  // |B|/p = 1200 > 500 forces the log path; the small set dominates.
  CHECK(beck_sum(big, Bias(1, 1)) == doctest::Approx(0.125));
  CHECK(criterion_holds(big, Bias(1, 1)));
  Hypergraph huge{1200, {all}};
  CHECK(log_beck_sum(huge, Bias(1, 1)) == doctest::Approx(-1200 * std::log(2.0)));
  CHECK(criterion_holds(huge, Bias(1, 1)));
}

TEST_CASE("erdos-selfridge special case on integer powers") {
  // With p = q = 1 every term is 2^-|B|; compare against exact dyadic sums.
  CounterRng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    auto h = random_family(rng, 7, 1 + rng.below(6));
    std::uint64_t numer = 0;  // Σ 2^(7-|B|), exact
    for (const auto& s : h.sets) numer += std::uint64_t{1} << (7 - s.size());
    CHECK(criterion_holds(h, Bias(1, 1)) == (2 * numer < 128));
    CHECK(beck_sum(h, Bias(1, 1)) == doctest::Approx(static_cast<double>(numer) / 128.0));
  }
}

TEST_CASE("potential breaker picks the heaviest element") {
  auto f = std::make_shared<const Hypergraph>(Hypergraph{3, {{0, 1}, {2}}});
  PotentialLedger ledger(f, Bias(1, 1));
  auto s = GameState::generic(3);
  CHECK(ledger.element_weight(0) == doctest::Approx(0.25));
  CHECK(ledger.element_weight(2) == doctest::Approx(0.5));
  CHECK(potential_breaker_move(ledger, s, 1) == std::vector<ElementId>{2});

  auto g = std::make_shared<const Hypergraph>(Hypergraph{2, {{0, 1}}});
  PotentialLedger l2(g, Bias(1, 1));
  auto s2 = GameState::generic(2);
  s2.claim(Side::Maker, 0);
  CHECK(potential_breaker_move(l2, s2, 1) == std::vector<ElementId>{1});

  auto s3 = GameState::generic(2);
  s3.claim(Side::Maker, 0);
  s3.claim(Side::Breaker, 1);
  PotentialLedger l3(g, Bias(1, 1));
  CHECK(potential_breaker_move(l3, s3, 1).empty());
}

TEST_CASE("ledger tracks recomputation through random playouts") {
  CounterRng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t size = 4 + rng.below(12);
    auto f = std::make_shared<const Hypergraph>(random_family(rng, size, 1 + rng.below(10)));
    const Bias bias(1, 1 + static_cast<int>(rng.below(3)));
    PotentialLedger ledger(f, bias);
    auto s = GameState::generic(size);
    while (s.free_count() > 0) {
      std::vector<ElementId> free;
      for (std::size_t e = 0; e < size; ++e)
        if (s.is_free(static_cast<ElementId>(e))) free.push_back(static_cast<ElementId>(e));
      const Side side = rng.below(2) ? Side::Maker : Side::Breaker;
      s.claim(side, free[rng.below(free.size())]);
      ledger.sync(s);
      REQUIRE(ledger.consistent(1e-9));
      for (std::size_t e = 0; e < size; ++e)
        CHECK(ledger.element_weight(static_cast<ElementId>(e)) ==
              doctest::Approx(ledger.recompute_element_weight(static_cast<ElementId>(e))).epsilon(1e-9));
    }
  }
}

TEST_CASE("potential breaker is deterministic") {
  CounterRng rng(8);
  auto f = std::make_shared<const Hypergraph>(random_family(rng, 12, 8));
  PotentialBreaker a(f, Bias(1, 2)), b(f, Bias(1, 2));
  auto s = GameState::generic(12);
  s.claim(Side::Maker, 3);
  CHECK(a.play(s, {}).claims == b.play(s, {}).claims);
}

TEST_CASE("fake moves wrapper") {
  using testing_support::LowestFree;
  CHECK_THROWS(FakeMovesMaker(std::make_unique<LowestFree>(Side::Maker, 1), 1, 1, GameState::generic(8)));
  CHECK_THROWS(FakeMovesMaker(std::make_unique<LowestFree>(Side::Maker, 1), 3, 0, GameState::generic(8)));

  // q=3 over q'=1 on 8 elements: every round stays legal to exhaustion.
  for (Side first : {Side::Maker, Side::Breaker}) {
    FakeMovesMaker maker(std::make_unique<LowestFree>(Side::Maker, 1), 3, 1, GameState::generic(8));
    LowestFree breaker(Side::Breaker, 1);
    auto t = run_game(GameState::generic(8), Bias(1, 1), maker, breaker, nullptr, {first, 100, 0, true});
    CHECK(t.outcome.kind == Outcome::Kind::Exhausted);
    for (const auto& m : t.moves) CHECK(m.claims.size() == 1);
    CHECK(maker.shadow().free_count() <= 8);
  }
}
