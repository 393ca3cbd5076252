#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/parallel.hpp"
#include "mbgame/rng.hpp"

using namespace mbgame;

namespace {

// Local Maker that takes the lowest free element and wins once it owns all of them.
class TakeAll : public Strategy {
 public:
  std::string name() const override { return "take-all"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& s, const TurnContext&) override {
    if (auto e = s.lowest_free()) return TurnPlan::single(*e);
    return TurnPlan::pass();
  }
  bool succeeded(const GameState& s) const override { return s.claims(Side::Maker) == s.size(); }
};

// Local Maker that wins by owning any single element.
class OwnOne : public TakeAll {
 public:
  bool succeeded(const GameState& s) const override { return s.claims(Side::Maker) >= 1; }
};

class RandomFree : public Strategy {
 public:
  RandomFree(int q, std::uint64_t seed) : q_(q), rng_(seed, 11) {}
  std::string name() const override { return "random"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& s, const TurnContext&) override {
    std::vector<ElementId> f;
    for (std::size_t e = 0; e < s.size(); ++e)
      if (s.is_free(static_cast<ElementId>(e))) f.push_back(static_cast<ElementId>(e));
    shuffle_in_place(f, rng_);
    if (f.size() > static_cast<std::size_t>(q_)) f.resize(static_cast<std::size_t>(q_));
    return TurnPlan{f, {}, std::nullopt};
  }

 private:
  int q_;
  CounterRng rng_;
};

template <typename S>
std::vector<SubGame> split_boards(const std::vector<std::size_t>& sizes) {
  std::vector<SubGame> games;
  ElementId next = 0;
  for (auto sz : sizes) {
    SubGame g;
    for (std::size_t i = 0; i < sz; ++i) g.elements.push_back(next++);
    g.local = GameState::generic(sz);
    g.strategy = std::make_unique<S>();
    games.push_back(std::move(g));
  }
  return games;
}

}  // namespace

TEST_CASE("inflated bias by hand") {
  CHECK(inflated_bias(2, 1, 20) == 4);
  CHECK(between_visit_bound(2, 1, 20) == doctest::Approx(1 + std::log(12.0)));
  CHECK(inflated_bias(1, 1, 2) == 2);
  CHECK(between_visit_bound(3, 2, 30) == doctest::Approx(2 * (1 + std::log(3.0 + 10.0))));
  CHECK(round_cap(20, 1) == 10);
  CHECK(round_cap(21, 2) == 7);
}

TEST_CASE("scheduler choices") {
  BoxScheduler s(2, 1, 10);
  CHECK(schedule_move(s, {0, 1}, {false, false}) == std::optional<std::size_t>(1));
  BoxScheduler t(2, 2, 10);
  CHECK(schedule_move(t, {1, 1}, {false, false}) == std::optional<std::size_t>(0));
  BoxScheduler u(3, 1, 10);
  CHECK(schedule_move(u, {0, 0, 1}, {false, false, true}) == std::optional<std::size_t>(0));
  CHECK(u.last_reset() == 2);
  BoxScheduler w(2, 1, 10);
  CHECK_FALSE(schedule_move(w, {0, 0}, {true, true}).has_value());
  BoxScheduler x(2, 1, 10);
  CHECK_THROWS_AS(x.feed({1, 1}), IllegalBoxMove);
}

TEST_CASE("one board behaves like its sub-strategy") {
  auto games = split_boards<TakeAll>({4});
  ParallelMaker pm(std::move(games), 1, 4);
  TakeAll plain;
  testing_support::LowestFree br(Side::Breaker, 1);
  GameState a = GameState::generic(4), b = GameState::generic(4);
  GameOptions o;
  o.first = Side::Maker;
  auto t1 = run_game(a, Bias(1, 1), pm, br, maker_goal_check(pm), o);
  testing_support::LowestFree br2(Side::Breaker, 1);
  auto t2 = run_game(b, Bias(1, 1), plain, br2, maker_goal_check(plain), o);
  REQUIRE(t1.moves.size() == t2.moves.size());
  for (std::size_t i = 0; i < t1.moves.size(); ++i) CHECK(t1.moves[i].claims == t2.moves[i].claims);
}

TEST_CASE("two one-element boards, Maker first, win in two moves") {
  auto games = split_boards<OwnOne>({1, 1});
  ParallelMaker pm(std::move(games), 1, 2);
  testing_support::LowestFree br(Side::Breaker, 0);
  GameOptions o;
  o.first = Side::Maker;
  auto t = run_game(GameState::generic(2), Bias(1, 1), pm, br, maker_goal_check(pm), o);
  CHECK(t.outcome.kind == Outcome::Kind::MakerWin);
  CHECK(t.maker_moves() == 2);
}

TEST_CASE("between-visit audit agrees with the live counter and the bound") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (int q : {1, 2, 3}) {
      auto games = split_boards<TakeAll>({6, 9, 4, 12});
      ParallelMaker pm(std::move(games), q, 31);
      RandomFree br(q, seed);
      GameOptions o;
      o.seed = seed;
      o.first = seed % 2 ? Side::Maker : Side::Breaker;
      auto t = run_game(GameState::generic(31), Bias(1, q), pm, br, maker_goal_check(pm), o);
      auto a = audit_between_visits(t, pm.board_of(), 4, q);
      CHECK(a.violations == 0);
      CHECK(pm.bound_violations() == 0);
      CHECK(a.max_between == pm.max_between_visits());
      CHECK(a.unattributed_maker_moves == 0);
      std::size_t sum = 0;
      for (auto v : a.visits) sum += v;
      CHECK(sum == t.maker_moves());
      CHECK(a.visits == pm.visits());
    }
  }
}

TEST_CASE("board budget overrun forfeits naming the board") {
  auto games = split_boards<TakeAll>({3});
  games[0].budget = 2;
  ParallelMaker pm(std::move(games), 1, 3);
  testing_support::LowestFree br(Side::Breaker, 0);
  GameOptions o;
  o.first = Side::Maker;
  auto t = run_game(GameState::generic(3), Bias(1, 1), pm, br, maker_goal_check(pm), o);
  CHECK(t.outcome.kind == Outcome::Kind::Forfeit);
  CHECK(t.outcome.reason.find("board 0") != std::string::npos);
}

TEST_CASE("overlapping boards are rejected") {
  std::vector<SubGame> games;
  for (int i = 0; i < 2; ++i) {
    SubGame g;
    g.elements = {0, 1};
    g.local = GameState::generic(2);
    g.strategy = std::make_unique<TakeAll>();
    games.push_back(std::move(g));
  }
  CHECK_THROWS_AS(ParallelMaker(std::move(games), 1, 2), GameError);
}
