#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mbgame/box.hpp"

using namespace mbgame;

TEST_CASE("reset picks the heaviest box, ties lowest") {
  BoxState s = BoxState::continuous(3);
  s.weights = {0.2, 0.9, 0.9};
  CHECK(cbox_breaker_reset(s) == 1);
  CHECK(cbox_breaker_reset(BoxState::continuous(4)) == 0);
  BoxState one = BoxState::continuous(1);
  one.weights = {7.5};
  CHECK(cbox_breaker_reset(one) == 0);
}

TEST_CASE("integral bridge") {
  auto d = rbox_bridge({2, 2, 0}, 4);
  CHECK(d == std::vector<double>{0.5, 0.5, 0.0});
  CHECK(rbox_bridge({5, 0}, 5) == std::vector<double>{1.0, 0.0});
  CHECK_THROWS_AS(rbox_bridge({2, 2}, 3), IllegalBoxMove);
  CHECK_THROWS_AS(rbox_bridge({-1, 1}, 3), IllegalBoxMove);
}

TEST_CASE("potential phi") {
  CHECK(potential_phi(std::vector<double>{0, 0, 0}) == doctest::Approx(3));
  CHECK(potential_phi(std::vector<double>{1}) == doctest::Approx(std::exp(1.0)));
  CHECK(potential_phi(std::vector<double>{std::log(2.0), std::log(3.0)}) == doctest::Approx(5));
}

TEST_CASE("continuous deltas must sum to one") {
  BoxState s = BoxState::continuous(2);
  CHECK_THROWS_AS(s.add({0.5, 0.4}), IllegalBoxMove);
  CHECK_THROWS_AS(s.add({1.5, -0.5}), IllegalBoxMove);
  s.add({0.25, 0.75});
  CHECK(s.weights[1] == doctest::Approx(0.75));
}

TEST_CASE("single box never exceeds q after a round") {
  for (const auto& name : box_adversary_names()) {
    auto adv = make_box_adversary(name);
    auto tr = play_rbox(1, 3, 50, *adv, 7, BoxState::Mode::Integral);
    for (const auto& r : tr.rounds) {
      CHECK(r.max_after_reset == 0.0);
      CHECK(r.max_units_after_maker <= 3);
    }
  }
}

TEST_CASE("two boxes, alternating adversary, q=1") {
  // hand simulation: each round one unit lands on a box that is reset at once
  auto adv = make_box_adversary("single-box");
  auto tr = play_rbox(2, 1, 2, *adv, 0, BoxState::Mode::Integral);
  CHECK(tr.max_weight <= 1.0);
  CHECK(tr.max_weight <= 1.0 + std::log(4.0));
  CHECK(tr.weight_violations == 0);
}

TEST_CASE("lrr piler, m=10, q=3, k=1000 stays under 3(1+ln 1010)") {
  auto adv = make_box_adversary("lrr-piler");
  auto tr = play_rbox(10, 3, 1000, *adv, 1, BoxState::Mode::Integral, false);
  CHECK(tr.weight_violations == 0);
  CHECK(tr.max_weight <= 3 * (1 + std::log(1010.0)));
  CHECK(3 * (1 + std::log(1010.0)) == doctest::Approx(23.76).epsilon(1e-3));
}

TEST_CASE("every adversary, both modes, modest ranges") {
  for (const auto& name : box_adversary_names())
    for (std::size_t m : {1u, 2u, 7u, 20u})
      for (int q : {1, 2, 5}) {
        auto a = make_box_adversary(name);
        auto ti = play_rbox(m, q, 300, *a, m * 31 + static_cast<std::size_t>(q), BoxState::Mode::Integral, false);
        CHECK_MESSAGE(ti.weight_violations == 0, name, " m=", m, " q=", q);
        CHECK(ti.forfeit.empty());
        auto b = make_box_adversary(name);
        auto tc = play_rbox(m, q, 300, *b, m * 31 + static_cast<std::size_t>(q), BoxState::Mode::Continuous, false);
        CHECK(tc.weight_violations == 0);
        CHECK(tc.phi_violations == 0);
        CHECK(tc.max_phi_increment <= 1.0 + 1e-9);
      }
}

TEST_CASE("mean value inequality on a grid") {
  for (int i = 0; i <= 100; ++i)
    for (int j = 1; j <= 50; ++j) {
      const double x = -5.0 + 0.1 * i, d = j / 50.0;
      CHECK(std::exp(x + d) - std::exp(x) <= d * std::exp(x + d) + 1e-12);
    }
}

TEST_CASE("csv trace has one row per round") {
  auto adv = make_box_adversary("uniform");
  auto tr = play_rbox(3, 2, 5, *adv, 0, BoxState::Mode::Integral);
  std::ostringstream out;
  write_box_csv(out, tr);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line.rfind("round,", 0) == 0);
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("random adversary is replayable") {
  auto a = make_box_adversary("random");
  auto b = make_box_adversary("random");
  auto t1 = play_rbox(5, 3, 40, *a, 99, BoxState::Mode::Integral);
  auto t2 = play_rbox(5, 3, 40, *b, 99, BoxState::Mode::Integral);
  REQUIRE(t1.rounds.size() == t2.rounds.size());
  for (std::size_t i = 0; i < t1.rounds.size(); ++i) CHECK(t1.rounds[i].claims == t2.rounds[i].claims);
}
