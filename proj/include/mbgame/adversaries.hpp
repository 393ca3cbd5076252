#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mbgame/rng.hpp"
#include "mbgame/strategy.hpp"

namespace mbgame {

/// q uniformly random Free elements per turn.
class RandomBreaker : public Strategy {
 public:
  RandomBreaker(int q, std::uint64_t seed);
  std::string name() const override { return "random"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;

 private:
  int q_;
  CounterRng rng_;
};

class NullBreaker : public Strategy {
 public:
  std::string name() const override { return "null"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState&, const TurnContext&) override { return TurnPlan::pass(); }
};

/// Piles Breaker edges on one vertex: the vertex of largest Breaker degree that
/// still has a free edge, joined to its free neighbour of largest Maker degree.
/// On generic boards it claims the lowest Free elements.
class MaxDegreeBreaker : public Strategy {
 public:
  explicit MaxDegreeBreaker(int q) : q_(q) {}
  std::string name() const override { return "max-degree"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;

 private:
  int q_;
};

/// Tries to isolate the vertex of smallest Maker degree that still has a
/// free edge, claiming its free edges in order of the other endpoint.
class IsolatorBreaker : public Strategy {
 public:
  explicit IsolatorBreaker(int q) : q_(q) {}
  std::string name() const override { return "isolator"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;

 private:
  int q_;
};

/// Triangle-factor delayer on K_n. After Maker claims (x,y): the lowest z with
/// (x,z) Maker's and (y,z) free gives (y,z); otherwise the lowest z with (y,z)
/// Maker's and (x,z) free gives (x,z); otherwise the lowest free edge.
class TriangleDelayer : public Strategy {
 public:
  explicit TriangleDelayer(int q = 1) : q_(q) {}
  std::string name() const override { return "triangle-delayer"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;

 private:
  int q_;
};

// One edge completing the delayer rule for Maker's edge (x, y), or the fallback.
std::optional<ElementId> triangle_delayer_move(const GameState& state, Vertex x, Vertex y);

std::vector<std::string> breaker_names();
// random, null, max-degree, isolator, triangle-delayer, lowest
std::unique_ptr<Strategy> make_breaker(const std::string& name, int q, std::uint64_t seed);

/// Maker strategies for the triangle-factor game on K_n.
class TriangleMaker : public Strategy {
 public:
  enum class Kind { Random, Closer, Planner };
  TriangleMaker(Kind kind, std::uint64_t seed);
  std::string name() const override;
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;

 private:
  Kind kind_;
  CounterRng rng_;
};

std::vector<std::string> triangle_maker_names();  // random, closer, planner
std::unique_ptr<Strategy> make_triangle_maker(const std::string& name, std::uint64_t seed);

bool has_triangle_factor(const GameState& state);

}  // namespace mbgame
