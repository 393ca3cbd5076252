#pragma once

#include "mbgame/strategy.hpp"

namespace testing_support {

using namespace mbgame;

// Claims the lowest Free elements, up to `budget` per turn.
class LowestFree : public Strategy {
 public:
  LowestFree(Side side, int budget) : side_(side), budget_(budget) {}
  std::string name() const override { return "lowest-free"; }
  Side side() const override { return side_; }
  TurnPlan play(const GameState& s, const TurnContext&) override {
    TurnPlan plan;
    for (std::size_t e = 0; e < s.size() && static_cast<int>(plan.claims.size()) < budget_; ++e)
      if (s.is_free(static_cast<ElementId>(e))) plan.claims.push_back(static_cast<ElementId>(e));
    return plan;
  }

 private:
  Side side_;
  int budget_;
};

}  // namespace testing_support
