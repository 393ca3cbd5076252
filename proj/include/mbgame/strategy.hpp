#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbgame/core.hpp"

namespace mbgame {

/// What a strategy sees when it is asked to move.
struct TurnContext {
  std::span<const ElementId> opponent_last;  // the opponent's most recent turn
  bool opponent_moved = true;                // false only on the opening turn of the first mover
  std::size_t turn = 0;                      // 0-based count of this player's turns so far
};

struct TurnPlan {
  std::vector<ElementId> claims;
  std::string note;
  std::optional<std::string> forfeit;

  static TurnPlan pass(std::string note = {}) { return TurnPlan{{}, std::move(note), std::nullopt}; }
  static TurnPlan single(ElementId e, std::string note = {}) { return TurnPlan{{e}, std::move(note), std::nullopt}; }
  static TurnPlan give_up(std::string reason) { return TurnPlan{{}, {}, std::move(reason)}; }
};

/// Move-selection contract: every returned element is Free at call time and
/// at most bias-many elements are returned.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;
  virtual Side side() const = 0;
  virtual TurnPlan play(const GameState& state, const TurnContext& ctx) = 0;

  // Maker strategies that know their goal report completion here.
  virtual bool succeeded(const GameState&) const { return false; }
  // Realized parameters and guard flags, echoed into transcript headers.
  virtual nlohmann::json parameters() const { return nlohmann::json::object(); }
  // Per-move invariant audit; each string is one violation.
  virtual std::vector<std::string> check_invariants(const GameState&) const { return {}; }
  // Structured result attached to the transcript footer (e.g. a final embedding).
  virtual nlohmann::json result() const { return nullptr; }
};

}  // namespace mbgame
