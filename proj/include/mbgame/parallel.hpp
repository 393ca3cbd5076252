#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mbgame/box.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/strategy.hpp"

namespace mbgame {

// ⌈total/(q+1)⌉, the number of rounds the composite game can last.
std::size_t round_cap(std::size_t total_elements, int q);
// ⌈q(1 + ln(m + ⌈total/(q+1)⌉))⌉
int inflated_bias(std::size_t m, int q, std::size_t total_elements);
// q(1 + ln(m + k_cap)) before the ceiling.
double between_visit_bound(std::size_t m, int q, std::size_t total_elements);

/// Maker's board choice as BoxBreaker of rBox(m, q): one box per board, fed
/// with Breaker's claims on that board. The heaviest box (ties lowest) is
/// reset; Maker plays there unless that board is already won, in which case
/// he plays on the lowest-index board not yet won.
class BoxScheduler {
 public:
  BoxScheduler(std::size_t m, int q, std::size_t total_elements);
  void feed(const std::vector<int>& claims_per_board);
  // nullopt once every board is finished.
  std::optional<std::size_t> choose(const std::vector<bool>& finished);
  const BoxState& boxes() const { return boxes_; }
  std::size_t k_cap() const { return k_cap_; }
  std::size_t last_reset() const { return last_reset_; }

 private:
  BoxState boxes_;
  std::size_t k_cap_;
  std::size_t last_reset_ = 0;
};

// feed + choose in one call.
std::optional<std::size_t> schedule_move(BoxScheduler& sched, const std::vector<int>& breaker_claims_per_board,
                                         const std::vector<bool>& finished);

struct SubGame {
  std::vector<ElementId> elements;  // global ids; the local id of elements[i] is i
  GameState local;                  // board of the sub-game, in local ids
  std::unique_ptr<Strategy> strategy;
  std::function<bool(const GameState&)> won;  // defaults to strategy->succeeded
  std::size_t budget = 0;                     // t_i; 0 means no budget
};

/// Plays m disjoint sub-games under a global (1:q) bias, choosing the board
/// of every move with BoxScheduler and delegating the move to that board's
/// strategy.
class ParallelMaker : public Strategy {
 public:
  ParallelMaker(std::vector<SubGame> games, int q, std::size_t global_size);
  std::string name() const override { return "parallel"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;
  std::vector<std::string> check_invariants(const GameState& state) const override;
  nlohmann::json parameters() const override;
  nlohmann::json result() const override;

  std::size_t boards() const { return games_.size(); }
  const SubGame& game(std::size_t i) const { return games_[i]; }
  // Board i as it stands in `global` (local ids).
  GameState local_view(std::size_t i, const GameState& global) const;
  const std::vector<std::size_t>& visits() const { return visits_; }
  long max_between_visits() const { return max_between_; }
  std::size_t bound_violations() const { return bound_violations_; }
  std::size_t outside_claims() const { return outside_; }
  // -1 for elements outside every board.
  const std::vector<int>& board_of() const { return board_of_; }

 private:
  void sync(const GameState& state);
  bool finished(std::size_t i, const GameState& local) const;

  std::vector<SubGame> games_;
  int q_;
  std::vector<int> board_of_;
  std::vector<ElementId> local_of_;
  std::vector<Owner> seen_;
  std::size_t total_;
  BoxScheduler sched_;
  std::vector<int> since_move_;                    // per board, Breaker claims since Maker's last move
  std::vector<long> since_visit_;                  // per board, Breaker claims since Maker last played there
  std::vector<std::vector<ElementId>> unseen_by_;  // per board, local ids the sub-strategy has not been shown
  std::vector<std::size_t> visits_;
  std::size_t visits_total_ = 0;
  long max_between_ = 0;
  std::size_t bound_violations_ = 0;
  std::size_t outside_ = 0;
  mutable std::vector<std::string> pending_;
};

struct VisitAudit {
  double bound = 0;
  long max_between = 0;
  std::size_t violations = 0;
  std::optional<std::size_t> first_violation;  // move index
  std::vector<std::size_t> visits;             // Maker moves per board
  std::size_t unattributed_maker_moves = 0;
};

/// Recounts, from the move records alone, Breaker's claims on each board
/// between consecutive Maker visits (read from the "board=i" annotations).
VisitAudit audit_between_visits(const Transcript& t, const std::vector<int>& board_of, std::size_t m, int q);

}  // namespace mbgame
