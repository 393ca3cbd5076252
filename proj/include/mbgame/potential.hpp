#pragma once

#include <cmath>
#include <memory>
#include <optional>
#include <vector>

#include "mbgame/hypergraph.hpp"
#include "mbgame/strategy.hpp"

namespace mbgame {

// Σ_B (1+q)^(-|B|/p). Switches to log-sum-exp when some |B|/p exceeds 500.
double beck_sum(const Hypergraph& f, Bias bias);
// Natural log of beck_sum; finite even when beck_sum underflows. -inf for an empty family.
double log_beck_sum(const Hypergraph& f, Bias bias);
// OpenMP reduction over the sets; agrees with beck_sum up to summation order.
double beck_sum_parallel(const Hypergraph& f, Bias bias);

/// Strict inequality beck_sum < 1/(1+q); equality fails.
bool criterion_holds(const Hypergraph& f, Bias bias);

/// Running Erdős–Selfridge bookkeeping for one playout. The `blocker` side's
/// claims kill every set they touch; the other side's claims lower u(B), the
/// number of elements of B it has not yet claimed. Every alive set carries
/// weight lambda^(-u(B)) with lambda = (1+q)^(1/p).
class PotentialLedger {
 public:
  PotentialLedger(std::shared_ptr<const Hypergraph> f, Bias bias, Side blocker = Side::Breaker);

  double lambda() const { return lambda_; }
  Side blocker() const { return blocker_; }
  const Hypergraph& hypergraph() const { return *f_; }

  // Applies every claim of `state` this ledger has not seen yet.
  void sync(const GameState& state);
  void apply(Side side, ElementId e);
  bool seen_free(ElementId e) const { return seen_[static_cast<std::size_t>(e)] == Owner::Free; }

  double running_sum() const { return running_scaled_ * std::exp(-log_scale_); }
  double recompute_sum() const;
  // Σ over alive sets containing e of lambda^(-u(B)), maintained incrementally.
  double element_weight(ElementId e) const { return weight_[static_cast<std::size_t>(e)] * std::exp(-log_scale_); }
  double recompute_element_weight(ElementId e) const;

  bool alive(std::size_t set) const { return alive_[set] != 0; }
  int unclaimed(std::size_t set) const { return unclaimed_[set]; }
  std::size_t alive_count() const { return alive_count_; }
  // True when the maintained running sum matches recomputation to rel_tol.
  bool consistent(double rel_tol = 1e-9) const;

  // Greedy pick: the seen-free element of maximum weight, ties to the lowest id.
  std::optional<ElementId> best_element() const;

 private:
  double set_weight_scaled(int u) const { return std::exp(log_scale_ - u * log_lambda_); }

  std::shared_ptr<const Hypergraph> f_;
  Side blocker_;
  double lambda_;
  double log_lambda_;
  double log_scale_ = 0.0;
  std::vector<std::size_t> incidence_offset_;
  std::vector<std::uint32_t> incidence_;
  std::vector<std::uint8_t> alive_;
  std::vector<int> unclaimed_;
  std::vector<double> weight_;  // scaled by exp(log_scale_)
  std::vector<std::uint32_t> alive_through_;
  std::vector<Owner> seen_;
  double running_scaled_ = 0.0;
  std::size_t alive_count_ = 0;
};

/// Up to q Free elements chosen one at a time, each maximizing the alive
/// weight through it; the ledger records each pick as a blocker claim.
std::vector<ElementId> potential_breaker_move(PotentialLedger& ledger, const GameState& state, int q);

/// Breaker playing the greedy potential rule on an explicit hypergraph.
class PotentialBreaker : public Strategy {
 public:
  PotentialBreaker(std::shared_ptr<const Hypergraph> f, Bias bias);
  std::string name() const override { return "potential"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  std::vector<std::string> check_invariants(const GameState& state) const override;
  nlohmann::json parameters() const override;

 private:
  Bias bias_;
  mutable PotentialLedger ledger_;
};

/// Runs a (1:q) Maker strategy against a (1:q') opponent by handing the
/// opponent, in a private shadow board, enough lowest-id fictitious claims to
/// bring each of its turns up to q elements.
class FakeMovesMaker : public Strategy {
 public:
  FakeMovesMaker(std::unique_ptr<Strategy> inner, int q, int q_prime, GameState shadow);
  std::string name() const override { return "fake-moves(" + inner_->name() + ")"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override { return inner_->succeeded(state); }
  nlohmann::json parameters() const override;
  const GameState& shadow() const { return shadow_; }
  std::size_t fake_claims() const { return fakes_; }

 private:
  std::unique_ptr<Strategy> inner_;
  int q_;
  int q_prime_;
  GameState shadow_;
  std::size_t fakes_ = 0;
};

}  // namespace mbgame
