#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mbgame/core.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

class IllegalBoxMove : public GameError {
 public:
  using GameError::GameError;
};

/// Box weights of rBox(m,q) / rCBox(m). In integral mode `units` holds the
/// element counts and `weights` the bridged reals units/q.
struct BoxState {
  enum class Mode { Continuous, Integral };
  Mode mode = Mode::Continuous;
  int q = 1;
  std::vector<double> weights;
  std::vector<long> units;
  std::size_t round = 0;

  static BoxState continuous(std::size_t m);
  static BoxState integral(std::size_t m, int q);
  std::size_t m() const { return weights.size(); }
  void reset(std::size_t box);
  // Adds deltas (continuous) after checking they are ≥ 0 and sum to 1 within 1e-12.
  void add(const std::vector<double>& deltas);
  // Adds q_i elements per box (integral); Σ q_i ≤ q.
  void add_units(const std::vector<int>& claims);
};

// Box of maximum weight, ties to the lowest index.
std::size_t cbox_breaker_reset(const BoxState& state);
std::size_t argmax_lowest(const std::vector<double>& values);

// deltas_i = q_i / q; throws IllegalBoxMove when Σ q_i > q or some q_i < 0.
std::vector<double> rbox_bridge(const std::vector<int>& claims, int q);

double potential_phi(const BoxState& state);
double potential_phi(const std::vector<double>& weights);

// q(1 + ln(m + k))
double box_weight_bound(int q, std::size_t m, std::size_t k);

/// BoxMaker adversaries. Integral moves hand out q elements, continuous moves
/// a total weight of 1.
class BoxAdversary {
 public:
  virtual ~BoxAdversary() = default;
  virtual std::string name() const = 0;
  virtual std::vector<int> integral_move(const BoxState& state, CounterRng& rng) = 0;
  virtual std::vector<double> continuous_move(const BoxState& state, CounterRng& rng) = 0;
  // Told which box was reset after each round.
  virtual void observe_reset(std::size_t) {}
};

std::vector<std::string> box_adversary_names();
// uniform, single-box, lrr-piler, random, potential-greedy, harmonic
std::unique_ptr<BoxAdversary> make_box_adversary(const std::string& name);

struct BoxRound {
  std::size_t round = 0;             // 1-based
  std::vector<double> after_maker;   // bridged weights once BoxMaker has moved
  std::size_t reset = 0;
  double phi_before = 0, phi_after_maker = 0, phi_after_reset = 0;
  double max_after_maker = 0, max_after_reset = 0;
  long max_units_after_maker = 0;    // integral mode
  double bound = 0;                  // q(1 + ln(m + round)), element units
  std::vector<int> claims;           // integral mode
};

struct BoxTrace {
  std::size_t m = 0;
  int q = 1;
  BoxState::Mode mode = BoxState::Mode::Continuous;
  std::string adversary;
  std::vector<BoxRound> rounds;
  std::size_t weight_violations = 0;  // weight above the bound at either checkpoint
  std::size_t phi_violations = 0;     // per-round Φ increment above 1 + 1e-9
  double max_weight = 0;              // in element units
  double max_phi_increment = 0;
  std::string forfeit;                // illegal adversary move
};

/// k rounds of (BoxMaker move, max-weight reset). Checks the weight bound
/// after BoxMaker's move and after the reset, and the Φ increment per round.
BoxTrace play_rbox(std::size_t m, int q, std::size_t k, BoxAdversary& adversary, std::uint64_t seed,
                   BoxState::Mode mode, bool keep_rounds = true);

void write_box_csv(std::ostream& out, const BoxTrace& trace);

}  // namespace mbgame
