#include "mbgame/box.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace mbgame {

BoxState BoxState::continuous(std::size_t m) {
  if (m == 0) throw GameError("box game needs m >= 1");
  BoxState s;
  s.weights.assign(m, 0.0);
  return s;
}

BoxState BoxState::integral(std::size_t m, int q) {
  if (m == 0 || q < 1) throw GameError("box game needs m >= 1 and q >= 1");
  BoxState s;
  s.mode = Mode::Integral;
  s.q = q;
  s.weights.assign(m, 0.0);
  s.units.assign(m, 0);
  return s;
}

void BoxState::reset(std::size_t box) {
  weights.at(box) = 0.0;
  if (mode == Mode::Integral) units.at(box) = 0;
}

void BoxState::add(const std::vector<double>& deltas) {
  if (deltas.size() != m()) throw IllegalBoxMove("delta vector has the wrong length");
  double sum = 0.0;
  for (double d : deltas) {
    if (!(d >= 0.0)) throw IllegalBoxMove("negative weight delta");
    sum += d;
  }
  if (mode == Mode::Continuous && std::abs(sum - 1.0) > 1e-12) throw IllegalBoxMove("deltas must sum to 1");
  if (mode == Mode::Integral && sum > 1.0 + 1e-12) throw IllegalBoxMove("deltas exceed 1");
  for (std::size_t i = 0; i < m(); ++i) weights[i] += deltas[i];
}

void BoxState::add_units(const std::vector<int>& claims) {
  if (mode != Mode::Integral) throw GameError("unit claims need integral mode");
  if (claims.size() != m()) throw IllegalBoxMove("claim vector has the wrong length");
  rbox_bridge(claims, q);
  for (std::size_t i = 0; i < m(); ++i) {
    units[i] += claims[i];
    weights[i] = static_cast<double>(units[i]) / q;
  }
}

std::size_t argmax_lowest(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

std::size_t cbox_breaker_reset(const BoxState& state) {
  if (state.mode == BoxState::Mode::Integral) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < state.units.size(); ++i)
      if (state.units[i] > state.units[best]) best = i;
    return best;
  }
  return argmax_lowest(state.weights);
}

std::vector<double> rbox_bridge(const std::vector<int>& claims, int q) {
  long total = 0;
  for (int c : claims) {
    if (c < 0) throw IllegalBoxMove("negative claim count");
    total += c;
  }
  if (total > q) throw IllegalBoxMove("BoxMaker claimed " + std::to_string(total) + " > q = " + std::to_string(q));
  std::vector<double> out(claims.size());
  for (std::size_t i = 0; i < claims.size(); ++i) out[i] = static_cast<double>(claims[i]) / q;
  return out;
}

double potential_phi(const std::vector<double>& weights) {
  double phi = 0.0;
  for (double w : weights) phi += std::exp(w);
  return phi;
}

double potential_phi(const BoxState& state) { return potential_phi(state.weights); }

double box_weight_bound(int q, std::size_t m, std::size_t k) {
  return q * (1.0 + std::log(static_cast<double>(m + k)));
}

namespace {

std::vector<int> spread_units(std::size_t m, int q, const std::vector<std::size_t>& targets, std::size_t offset) {
  std::vector<int> out(m, 0);
  for (int u = 0; u < q; ++u) out[targets[(offset + static_cast<std::size_t>(u)) % targets.size()]]++;
  return out;
}

class Uniform : public BoxAdversary {
 public:
  std::string name() const override { return "uniform"; }
  std::vector<int> integral_move(const BoxState& s, CounterRng&) override {
    std::vector<std::size_t> all(s.m());
    std::iota(all.begin(), all.end(), 0);
    return spread_units(s.m(), s.q, all, s.round * static_cast<std::size_t>(s.q));
  }
  std::vector<double> continuous_move(const BoxState& s, CounterRng&) override {
    return std::vector<double>(s.m(), 1.0 / static_cast<double>(s.m()));
  }
};

class SingleBox : public BoxAdversary {
 public:
  std::string name() const override { return "single-box"; }
  std::vector<int> integral_move(const BoxState& s, CounterRng&) override {
    std::vector<int> out(s.m(), 0);
    out[0] = s.q;
    return out;
  }
  std::vector<double> continuous_move(const BoxState& s, CounterRng&) override {
    std::vector<double> out(s.m(), 0.0);
    out[0] = 1.0;
    return out;
  }
};

class LeastRecentlyReset : public BoxAdversary {
 public:
  std::string name() const override { return "lrr-piler"; }
  std::vector<int> integral_move(const BoxState& s, CounterRng&) override {
    std::vector<int> out(s.m(), 0);
    out[target(s.m())] = s.q;
    return out;
  }
  std::vector<double> continuous_move(const BoxState& s, CounterRng&) override {
    std::vector<double> out(s.m(), 0.0);
    out[target(s.m())] = 1.0;
    return out;
  }
  void observe_reset(std::size_t box) override { last_[box] = ++clock_; }

 private:
  std::size_t target(std::size_t m) {
    if (last_.size() != m) last_.assign(m, 0);
    return static_cast<std::size_t>(std::min_element(last_.begin(), last_.end()) - last_.begin());
  }
  std::vector<long> last_;
  long clock_ = 0;
};

class RandomSplit : public BoxAdversary {
 public:
  std::string name() const override { return "random"; }
  std::vector<int> integral_move(const BoxState& s, CounterRng& rng) override {
    std::vector<int> out(s.m(), 0);
    for (int u = 0; u < s.q; ++u) out[rng.below(s.m())]++;
    return out;
  }
  std::vector<double> continuous_move(const BoxState& s, CounterRng& rng) override {
    std::vector<double> out(s.m(), 0.0);
    double sum = 0.0;
    for (auto& x : out) sum += (x = -std::log(1.0 - rng.uniform01()));
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) acc += (out[i] /= sum);
    out.back() = std::max(0.0, 1.0 - acc);
    return out;
  }
};

// Piles everything on the box that leaves the largest Φ after the reset.
class PotentialGreedy : public BoxAdversary {
 public:
  std::string name() const override { return "potential-greedy"; }
  std::vector<int> integral_move(const BoxState& s, CounterRng&) override {
    std::vector<int> out(s.m(), 0);
    out[pick(s, 1.0)] = s.q;
    return out;
  }
  std::vector<double> continuous_move(const BoxState& s, CounterRng&) override {
    std::vector<double> out(s.m(), 0.0);
    out[pick(s, 1.0)] = 1.0;
    return out;
  }

 private:
  static std::size_t pick(const BoxState& s, double mass) {
    std::size_t best = 0;
    double best_phi = -1.0;
    for (std::size_t i = 0; i < s.m(); ++i) {
      std::vector<double> w = s.weights;
      w[i] += mass;
      w[argmax_lowest(w)] = 0.0;
      const double phi = potential_phi(w);
      if (phi > best_phi) best_phi = phi, best = i;
    }
    return best;
  }
};

// Spreads evenly over the boxes not reset since the current cycle began;
// drives the maximum up like the harmonic series.
class Harmonic : public BoxAdversary {
 public:
  std::string name() const override { return "harmonic"; }
  std::vector<int> integral_move(const BoxState& s, CounterRng&) override {
    auto live = survivors(s.m());
    return spread_units(s.m(), s.q, live, 0);
  }
  std::vector<double> continuous_move(const BoxState& s, CounterRng&) override {
    auto live = survivors(s.m());
    std::vector<double> out(s.m(), 0.0);
    for (std::size_t i : live) out[i] = 1.0 / static_cast<double>(live.size());
    return out;
  }
  void observe_reset(std::size_t box) override {
    if (box < alive_.size()) alive_[box] = 0;
  }

 private:
  std::vector<std::size_t> survivors(std::size_t m) {
    if (alive_.size() != m || std::count(alive_.begin(), alive_.end(), 1) == 0) alive_.assign(m, 1);
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < m; ++i)
      if (alive_[i]) live.push_back(i);
    return live;
  }
  std::vector<std::uint8_t> alive_;
};

}  // namespace

std::vector<std::string> box_adversary_names() {
  return {"uniform", "single-box", "lrr-piler", "random", "potential-greedy", "harmonic"};
}

std::unique_ptr<BoxAdversary> make_box_adversary(const std::string& name) {
  if (name == "uniform") return std::make_unique<Uniform>();
  if (name == "single-box") return std::make_unique<SingleBox>();
  if (name == "lrr-piler") return std::make_unique<LeastRecentlyReset>();
  if (name == "random") return std::make_unique<RandomSplit>();
  if (name == "potential-greedy") return std::make_unique<PotentialGreedy>();
  if (name == "harmonic") return std::make_unique<Harmonic>();
  throw GameError("unknown box adversary '" + name + "'");
}

BoxTrace play_rbox(std::size_t m, int q, std::size_t k, BoxAdversary& adversary, std::uint64_t seed,
                   BoxState::Mode mode, bool keep_rounds) {
  BoxTrace trace;
  trace.m = m;
  trace.q = q;
  trace.mode = mode;
  trace.adversary = adversary.name();
  BoxState state = mode == BoxState::Mode::Integral ? BoxState::integral(m, q) : BoxState::continuous(m);
  CounterRng rng(seed, 0xB0C5);
  const int unit = mode == BoxState::Mode::Integral ? q : 1;

  auto in_units = [&](const BoxState& s) {
    if (mode == BoxState::Mode::Integral) return static_cast<double>(*std::max_element(s.units.begin(), s.units.end()));
    return *std::max_element(s.weights.begin(), s.weights.end());
  };

  for (std::size_t j = 1; j <= k; ++j) {
    BoxRound r;
    r.round = j;
    r.phi_before = potential_phi(state);
    try {
      if (mode == BoxState::Mode::Integral) {
        r.claims = adversary.integral_move(state, rng);
        state.add_units(r.claims);
      } else {
        state.add(adversary.continuous_move(state, rng));
      }
    } catch (const IllegalBoxMove& e) {
      trace.forfeit = "round " + std::to_string(j) + ": " + e.what();
      break;
    }
    r.after_maker = state.weights;
    r.phi_after_maker = potential_phi(state);
    r.max_after_maker = in_units(state);
    if (mode == BoxState::Mode::Integral) r.max_units_after_maker = static_cast<long>(r.max_after_maker);
    r.bound = box_weight_bound(unit, m, j);

    r.reset = cbox_breaker_reset(state);
    state.reset(r.reset);
    ++state.round;
    adversary.observe_reset(r.reset);
    r.phi_after_reset = potential_phi(state);
    r.max_after_reset = in_units(state);

    const double slack = mode == BoxState::Mode::Integral ? 0.0 : 1e-9;
    if (r.max_after_maker > r.bound + slack || r.max_after_reset > r.bound + slack) ++trace.weight_violations;
    const double inc = r.phi_after_reset - r.phi_before;
    trace.max_phi_increment = std::max(trace.max_phi_increment, inc);
    if (inc > 1.0 + 1e-9) ++trace.phi_violations;
    trace.max_weight = std::max(trace.max_weight, r.max_after_maker);
    if (keep_rounds) trace.rounds.push_back(std::move(r));
  }
  return trace;
}

void write_box_csv(std::ostream& out, const BoxTrace& trace) {
  out << "round";
  for (std::size_t i = 0; i < trace.m; ++i) out << ",w" << i;
  out << ",reset,phi,bound\n";
  for (const auto& r : trace.rounds) {
    out << r.round;
    for (double w : r.after_maker) out << ',' << (trace.mode == BoxState::Mode::Integral ? w * trace.q : w);
    out << ',' << r.reset << ',' << r.phi_after_maker << ',' << r.bound << '\n';
  }
}

}  // namespace mbgame
