#include "mbgame/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mbgame {

namespace {

constexpr double kLogDomainRatio = 500.0;

bool needs_log_domain(const Hypergraph& f, Bias bias) {
  return static_cast<double>(f.max_set_size()) / bias.p > kLogDomainRatio;
}

}  // namespace

double log_beck_sum(const Hypergraph& f, Bias bias) {
  if (f.sets.empty()) return -std::numeric_limits<double>::infinity();
  const double log_base = std::log1p(static_cast<double>(bias.q));
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& s : f.sets) top = std::max(top, -static_cast<double>(s.size()) / bias.p * log_base);
  double acc = 0.0;
  for (const auto& s : f.sets) acc += std::exp(-static_cast<double>(s.size()) / bias.p * log_base - top);
  return top + std::log(acc);
}

double beck_sum(const Hypergraph& f, Bias bias) {
  if (needs_log_domain(f, bias)) return std::exp(log_beck_sum(f, bias));
  const double base = 1.0 + bias.q;
  double sum = 0.0;
  for (const auto& s : f.sets) sum += std::pow(base, -static_cast<double>(s.size()) / bias.p);
  return sum;
}

double beck_sum_parallel(const Hypergraph& f, Bias bias) {
  if (needs_log_domain(f, bias)) return std::exp(log_beck_sum(f, bias));
  const double base = 1.0 + bias.q;
  const auto count = static_cast<std::ptrdiff_t>(f.sets.size());
  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    sum += std::pow(base, -static_cast<double>(f.sets[static_cast<std::size_t>(i)].size()) / bias.p);
  return sum;
}

bool criterion_holds(const Hypergraph& f, Bias bias) {
  if (needs_log_domain(f, bias)) return log_beck_sum(f, bias) < -std::log1p(static_cast<double>(bias.q));
  return beck_sum(f, bias) < 1.0 / (1.0 + bias.q);
}

PotentialLedger::PotentialLedger(std::shared_ptr<const Hypergraph> f, Bias bias, Side blocker)
    : f_(std::move(f)), blocker_(blocker) {
  log_lambda_ = std::log1p(static_cast<double>(bias.q)) / bias.p;
  lambda_ = std::exp(log_lambda_);
  const auto& sets = f_->sets;
  std::size_t min_size = std::numeric_limits<std::size_t>::max();
  for (const auto& s : sets) min_size = std::min(min_size, s.size());
  if (!sets.empty() && static_cast<double>(min_size) * log_lambda_ > 600.0)
    log_scale_ = static_cast<double>(min_size) * log_lambda_ - 300.0;

  const std::size_t n = f_->board_size;
  incidence_offset_.assign(n + 1, 0);
  for (const auto& s : sets)
    for (ElementId e : s) ++incidence_offset_[static_cast<std::size_t>(e) + 1];
  for (std::size_t i = 0; i < n; ++i) incidence_offset_[i + 1] += incidence_offset_[i];
  incidence_.resize(incidence_offset_[n]);
  std::vector<std::size_t> fill(incidence_offset_.begin(), incidence_offset_.end() - 1);
  for (std::size_t b = 0; b < sets.size(); ++b)
    for (ElementId e : sets[b]) incidence_[fill[static_cast<std::size_t>(e)]++] = static_cast<std::uint32_t>(b);

  alive_.assign(sets.size(), 1);
  alive_count_ = sets.size();
  unclaimed_.resize(sets.size());
  weight_.assign(n, 0.0);
  seen_.assign(n, Owner::Free);
  alive_through_.resize(n);
  for (std::size_t e = 0; e < n; ++e)
    alive_through_[e] = static_cast<std::uint32_t>(incidence_offset_[e + 1] - incidence_offset_[e]);
  for (std::size_t b = 0; b < sets.size(); ++b) {
    unclaimed_[b] = static_cast<int>(sets[b].size());
    const double w = set_weight_scaled(unclaimed_[b]);
    running_scaled_ += w;
    for (ElementId e : sets[b]) weight_[static_cast<std::size_t>(e)] += w;
  }
}

void PotentialLedger::apply(Side side, ElementId e) {
  const auto ue = static_cast<std::size_t>(e);
  if (seen_[ue] != Owner::Free) throw GameError("ledger already recorded element " + std::to_string(e));
  seen_[ue] = owner_of(side);
  const auto& sets = f_->sets;
  for (std::size_t k = incidence_offset_[ue]; k < incidence_offset_[ue + 1]; ++k) {
    const std::uint32_t b = incidence_[k];
    if (!alive_[b]) continue;
    const double before = set_weight_scaled(unclaimed_[b]);
    if (side == blocker_) {
      alive_[b] = 0;
      --alive_count_;
      running_scaled_ -= before;
      for (ElementId x : sets[b]) {
        const auto ux = static_cast<std::size_t>(x);
        weight_[ux] -= before;
        // Rounding noise must never drive a pick once every set through x is dead.
        if (--alive_through_[ux] == 0) weight_[ux] = 0.0;
      }
    } else {
      --unclaimed_[b];
      const double delta = set_weight_scaled(unclaimed_[b]) - before;
      running_scaled_ += delta;
      for (ElementId x : sets[b]) weight_[static_cast<std::size_t>(x)] += delta;
    }
  }
  if (side == blocker_ && alive_count_ == 0) running_scaled_ = 0.0;
}

void PotentialLedger::sync(const GameState& state) {
  if (state.size() != f_->board_size) throw GameError("ledger and game board differ in size");
  for (std::size_t e = 0; e < seen_.size(); ++e) {
    const Owner now = state.owner(static_cast<ElementId>(e));
    if (now == seen_[e]) continue;
    if (seen_[e] == Owner::Free) {
      apply(now == Owner::Maker ? Side::Maker : Side::Breaker, static_cast<ElementId>(e));
    } else if (now != Owner::Free) {
      throw GameError("ledger disagrees with game state on element " + std::to_string(e));
    }
    // seen but still Free in state: a pick not yet applied by the engine.
  }
}

double PotentialLedger::recompute_sum() const {
  double sum = 0.0;
  const Owner block = owner_of(blocker_);
  for (const auto& s : f_->sets) {
    int u = 0;
    bool dead = false;
    for (ElementId e : s) {
      const Owner o = seen_[static_cast<std::size_t>(e)];
      if (o == block) dead = true;
      if (o == Owner::Free) ++u;
    }
    if (!dead) sum += std::exp(-u * log_lambda_);
  }
  return sum;
}

double PotentialLedger::recompute_element_weight(ElementId e) const {
  double sum = 0.0;
  const Owner block = owner_of(blocker_);
  for (const auto& s : f_->sets) {
    if (!std::binary_search(s.begin(), s.end(), e)) continue;
    int u = 0;
    bool dead = false;
    for (ElementId x : s) {
      const Owner o = seen_[static_cast<std::size_t>(x)];
      if (o == block) dead = true;
      if (o == Owner::Free) ++u;
    }
    if (!dead) sum += std::exp(-u * log_lambda_);
  }
  return sum;
}

bool PotentialLedger::consistent(double rel_tol) const {
  const double fresh = recompute_sum();
  const double kept = running_sum();
  const double scale = std::max({std::abs(fresh), std::abs(kept), 1e-300});
  return std::abs(fresh - kept) <= rel_tol * scale;
}

std::optional<ElementId> PotentialLedger::best_element() const {
  double best = -1.0;
  for (std::size_t e = 0; e < seen_.size(); ++e)
    if (seen_[e] == Owner::Free) best = std::max(best, weight_[e]);
  if (best < 0.0) return std::nullopt;
  const double floor = best - 1e-12 * best;
  for (std::size_t e = 0; e < seen_.size(); ++e)
    if (seen_[e] == Owner::Free && weight_[e] >= floor) return static_cast<ElementId>(e);
  return std::nullopt;
}

std::vector<ElementId> potential_breaker_move(PotentialLedger& ledger, const GameState& state, int q) {
  ledger.sync(state);
  std::vector<ElementId> picks;
  for (int i = 0; i < q; ++i) {
    auto e = ledger.best_element();
    if (!e) break;
    ledger.apply(ledger.blocker(), *e);
    picks.push_back(*e);
  }
  return picks;
}

PotentialBreaker::PotentialBreaker(std::shared_ptr<const Hypergraph> f, Bias bias)
    : bias_(bias), ledger_(std::move(f), bias, Side::Breaker) {}

TurnPlan PotentialBreaker::play(const GameState& state, const TurnContext&) {
  return TurnPlan{potential_breaker_move(ledger_, state, bias_.q), {}, std::nullopt};
}

std::vector<std::string> PotentialBreaker::check_invariants(const GameState& state) const {
  ledger_.sync(state);
  if (!ledger_.consistent(1e-9))
    return {"potential ledger running sum " + std::to_string(ledger_.running_sum()) + " differs from recomputed " +
            std::to_string(ledger_.recompute_sum())};
  return {};
}

nlohmann::json PotentialBreaker::parameters() const {
  return {{"lambda", ledger_.lambda()},
          {"beck_sum", beck_sum(ledger_.hypergraph(), bias_)},
          {"criterion_holds", criterion_holds(ledger_.hypergraph(), bias_)}};
}

FakeMovesMaker::FakeMovesMaker(std::unique_ptr<Strategy> inner, int q, int q_prime, GameState shadow)
    : inner_(std::move(inner)), q_(q), q_prime_(q_prime), shadow_(std::move(shadow)) {
  if (q_prime < 1 || q_prime >= q) throw GameError("fake moves need 1 <= q' < q");
  if (!inner_ || inner_->side() != Side::Maker) throw GameError("fake moves wrap a Maker strategy");
}

TurnPlan FakeMovesMaker::play(const GameState& state, const TurnContext& ctx) {
  if (state.size() != shadow_.size()) throw GameError("shadow board size mismatch");
  std::vector<ElementId> seen_now;
  for (std::size_t e = 0; e < state.size(); ++e) {
    const auto id = static_cast<ElementId>(e);
    if (state.owner(id) == Owner::Breaker && shadow_.owner(id) == Owner::Free) {
      shadow_.claim(Side::Breaker, id);
      seen_now.push_back(id);
    }
  }
  std::vector<ElementId> fakes;
  if (ctx.opponent_moved) {
    int missing = q_ - static_cast<int>(seen_now.size());
    for (std::size_t e = 0; e < shadow_.size() && missing > 0; ++e) {
      const auto id = static_cast<ElementId>(e);
      if (!shadow_.is_free(id)) continue;
      shadow_.claim(Side::Breaker, id);
      fakes.push_back(id);
      --missing;
    }
  }
  fakes_ += fakes.size();
  std::vector<ElementId> shadow_last = seen_now;
  shadow_last.insert(shadow_last.end(), fakes.begin(), fakes.end());
  TurnContext inner_ctx{shadow_last, ctx.opponent_moved, ctx.turn};
  TurnPlan plan = inner_->play(shadow_, inner_ctx);
  if (plan.forfeit) return plan;

  std::string note = "fake=" + std::to_string(fakes.size());
  for (ElementId e : plan.claims) {
    if (!state.is_free(e)) return TurnPlan::give_up("inner strategy chose a claimed element");
    if (shadow_.is_free(e)) {
      shadow_.claim(Side::Maker, e);
    } else {
      note += " reclaimed-fake=" + std::to_string(e);
    }
  }
  if (plan.claims.empty()) {
    // shadow board ran dry before the real one
    if (auto e = state.lowest_free()) {
      plan.claims.push_back(*e);
      if (shadow_.is_free(*e)) shadow_.claim(Side::Maker, *e);
      note += " fallback=" + std::to_string(*e);
    }
  }
  if (!plan.note.empty()) note += " " + plan.note;
  plan.note = note;
  return plan;
}

nlohmann::json FakeMovesMaker::parameters() const {
  return {{"q", q_}, {"q_prime", q_prime_}, {"inner", inner_->parameters()}};
}

}  // namespace mbgame
