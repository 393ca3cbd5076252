#include "mbgame/parallel.hpp"

#include <cmath>
#include <string>

namespace mbgame {

std::size_t round_cap(std::size_t total_elements, int q) {
  const auto d = static_cast<std::size_t>(q) + 1;
  return (total_elements + d - 1) / d;
}

double between_visit_bound(std::size_t m, int q, std::size_t total_elements) {
  return box_weight_bound(q, m, round_cap(total_elements, q));
}

int inflated_bias(std::size_t m, int q, std::size_t total_elements) {
  if (m < 1 || q < 1 || total_elements < 1) throw GameError("inflated_bias needs positive arguments");
  return static_cast<int>(std::ceil(between_visit_bound(m, q, total_elements)));
}

BoxScheduler::BoxScheduler(std::size_t m, int q, std::size_t total_elements)
    : boxes_(BoxState::integral(m, q)), k_cap_(round_cap(total_elements, q)) {}

void BoxScheduler::feed(const std::vector<int>& claims_per_board) { boxes_.add_units(claims_per_board); }

std::optional<std::size_t> BoxScheduler::choose(const std::vector<bool>& finished) {
  std::optional<std::size_t> open;
  for (std::size_t i = 0; i < finished.size(); ++i)
    if (!finished[i]) {
      open = i;
      break;
    }
  if (!open) return std::nullopt;
  last_reset_ = cbox_breaker_reset(boxes_);
  boxes_.reset(last_reset_);
  ++boxes_.round;
  return finished[last_reset_] ? *open : last_reset_;
}

std::optional<std::size_t> schedule_move(BoxScheduler& sched, const std::vector<int>& breaker_claims_per_board,
                                         const std::vector<bool>& finished) {
  sched.feed(breaker_claims_per_board);
  return sched.choose(finished);
}

ParallelMaker::ParallelMaker(std::vector<SubGame> games, int q, std::size_t global_size)
    : games_(std::move(games)),
      q_(q),
      board_of_(global_size, -1),
      local_of_(global_size, -1),
      seen_(global_size, Owner::Free),
      total_([&] {
        std::size_t total = 0;
        for (const auto& g : games_) total += g.elements.size();
        return std::max<std::size_t>(total, 1);
      }()),
      sched_(std::max<std::size_t>(games_.size(), 1), q, total_) {
  if (games_.empty()) throw GameError("parallel composition needs m >= 1 boards");
  for (std::size_t i = 0; i < games_.size(); ++i) {
    auto& g = games_[i];
    if (!g.strategy) throw GameError("board " + std::to_string(i) + " has no strategy");
    if (g.local.size() != g.elements.size())
      throw GameError("board " + std::to_string(i) + " local state does not match its element list");
    for (std::size_t j = 0; j < g.elements.size(); ++j) {
      const ElementId e = g.elements[j];
      if (e < 0 || static_cast<std::size_t>(e) >= global_size) throw GameError("board element out of range");
      if (board_of_[static_cast<std::size_t>(e)] != -1)
        throw GameError("element " + std::to_string(e) + " lies on two boards");
      board_of_[static_cast<std::size_t>(e)] = static_cast<int>(i);
      local_of_[static_cast<std::size_t>(e)] = static_cast<ElementId>(j);
    }
  }
  since_move_.assign(games_.size(), 0);
  since_visit_.assign(games_.size(), 0);
  unseen_by_.resize(games_.size());
  visits_.assign(games_.size(), 0);
}

void ParallelMaker::sync(const GameState& state) {
  for (std::size_t e = 0; e < seen_.size(); ++e) {
    const Owner now = state.owner(static_cast<ElementId>(e));
    if (now == seen_[e] || now == Owner::Free) continue;
    seen_[e] = now;
    const int b = board_of_[e];
    if (b < 0) {
      if (now == Owner::Breaker) ++outside_;
      continue;
    }
    auto& g = games_[static_cast<std::size_t>(b)];
    const ElementId local = local_of_[e];
    if (!g.local.is_free(local)) continue;
    g.local.claim(now == Owner::Maker ? Side::Maker : Side::Breaker, local);
    if (now == Owner::Breaker) {
      ++since_move_[static_cast<std::size_t>(b)];
      ++since_visit_[static_cast<std::size_t>(b)];
      unseen_by_[static_cast<std::size_t>(b)].push_back(local);
    }
  }
}

bool ParallelMaker::finished(std::size_t i, const GameState& local) const {
  const auto& g = games_[i];
  return g.won ? g.won(local) : g.strategy->succeeded(local);
}

GameState ParallelMaker::local_view(std::size_t i, const GameState& global) const {
  const auto& g = games_[i];
  GameState out = g.local;
  for (std::size_t j = 0; j < g.elements.size(); ++j) {
    const auto local = static_cast<ElementId>(j);
    const Owner now = global.owner(g.elements[j]);
    if (now != Owner::Free && out.is_free(local)) out.claim(now == Owner::Maker ? Side::Maker : Side::Breaker, local);
  }
  return out;
}

TurnPlan ParallelMaker::play(const GameState& state, const TurnContext& ctx) {
  sync(state);
  if (visits_total_ == 0) {
    long pre = 0;
    for (int c : since_move_) pre += c;
    if (pre > q_) {
      // composite entered mid-game: earlier claims are the starting position
      std::fill(since_move_.begin(), since_move_.end(), 0);
      std::fill(since_visit_.begin(), since_visit_.end(), 0);
    }
  }
  long fed = 0;
  for (int& c : since_move_) {
    if (fed + c > q_) {
      // more than q opponent claims between two of our moves; feed what the box game allows
      pending_.push_back("opponent claimed more than " + std::to_string(q_) + " board elements between Maker moves");
      c = static_cast<int>(q_ - fed);
    }
    fed += c;
  }
  ++visits_total_;
  std::vector<bool> done(games_.size());
  for (std::size_t i = 0; i < games_.size(); ++i) done[i] = finished(i, games_[i].local);
  const auto pick = schedule_move(sched_, since_move_, done);
  std::fill(since_move_.begin(), since_move_.end(), 0);
  if (!pick) return TurnPlan::pass("all boards won");
  const std::size_t i = *pick;
  auto& g = games_[i];

  const double bound = between_visit_bound(games_.size(), q_, total_);
  max_between_ = std::max(max_between_, since_visit_[i]);
  if (static_cast<double>(since_visit_[i]) > bound) {
    ++bound_violations_;
    pending_.push_back("board " + std::to_string(i) + ": " + std::to_string(since_visit_[i]) +
                       " opponent claims since the last visit exceed " + std::to_string(bound));
  }

  TurnContext local_ctx{unseen_by_[i], ctx.opponent_moved || visits_[i] > 0, visits_[i]};
  TurnPlan sub = g.strategy->play(g.local, local_ctx);
  unseen_by_[i].clear();
  since_visit_[i] = 0;
  if (sub.forfeit) return TurnPlan::give_up("board " + std::to_string(i) + ": " + *sub.forfeit);

  TurnPlan out;
  out.note = "board=" + std::to_string(i);
  if (!sub.note.empty()) out.note += " " + sub.note;
  for (ElementId local : sub.claims) {
    if (!g.local.valid(local) || !g.local.is_free(local))
      return TurnPlan::give_up("board " + std::to_string(i) + ": sub-strategy chose an unavailable element");
    const ElementId global = g.elements[static_cast<std::size_t>(local)];
    g.local.claim(Side::Maker, local);
    seen_[static_cast<std::size_t>(global)] = Owner::Maker;
    out.claims.push_back(global);
  }
  ++visits_[i];
  if (g.budget > 0 && visits_[i] > g.budget)
    return TurnPlan::give_up("board " + std::to_string(i) + " exceeded its budget of " + std::to_string(g.budget));
  return out;
}

bool ParallelMaker::succeeded(const GameState& state) const {
  for (std::size_t i = 0; i < games_.size(); ++i)
    if (!finished(i, local_view(i, state))) return false;
  return true;
}

std::vector<std::string> ParallelMaker::check_invariants(const GameState&) const {
  std::vector<std::string> out;
  out.swap(pending_);
  for (std::size_t i = 0; i < games_.size(); ++i)
    for (auto& v : games_[i].strategy->check_invariants(games_[i].local)) out.push_back("board " + std::to_string(i) + ": " + v);
  return out;
}

nlohmann::json ParallelMaker::parameters() const {
  std::size_t total = 0;
  nlohmann::json boards = nlohmann::json::array();
  for (const auto& g : games_) {
    total += g.elements.size();
    boards.push_back({{"size", g.elements.size()}, {"strategy", g.strategy->name()}, {"budget", g.budget},
                      {"params", g.strategy->parameters()}});
  }
  return {{"m", games_.size()},
          {"q", q_},
          {"k_cap", sched_.k_cap()},
          {"inflated_bias", inflated_bias(games_.size(), q_, total)},
          {"between_visit_bound", between_visit_bound(games_.size(), q_, total)},
          {"boards", boards}};
}

nlohmann::json ParallelMaker::result() const {
  nlohmann::json boards = nlohmann::json::array();
  for (std::size_t i = 0; i < games_.size(); ++i)
    boards.push_back({{"visits", visits_[i]}, {"won", finished(i, games_[i].local)}, {"result", games_[i].strategy->result()}});
  return {{"boards", boards},
          {"max_between_visits", max_between_},
          {"bound_violations", bound_violations_},
          {"outside_claims", outside_}};
}

VisitAudit audit_between_visits(const Transcript& t, const std::vector<int>& board_of, std::size_t m, int q) {
  VisitAudit a;
  std::size_t total = 0;
  for (int b : board_of)
    if (b >= 0) ++total;
  a.bound = between_visit_bound(m, q, std::max<std::size_t>(total, 1));
  a.visits.assign(m, 0);
  std::vector<long> since(m, 0);
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const auto& mv = t.moves[i];
    if (mv.player == Side::Breaker) {
      for (ElementId e : mv.claims) {
        const auto ue = static_cast<std::size_t>(e);
        if (ue < board_of.size() && board_of[ue] >= 0) ++since[static_cast<std::size_t>(board_of[ue])];
      }
      continue;
    }
    const auto pos = mv.note.find("board=");
    if (pos == std::string::npos) {
      if (!mv.claims.empty()) ++a.unattributed_maker_moves;
      continue;
    }
    const auto b = static_cast<std::size_t>(std::stoul(mv.note.substr(pos + 6)));
    if (b >= m) {
      ++a.unattributed_maker_moves;
      continue;
    }
    a.max_between = std::max(a.max_between, since[b]);
    if (static_cast<double>(since[b]) > a.bound) {
      ++a.violations;
      if (!a.first_violation) a.first_violation = i;
    }
    since[b] = 0;
    ++a.visits[b];
  }
  return a;
}

}  // namespace mbgame
