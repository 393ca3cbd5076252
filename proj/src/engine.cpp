#include "mbgame/engine.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace mbgame {

using nlohmann::json;

std::string_view to_string(Outcome::Kind k) {
  switch (k) {
    case Outcome::Kind::MakerWin: return "maker_win";
    case Outcome::Kind::BreakerWin: return "breaker_win";
    case Outcome::Kind::Forfeit: return "forfeit";
    case Outcome::Kind::Exhausted: return "exhausted";
    case Outcome::Kind::MoveCap: return "move_cap";
  }
  return "?";
}

Outcome::Kind parse_outcome_kind(std::string_view text) {
  for (auto k : {Outcome::Kind::MakerWin, Outcome::Kind::BreakerWin, Outcome::Kind::Forfeit,
                 Outcome::Kind::Exhausted, Outcome::Kind::MoveCap})
    if (to_string(k) == text) return k;
  throw GameError("unknown outcome kind '" + std::string(text) + "'");
}

std::size_t Transcript::maker_moves() const {
  return static_cast<std::size_t>(
      std::count_if(moves.begin(), moves.end(), [](const MoveRecord& m) { return m.player == Side::Maker; }));
}

json describe_board(const GameState& state) {
  if (const GraphBoard* g = state.graph()) {
    if (g->kind() == "complete") return {{"kind", "complete"}, {"n", g->vertex_count()}};
    if (g->kind() == "bipartite") return {{"kind", "bipartite"}, {"r", g->vertex_count() / 2}};
    json edges = json::array();
    for (std::size_t e = 0; e < g->edge_count(); ++e) {
      auto [u, v] = g->endpoints(static_cast<ElementId>(e));
      edges.push_back({u, v});
    }
    return {{"kind", "graph"}, {"n", g->vertex_count()}, {"edges", edges}};
  }
  return {{"kind", "generic"}, {"size", state.size()}};
}

GameState make_board(const json& d) {
  const std::string kind = d.at("kind").get<std::string>();
  if (kind == "complete") return complete_board(d.at("n").get<int>());
  if (kind == "bipartite") return GameState::on_graph(GraphBoard::complete_bipartite(d.at("r").get<int>()));
  if (kind == "graph") {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : d.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return GameState::on_graph(GraphBoard::from_edges(d.at("n").get<int>(), std::move(edges)));
  }
  if (kind == "generic") return GameState::generic(d.at("size").get<std::size_t>());
  throw InvalidBoardError("unknown board kind '" + kind + "'");
}

namespace {

std::optional<std::string> illegal_reason(const GameState& state, const std::vector<ElementId>& claims, int budget) {
  if (static_cast<int>(claims.size()) > budget)
    return "claimed " + std::to_string(claims.size()) + " elements with bias " + std::to_string(budget);
  std::vector<ElementId> sorted = claims;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return "element listed twice in one turn";
  for (ElementId e : claims) {
    if (!state.valid(e)) return "element " + std::to_string(e) + " is off the board";
    if (!state.is_free(e)) return "element " + std::to_string(e) + " is not free";
  }
  return std::nullopt;
}

}  // namespace

WinCheck maker_goal_check(const Strategy& maker) {
  return [&maker](const GameState& s) { return maker.succeeded(s) ? WinStatus::MakerWin : WinStatus::Undecided; };
}

Transcript run_game(GameState state, Bias bias, Strategy& maker, Strategy& breaker, const WinCheck& check,
                    const GameOptions& options, GameState* final_state) {
  if (maker.side() != Side::Maker || breaker.side() != Side::Breaker)
    throw GameError("strategies registered for the wrong sides");
  Transcript t;
  t.seed = options.seed;
  t.bias = bias;
  t.first_mover = options.first;
  t.board = describe_board(state);
  t.maker = maker.name();
  t.breaker = breaker.name();
  t.params = {{"maker", maker.parameters()}, {"breaker", breaker.parameters()}};

  std::vector<ElementId> last[2];
  std::size_t turns_of[2] = {0, 0};
  Side mover = options.first;
  auto idx = [](Side s) { return s == Side::Maker ? 0 : 1; };

  for (;;) {
    const WinStatus status = check ? check(state) : WinStatus::Undecided;
    const std::size_t decided_at = t.moves.empty() ? 0 : t.moves.size() - 1;
    if (status == WinStatus::MakerWin) {
      t.outcome = {Outcome::Kind::MakerWin, decided_at, {}, Side::Maker};
      break;
    }
    if (status == WinStatus::BreakerWin) {
      t.outcome = {Outcome::Kind::BreakerWin, decided_at, {}, Side::Maker};
      break;
    }
    if (state.free_count() == 0) {
      t.outcome = {Outcome::Kind::Exhausted, t.moves.size(), {}, Side::Maker};
      break;
    }
    if (t.moves.size() >= options.move_cap) {
      t.outcome = {Outcome::Kind::MoveCap, t.moves.size(), {}, Side::Maker};
      break;
    }

    Strategy& strat = mover == Side::Maker ? maker : breaker;
    TurnContext ctx{last[idx(opponent(mover))], turns_of[0] + turns_of[1] > 0, turns_of[idx(mover)]};
    TurnPlan plan = strat.play(state, ctx);
    if (plan.forfeit) {
      t.outcome = {Outcome::Kind::Forfeit, t.moves.size(), *plan.forfeit, mover};
      break;
    }
    if (auto bad = illegal_reason(state, plan.claims, bias.of(mover))) {
      t.outcome = {Outcome::Kind::Forfeit, t.moves.size(), "illegal-move: " + *bad, mover};
      break;
    }
    for (ElementId e : plan.claims) state.claim(mover, e);
    last[idx(mover)] = plan.claims;
    ++turns_of[idx(mover)];
    t.moves.push_back({mover, std::move(plan.claims), std::move(plan.note)});

    if (options.check_invariants) {
      for (Strategy* s : {&maker, &breaker})
        for (auto& msg : s->check_invariants(state)) t.violations.push_back({t.moves.size() - 1, msg});
    }
    mover = opponent(mover);
  }
  t.result = maker.result();
  if (final_state) *final_state = std::move(state);
  return t;
}

GameState replay(const Transcript& t) {
  GameState state = make_board(t.board);
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const auto& m = t.moves[i];
    const int budget = t.bias.of(m.player);
    if (static_cast<int>(m.claims.size()) > budget)
      throw ReplayError(i, "claims " + std::to_string(m.claims.size()) + " elements, bias is " + std::to_string(budget));
    for (ElementId e : m.claims) {
      if (!state.valid(e)) throw ReplayError(i, "element " + std::to_string(e) + " is off the board");
      try {
        state.claim(m.player, e);
      } catch (const DoubleClaimError& err) {
        throw ReplayError(i, err.what());
      }
    }
  }
  return state;
}

void write_transcript(std::ostream& out, const Transcript& t) {
  json header = {{"type", "header"},
                 {"format_version", t.format_version},
                 {"seed", t.seed},
                 {"bias", t.bias.str()},
                 {"first_mover", to_string(t.first_mover)},
                 {"board", t.board},
                 {"maker", t.maker},
                 {"breaker", t.breaker},
                 {"params", t.params},
                 {"config", t.config}};
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    const auto& m = t.moves[i];
    json line = {{"type", "move"}, {"i", i}, {"player", to_string(m.player)}, {"claims", m.claims}};
    if (!m.note.empty()) line["note"] = m.note;
    out << line.dump() << '\n';
  }
  json violations = json::array();
  for (const auto& v : t.violations) violations.push_back({{"move", v.move_index}, {"message", v.message}});
  json footer = {{"type", "outcome"},
                 {"kind", to_string(t.outcome.kind)},
                 {"move_index", t.outcome.move_index},
                 {"maker_moves", t.maker_moves()},
                 {"result", t.result},
                 {"violations", violations}};
  if (t.outcome.kind == Outcome::Kind::Forfeit) {
    footer["reason"] = t.outcome.reason;
    footer["forfeiting"] = to_string(t.outcome.forfeiting);
  }
  out << footer.dump() << '\n';
}

std::string transcript_to_string(const Transcript& t) {
  std::ostringstream os;
  write_transcript(os, t);
  return os.str();
}

Transcript read_transcript(std::istream& in) {
  Transcript t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool have_footer = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (have_footer) throw TranscriptParseError(line_no, "content after outcome footer");
    json j;
    try {
      j = json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "header") {
        if (have_header) throw TranscriptParseError(line_no, "duplicate header");
        t.format_version = j.at("format_version").get<int>();
        if (t.format_version != kTranscriptFormatVersion)
          throw TranscriptParseError(line_no, "unsupported format_version " + std::to_string(t.format_version));
        t.seed = j.at("seed").get<std::uint64_t>();
        t.bias = Bias::parse(j.at("bias").get<std::string>());
        t.first_mover = parse_side(j.at("first_mover").get<std::string>());
        t.board = j.at("board");
        t.maker = j.at("maker").get<std::string>();
        t.breaker = j.at("breaker").get<std::string>();
        t.params = j.value("params", json::object());
        t.config = j.value("config", json::object());
        have_header = true;
      } else if (type == "move") {
        if (!have_header) throw TranscriptParseError(line_no, "move before header");
        if (j.at("i").get<std::size_t>() != t.moves.size())
          throw TranscriptParseError(line_no, "move index out of sequence");
        MoveRecord m;
        m.player = parse_side(j.at("player").get<std::string>());
        m.claims = j.at("claims").get<std::vector<ElementId>>();
        m.note = j.value("note", std::string());
        t.moves.push_back(std::move(m));
      } else if (type == "outcome") {
        if (!have_header) throw TranscriptParseError(line_no, "outcome before header");
        t.outcome.kind = parse_outcome_kind(j.at("kind").get<std::string>());
        t.outcome.move_index = j.at("move_index").get<std::size_t>();
        t.outcome.reason = j.value("reason", std::string());
        if (j.contains("forfeiting")) t.outcome.forfeiting = parse_side(j.at("forfeiting").get<std::string>());
        t.result = j.value("result", json(nullptr));
        for (const auto& v : j.value("violations", json::array()))
          t.violations.push_back({v.at("move").get<std::size_t>(), v.at("message").get<std::string>()});
        have_footer = true;
      } else {
        throw TranscriptParseError(line_no, "unknown record type '" + type + "'");
      }
    } catch (const TranscriptParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw TranscriptParseError(line_no, e.what());
    }
  }
  if (!have_header) throw TranscriptParseError(line_no, "missing header");
  if (!have_footer) throw TranscriptParseError(line_no, "missing outcome footer");
  return t;
}

}  // namespace mbgame
