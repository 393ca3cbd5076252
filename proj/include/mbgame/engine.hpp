#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbgame/core.hpp"
#include "mbgame/strategy.hpp"

namespace mbgame {

inline constexpr int kTranscriptFormatVersion = 1;

enum class WinStatus { Undecided, MakerWin, BreakerWin };
using WinCheck = std::function<WinStatus(const GameState&)>;

struct Outcome {
  enum class Kind { MakerWin, BreakerWin, Forfeit, Exhausted, MoveCap };
  Kind kind = Kind::Exhausted;
  std::size_t move_index = 0;  // index of the deciding move record
  std::string reason;          // forfeit reason
  Side forfeiting = Side::Maker;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

std::string_view to_string(Outcome::Kind k);
Outcome::Kind parse_outcome_kind(std::string_view text);

struct MoveRecord {
  Side player = Side::Maker;
  std::vector<ElementId> claims;
  std::string note;

  friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

struct InvariantViolation {
  std::size_t move_index = 0;
  std::string message;
};

struct Transcript {
  int format_version = kTranscriptFormatVersion;
  std::uint64_t seed = 0;
  Bias bias;
  Side first_mover = Side::Breaker;
  nlohmann::json board;        // {"kind": "complete", "n": ...} etc.
  std::string maker;
  std::string breaker;
  nlohmann::json params = nlohmann::json::object();   // strategy parameters and guards
  nlohmann::json config = nlohmann::json::object();   // experiment cell, used by audit to re-simulate
  std::vector<MoveRecord> moves;
  Outcome outcome;
  nlohmann::json result = nullptr;
  std::vector<InvariantViolation> violations;

  std::size_t maker_moves() const;
};

struct GameOptions {
  Side first = Side::Breaker;
  std::size_t move_cap = 1'000'000;  // total turns (both players)
  std::uint64_t seed = 0;
  bool check_invariants = true;      // run Strategy::check_invariants after each Maker move
};

nlohmann::json describe_board(const GameState& state);
GameState make_board(const nlohmann::json& descriptor);

/// Alternating turn loop. The first mover leads; each turn the mover claims up
/// to its bias of Free elements. Stops when `check` decides, on forfeit or
/// illegal move, at `move_cap` turns, or when the board is exhausted.
Transcript run_game(GameState board, Bias bias, Strategy& maker, Strategy& breaker, const WinCheck& check,
                    const GameOptions& options, GameState* final_state = nullptr);

/// Win check from an explicit family of winning sets is in hypergraph.hpp;
/// this one defers to the Maker strategy's own completion predicate.
WinCheck maker_goal_check(const Strategy& maker);

struct ReplayError : GameError {
  ReplayError(std::size_t move, const std::string& what)
      : GameError("move " + std::to_string(move) + ": " + what), move_index(move) {}
  std::size_t move_index;
};

/// Replays every move from an empty board; throws ReplayError naming the
/// first offending move (double claim, unknown element, bias overrun).
GameState replay(const Transcript& t);

// JSON-lines persistence: header line, one line per move, outcome footer.
void write_transcript(std::ostream& out, const Transcript& t);
std::string transcript_to_string(const Transcript& t);

struct TranscriptParseError : GameError {
  TranscriptParseError(std::size_t line_no, const std::string& what)
      : GameError("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
  std::size_t line;
};
Transcript read_transcript(std::istream& in);

}  // namespace mbgame
