#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mbgame/box.hpp"
#include "mbgame/engine.hpp"

namespace mbgame {

class ConfigError : public GameError {
 public:
  using GameError::GameError;
};

enum class GameKind { TreeEmbed, Matching, HamCon, HamPath, Box, Triangle, CustomHypergraph };
std::string_view to_string(GameKind g);
GameKind parse_game_kind(std::string_view text);  // throws ConfigError

/// A batch of playouts: one cell per (opponent, seed).
struct ExperimentConfig {
  std::string name = "experiment";
  GameKind game = GameKind::TreeEmbed;
  nlohmann::json board;   // resolved board description
  Bias bias{1, 1};
  Side first = Side::Breaker;
  nlohmann::json maker;   // {"name", "params"} with every default filled in
  std::vector<std::string> opponents;   // Breaker strategies, or box adversaries
  std::vector<std::uint64_t> seeds;
  std::size_t move_cap = 1'000'000;
  std::string out_dir;
  bool write_transcripts = true;
  int threads = 0;        // 0: OpenMP default

  nlohmann::json to_json() const;
  std::vector<nlohmann::json> cells() const;
};

// $MBGAME_OUT_DIR, else "mbgame_out".
std::string default_output_dir();

// Validates and fills defaults; unknown keys anywhere raise ConfigError.
ExperimentConfig parse_experiment(const nlohmann::json& j);
ExperimentConfig load_experiment(const std::string& path);

struct Check {
  std::string name;
  bool pass = true;
  bool enforced = true;    // false: reported only (guards did not hold, asymptotic claim)
  std::optional<std::size_t> first_violation;
  std::string detail;
};
nlohmann::json to_json(const Check& c);

struct CellRun {
  nlohmann::json cell;
  std::optional<Transcript> transcript;   // board games
  std::optional<BoxTrace> box;            // box games
  std::vector<Check> checks;
  std::string error;                      // internal error, empty when none

  bool clean() const;
  std::string outcome() const;
  std::size_t maker_moves() const;
};

/// Plays one cell. `scripted` replays recorded Breaker turns instead of the
/// configured opponent (used to re-simulate human sessions).
CellRun run_cell(const nlohmann::json& cell, const std::vector<std::vector<ElementId>>* scripted = nullptr);

std::vector<CellRun> run_cells_serial(const std::vector<nlohmann::json>& cells);
std::vector<CellRun> run_cells_parallel(const std::vector<nlohmann::json>& cells, int threads = 0);

struct RunReport {
  std::string dir;
  std::vector<std::string> files;   // transcript (and CSV) paths, cell order
  std::vector<CellRun> runs;
  std::size_t errors = 0;           // internal errors
  std::size_t dirty = 0;            // runs with a failed enforced check
};

std::string cell_file_stem(const nlohmann::json& cell);
void write_summary_csv(std::ostream& out, const std::vector<CellRun>& runs, const std::vector<std::string>& files);
// Runs every cell and writes transcripts, box CSV traces, summary.csv and config.json.
RunReport run_experiment(const ExperimentConfig& cfg, bool parallel = true);

struct AuditReport {
  std::string path;
  std::string outcome;
  std::string forfeit_reason;
  nlohmann::json guards = nlohmann::json::object();
  std::vector<Check> checks;
  bool clean() const;
  nlohmann::json to_json() const;
};

AuditReport audit_transcript(const Transcript& t);
// Board transcript or box record; throws TranscriptParseError on corrupt input.
AuditReport audit_file(const std::string& path);
void print_audit(std::ostream& out, const AuditReport& r);

/// Human Breaker at a terminal: each turn reads one line of up to q claims,
/// "u v" pairs (or element ids on non-graph boards) separated by commas.
/// An empty line or end of input passes.
Transcript play_interactive(const ExperimentConfig& cfg, std::uint64_t seed, std::istream& in, std::ostream& out);

}  // namespace mbgame
