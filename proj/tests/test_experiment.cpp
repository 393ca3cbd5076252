#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mbgame/experiment.hpp"

using namespace mbgame;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("mbgame_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json tree_config(const fs::path& dir) {
  return {{"name", "trees"},
          {"game", "tree-embed"},
          {"board", {{"tree", {{"family", "spider"}, {"n", 40}}}}},
          {"breakers", {"random", "null", "isolator"}},
          {"seeds", {{"count", 3}, {"start", 5}}},
          {"output", {{"dir", dir.string()}}}};
}

}  // namespace

TEST_CASE("config: unknown keys are rejected with their path") {
  json j = tree_config(scratch("unknown"));
  j["colour"] = "blue";
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("colour"), ConfigError);
  j.erase("colour");
  j["board"]["tree"]["depth"] = 3;
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("board.tree"), ConfigError);
  j = tree_config(scratch("unknown"));
  j["maker"] = {{"params", {{"alhpa", 0.1}}}};
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("alhpa"), ConfigError);
  j = tree_config(scratch("unknown"));
  j["breakers"] = {"sneaky"};
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);
  j = tree_config(scratch("unknown"));
  j["game"] = "chess";
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);
  j = tree_config(scratch("unknown"));
  j["bias"] = "1-2";
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);
  j = tree_config(scratch("unknown"));
  j["board"] = json::object();
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("tree"), ConfigError);
  // minimax is exact search; K_{5,5} has 25 edges
  j = {{"game", "matching"}, {"board", {{"r", 5}}}, {"breakers", {"minimax"}}};
  CHECK_THROWS_WITH_AS(parse_experiment(j), doctest::Contains("16"), ConfigError);
  j["board"]["r"] = 4;
  CHECK_NOTHROW(parse_experiment(j));
}

TEST_CASE("config: defaults are echoed") {
  const auto c = parse_experiment(tree_config(scratch("defaults")));
  CHECK(c.seeds == std::vector<std::uint64_t>{5, 6, 7});
  CHECK(c.maker["params"].contains("alpha"));
  CHECK(c.maker["params"]["hampath"].contains("delta"));
  CHECK(c.cells().size() == 9);
  // round trip through the echoed form
  const auto again = parse_experiment(c.to_json());
  CHECK(again.to_json() == c.to_json());
}

TEST_CASE("output dir defaults to the environment variable") {
  const auto dir = scratch("env");
  setenv("MBGAME_OUT_DIR", dir.string().c_str(), 1);
  json j = tree_config(dir);
  j.erase("output");
  CHECK(parse_experiment(j).out_dir == dir.string());
  unsetenv("MBGAME_OUT_DIR");
  CHECK(default_output_dir() == "mbgame_out");
}

TEST_CASE("run: serial and parallel runs are byte-identical, summary matches transcripts") {
  const auto d1 = scratch("run1"), d2 = scratch("run2");
  auto c1 = parse_experiment(tree_config(d1));
  auto c2 = parse_experiment(tree_config(d2));
  c2.threads = 4;
  const auto r1 = run_experiment(c1, false);
  const auto r2 = run_experiment(c2, true);
  CHECK(r1.errors == 0);
  CHECK(r1.dirty == 0);
  REQUIRE(r1.files.size() == 9);
  for (std::size_t i = 0; i < r1.files.size(); ++i)
    CHECK(slurp(r1.files[i]) == slurp(r2.files[i]));
  CHECK(slurp(fs::path(r1.dir) / "summary.csv") == slurp(fs::path(r2.dir) / "summary.csv"));

  // every summary row agrees with the transcript it names
  std::ifstream summary(fs::path(r1.dir) / "summary.csv");
  std::string line;
  std::getline(summary, line);
  std::size_t rows = 0, wins = 0;
  while (std::getline(summary, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    std::ifstream in(fs::path(r1.dir) / cols.back());
    const Transcript t = read_transcript(in);
    CHECK(cols[3] == std::string(to_string(t.outcome.kind)));
    CHECK(std::stoul(cols[4]) == t.maker_moves());
    wins += t.outcome.kind == Outcome::Kind::MakerWin;
  }
  CHECK(rows == 9);
  std::size_t run_wins = 0;
  for (const auto& r : r1.runs) run_wins += r.outcome() == "maker_win";
  CHECK(wins == run_wins);
  CHECK(wins == 9);
}

TEST_CASE("audit: clean run, duplicate claim flagged at its move, corrupt file reports the line") {
  const auto dir = scratch("audit");
  json j = tree_config(dir);
  j["breakers"] = {"random"};
  j["seeds"] = {1};
  const auto rep = run_experiment(parse_experiment(j));
  const auto path = rep.files.at(0);
  const auto a = audit_file(path);
  CHECK(a.clean());
  CHECK(a.outcome == "maker_win");

  std::ifstream in(path);
  Transcript t = read_transcript(in);
  // Breaker's 4th turn re-claims an element Maker already owns
  std::size_t target = 0;
  ElementId maker_el = -1;
  for (std::size_t i = 0, seen = 0; i < t.moves.size(); ++i) {
    if (t.moves[i].player == Side::Maker && maker_el < 0 && !t.moves[i].claims.empty()) maker_el = t.moves[i].claims[0];
    if (t.moves[i].player == Side::Breaker && ++seen == 4) {
      target = i;
      break;
    }
  }
  REQUIRE(maker_el >= 0);
  t.moves[target].claims[0] = maker_el;
  const auto bad = dir / "bad.jsonl";
  {
    std::ofstream out(bad);
    write_transcript(out, t);
  }
  const auto b = audit_file(bad.string());
  CHECK_FALSE(b.clean());
  REQUIRE(b.checks.front().name == "legal-replay");
  CHECK_FALSE(b.checks.front().pass);
  CHECK(b.checks.front().first_violation == target);

  std::string text = slurp(path);
  const auto cut = text.find('\n', text.find('\n') + 1);
  text.insert(cut + 1, "{\"player\": \n");
  const auto corrupt = dir / "corrupt.jsonl";
  std::ofstream(corrupt) << text;
  try {
    audit_file(corrupt.string());
    FAIL("expected a parse error");
  } catch (const TranscriptParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("forfeits report reason and guards") {
  const auto dir = scratch("forfeit");
  json j = {{"name", "stars"},
            {"game", "tree-embed"},
            {"board", {{"tree", {{"family", "star"}, {"n", 30}}}}},
            {"breakers", {"max-degree"}},
            {"seeds", {0}},
            {"output", {{"dir", dir.string()}}}};
  const auto rep = run_experiment(parse_experiment(j));
  REQUIRE(rep.runs.size() == 1);
  CHECK(rep.runs[0].outcome() == "forfeit");
  CHECK(rep.dirty == 0);
  const auto a = audit_file(rep.files[0]);
  CHECK(a.clean());
  CHECK(a.outcome == "forfeit");
  CHECK_FALSE(a.forfeit_reason.empty());
  CHECK(a.guards.contains("guards_held"));
  CHECK(a.guards["guards_held"] == false);
  const auto summary = slurp(fs::path(rep.dir) / "summary.csv");
  CHECK(summary.find("forfeit") != std::string::npos);
}

TEST_CASE("box runs emit a weight trace per seed and stay within the bound") {
  const auto dir = scratch("box");
  json j = {{"name", "boxes"},
            {"game", "box"},
            {"board", {{"m", 6}, {"k", 40}, {"mode", "continuous"}}},
            {"bias", "1:3"},
            {"adversaries", {"uniform", "harmonic", "lrr-piler"}},
            {"seeds", {0, 1}},
            {"output", {{"dir", dir.string()}}}};
  const auto rep = run_experiment(parse_experiment(j));
  CHECK(rep.dirty == 0);
  REQUIRE(rep.runs.size() == 6);
  for (const auto& f : rep.files) {
    const fs::path csv = fs::path(f).replace_extension(".csv");
    CHECK(fs::exists(csv));
    CHECK(slurp(csv).find('\n') != std::string::npos);
    CHECK(audit_file(f).clean());
  }
  j["breakers"] = {"random"};
  CHECK_THROWS_AS(parse_experiment(j), ConfigError);
}

TEST_CASE("other game kinds run clean") {
  const auto dir = scratch("kinds");
  const std::vector<json> boards = {
      {{"game", "matching"}, {"board", {{"r", 4}}}, {"breakers", {"random", "minimax"}}},
      {{"game", "hamcon"}, {"board", {{"k", 10}, {"endpoints", {0, 9}}}}, {"breakers", {"random"}}},
      {{"game", "triangle"}, {"board", {{"n", 12}}}, {"breakers", {"random", "triangle-delayer"}}},
      {{"game", "custom-hypergraph"},
       {"board", {{"hypergraph", {{"board_size", 9}, {"sets", {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}}}}}}},
       {"first", "maker"},
       {"breakers", {"minimax", "potential"}}},
  };
  for (json j : boards) {
    CAPTURE(j.dump());
    j["name"] = j["game"];
    j["seeds"] = {0, 1};
    j["output"] = {{"dir", dir.string()}};
    const auto rep = run_experiment(parse_experiment(j));
    CHECK(rep.errors == 0);
    CHECK(rep.dirty == 0);
    for (const auto& f : rep.files) CHECK(audit_file(f).clean());
  }
}

TEST_CASE("play: empty input matches the null breaker, illegal input re-prompts") {
  const auto dir = scratch("play");
  json j = tree_config(dir);
  j["board"]["tree"] = {{"family", "path"}, {"n", 12}};
  j["breakers"] = {"null"};
  j["seeds"] = {3};
  const auto cfg = parse_experiment(j);

  std::istringstream empty("");
  std::ostringstream log;
  Transcript human = play_interactive(cfg, 3, empty, log);
  const CellRun null_run = run_cell(cfg.cells().front());
  REQUIRE(null_run.transcript);
  CHECK(human.moves == null_run.transcript->moves);
  CHECK(human.outcome == null_run.transcript->outcome);
  CHECK(log.str().find("round 1") != std::string::npos);
  CHECK(audit_transcript(human).clean());

  // first two lines are illegal (not an edge, wrong arity), the third a real move
  std::istringstream typed("0 0\n1 2 3\n10 11\n");
  std::ostringstream log2;
  Transcript t = play_interactive(cfg, 3, typed, log2);
  CHECK(log2.str().find("illegal") != std::string::npos);
  std::size_t breaker_claims = 0;
  for (const auto& m : t.moves)
    if (m.player == Side::Breaker) breaker_claims += m.claims.size();
  CHECK(breaker_claims == 1);
  const auto a = audit_transcript(t);
  CHECK(a.clean());
}
