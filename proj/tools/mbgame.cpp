#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "mbgame/experiment.hpp"
#include "mbgame/hypergraph.hpp"
#include "mbgame/oracle.hpp"
#include "mbgame/potential.hpp"

using namespace mbgame;
namespace fs = std::filesystem;

namespace {

template <typename F>
auto input(F&& f) {
  try {
    return f();
  } catch (const GameError& e) {
    throw ConfigError(e.what());
  }
}

constexpr int kOk = 0, kConfig = 2, kInternal = 3;

int cmd_run(const std::string& path, bool serial) {
  const auto cfg = load_experiment(path);
  const auto rep = run_experiment(cfg, !serial);
  std::map<std::string, int> tally;
  for (const auto& r : rep.runs) ++tally[r.cell.at("opponent").get<std::string>() + " " + r.outcome()];
  for (const auto& [k, v] : tally) std::cout << "  " << k << ": " << v << "\n";
  std::cout << rep.runs.size() << " runs -> " << rep.dir << "/summary.csv";
  if (rep.errors || rep.dirty) std::cout << " (" << rep.errors << " errors, " << rep.dirty << " with violations)";
  std::cout << "\n";
  for (const auto& r : rep.runs)
    if (!r.clean())
      std::cerr << "violation: " << cell_file_stem(r.cell) << (r.error.empty() ? "" : ": " + r.error) << "\n";
  return rep.errors || rep.dirty ? kInternal : kOk;
}

int cmd_audit(const std::vector<std::string>& files, bool as_json) {
  int code = kOk;
  for (const auto& f : files) {
    try {
      const auto rep = audit_file(f);
      if (as_json)
        std::cout << rep.to_json().dump() << "\n";
      else
        print_audit(std::cout, rep);
      if (!rep.clean()) code = std::max(code, kInternal);
    } catch (const TranscriptParseError& e) {
      std::cout << f << ": PARSE ERROR at line " << e.line << ": " << e.what() << "\n";
      code = std::max(code, kConfig);
    }
  }
  return code;
}

int cmd_play(const std::string& path, std::uint64_t seed, std::string save) {
  const auto cfg = load_experiment(path);
  Transcript t = play_interactive(cfg, seed, std::cin, std::cout);
  if (save.empty()) {
    const fs::path dir = fs::path(cfg.out_dir) / cfg.name;
    fs::create_directories(dir);
    save = (dir / ("human_seed" + std::to_string(seed) + ".jsonl")).string();
  }
  const std::string tmp = save + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw GameError("cannot write " + tmp);
    write_transcript(out, t);
  }
  fs::rename(tmp, save);
  std::cout << "saved " << save << "\n";
  return kOk;
}

int cmd_solve(const std::string& path, const std::string& bias, const std::string& first, std::size_t cap) {
  const auto f = input([&] { return load_hypergraph(path); });
  const Bias b = input([&] { return Bias::parse(bias); });
  const Side s = input([&] { return parse_side(first); });
  const auto r = minimax_solve(f, b, s, cap);
  switch (r.status) {
    case SolveResult::Status::MakerWin:
      std::cout << "maker_win in " << r.maker_turns << " Maker turns";
      break;
    case SolveResult::Status::BreakerWin:
      std::cout << "breaker_win";
      break;
    case SolveResult::Status::Inconclusive:
      std::cout << "inconclusive (node cap " << cap << " reached)";
      break;
  }
  std::cout << ", " << r.nodes << " nodes\n";
  return kOk;
}

int cmd_beck(const std::string& path, const std::string& bias_text) {
  const auto f = input([&] { return load_hypergraph(path); });
  const Bias bias = input([&] { return Bias::parse(bias_text); });
  const double s = beck_sum(f, bias);
  std::cout << "sets " << f.sets.size() << ", board " << f.board_size << "\n"
            << "beck_sum " << s << " (log " << log_beck_sum(f, bias) << ")\n"
            << "threshold " << 1.0 / (1 + bias.q) << "\n"
            << "criterion " << (criterion_holds(f, bias) ? "holds: Breaker wins" : "fails: no conclusion") << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker game engine"};
  app.require_subcommand(1);

  std::string config, hyper, bias = "1:1", first = "breaker", save;
  std::vector<std::string> files;
  bool serial = false, as_json = false;
  std::uint64_t seed = 0;
  std::size_t node_cap = 50'000'000;

  auto* run = app.add_subcommand("run", "run every (seed, opponent) cell of an experiment");
  run->add_option("config", config, "experiment config (JSON)")->required();
  run->add_flag("--serial", serial, "run cells one at a time");

  auto* audit = app.add_subcommand("audit", "replay transcripts and re-check invariants");
  audit->add_option("transcripts", files, "transcript files")->required();
  audit->add_flag("--json", as_json, "one JSON report per file");

  auto* play = app.add_subcommand("play", "play Breaker against the configured Maker");
  play->add_option("config", config, "experiment config (JSON)")->required();
  play->add_option("--seed", seed, "seed");
  play->add_option("--save", save, "transcript path (default: output dir)");

  auto* solve = app.add_subcommand("solve", "exact game value on a hypergraph");
  solve->add_option("hypergraph", hyper, "hypergraph file")->required();
  solve->add_option("--bias", bias, "p:q");
  solve->add_option("--first", first, "maker or breaker");
  solve->add_option("--node-cap", node_cap, "search node limit");

  auto* beck = app.add_subcommand("beck", "Beck criterion for a hypergraph");
  beck->add_option("hypergraph", hyper, "hypergraph file")->required();
  beck->add_option("--bias", bias, "p:q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(config, serial);
    if (*audit) return cmd_audit(files, as_json);
    if (*play) return cmd_play(config, seed, save);
    if (*solve) return cmd_solve(hyper, bias, first, node_cap);
    if (*beck) return cmd_beck(hyper, bias);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
