#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbgame/parallel.hpp"
#include "mbgame/strategy.hpp"
#include "mbgame/subgames.hpp"
#include "mbgame/tree.hpp"

namespace mbgame {

struct EmbedConfig {
  double alpha = 0.004;            // Breaker bias exponent, b ≤ n^α
  double epsilon = 0.04;           // max degree exponent, Δ(T) ≤ n^ε
  double danger_exp = 0.5;         // Case I: dangerous iff d_B ≥ n^danger_exp
  double connector_coeff = 11.0;   // connector budget coeff·n^α
  double open_degree_exp = 0.6;    // audit cap for d_B of available/open vertices
  double move_constant = 10.0;     // report moves against n + C n^0.95
  double partition_coeff = 10.0;
  double partition_exp = -0.05;
  int partition_retries = 100;
  MatchingOptions matching{MatchingOptions::Mode::Auto, 100'000};
  HamPathParams hampath = [] {
    HamPathParams p;
    p.stage2.mode = HamConOptions::Mode::Heuristic;
    return p;
  }();
  std::uint64_t seed = 0;
};

/// Maker strategy for building a copy of a spanning tree T on K_n.
class TreeEmbedMaker : public Strategy {
 public:
  TreeEmbedMaker(TreeSpec tree, int q, EmbedConfig cfg = {});
  std::string name() const override { return "tree-embed"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;
  std::vector<std::string> check_invariants(const GameState& state) const override;
  nlohmann::json parameters() const override;
  nlohmann::json result() const override;

  TreeCase tree_case() const { return case_; }
  int stage() const { return stage_; }
  const TreeSpec& tree() const { return t_; }
  // Complete map tree vertex → board vertex once Maker owns the copy.
  std::optional<std::vector<Vertex>> embedding(const GameState& state) const;
  bool guards_held() const { return guards_; }
  const ParallelMaker* composite() const { return stage2_.get(); }

 private:
  struct Connector {
    Vertex u = -1, v = -1;                 // board vertices
    Vertex x_t = -1, y_t = -1, v_t = -1;   // tree path u'–x'–y'–v'
    std::vector<Vertex> indep, nv;
    int c = 1, moves = 0;
    bool shortcut = false;   // u'–x'–v' through a fan at v
  };

  bool taken(Vertex board) const { return inv_[static_cast<std::size_t>(board)] >= 0; }
  bool open_in(Vertex tv, bool tprime_only) const;
  void embed(Vertex tv, Vertex board);
  std::optional<Vertex> lowest_available_via(const GameState& state, Vertex from) const;

  TurnPlan play_case1(const GameState& state, const TurnContext& ctx);
  TurnPlan play_case2(const GameState& state, const TurnContext& ctx);
  std::optional<TurnPlan> close_step(const GameState& state);
  std::optional<TurnPlan> connector_step(const GameState& state);
  std::optional<TurnPlan> start_connector(const GameState& state, Vertex v);
  std::optional<TurnPlan> shortcut_bridge(const GameState& state);
  TurnPlan start_case1_stage2(const GameState& state, const TurnContext& ctx);
  TurnPlan start_case2_stage2(const GameState& state, const TurnContext& ctx);
  TurnPlan delegate(const GameState& state, const TurnContext& ctx);

  TreeSpec t_;
  int n_, q_;
  EmbedConfig cfg_;
  TreeCase case_;
  DegreeCensus census_;
  bool guards_ = false;
  int stage_ = 1;
  std::size_t moves_ = 0;

  std::vector<Vertex> f_, inv_;   // tree → board, board → tree
  std::size_t embedded_ = 0;

  // Case I
  std::vector<char> in_lprime_;
  std::size_t tprime_left_ = 0;
  std::optional<Vertex> closing_;   // board vertex being closed
  std::optional<Connector> conn_;
  std::vector<char> ever_dangerous_, skipped_;
  std::size_t ever_dangerous_count_ = 0, connectors_ = 0, closures_ = 0, shortcuts_ = 0;
  int max_connector_moves_ = 0;
  double danger_threshold_ = 0;
  std::vector<Vertex> stage2_y_, stage2_x_;   // Case I matching sides
  std::vector<Vertex> stage2_leaf_;           // tree leaf hanging off stage2_y_[i]
  const MatchingMaker* matcher_ = nullptr;

  // Case II
  BareDecomposition bare_;
  std::vector<std::vector<Vertex>> forest_adj_;
  int bare_threshold_ = 0;
  std::size_t stage1_embedded_ = 0;
  std::vector<std::vector<Vertex>> region_vertices_;   // board ids, sorted
  std::vector<const HamPathMaker*> region_makers_;
  int region_bias_ = 0;
  int partition_attempts_ = 0;

  std::size_t stage1_moves_ = 0;
  std::unique_ptr<ParallelMaker> stage2_;
  mutable std::vector<std::string> soft_;
  mutable std::size_t soft_count_ = 0;
  mutable double max_open_degree_ = 0;
};

// Moves budget n + C n^0.95 used in reports.
double embed_move_budget(int n, double c = 10.0);

}  // namespace mbgame
