#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbgame/oracle.hpp"
#include "mbgame/parallel.hpp"
#include "mbgame/potential.hpp"
#include "mbgame/strategy.hpp"

namespace mbgame {

class TooLargeError : public GameError {
 public:
  using GameError::GameError;
};

// ---- paths -----------------------------------------------------------------

/// Hamilton path from x to y in `avail` using as few edges outside `owned` as
/// possible (bitmask DP). n ≤ 20. nullopt when avail has no such path.
std::optional<std::vector<Vertex>> cheapest_hamilton_path(const AdjList& avail, const AdjList& owned, Vertex x, Vertex y);

/// Rotation-extension search for a Hamilton path x..y in `g`, extending along
/// `preferred` edges first. `hint` seeds the initial path when it starts at x.
std::optional<std::vector<Vertex>> posa_hamilton_path(const AdjList& g, const AdjList& preferred, Vertex x, Vertex y,
                                                      const std::vector<Vertex>& hint, CounterRng& rng,
                                                      std::size_t max_steps = 200'000);

// Exact for n ≤ 20, heuristic above.
std::optional<std::vector<Vertex>> hamilton_path_in(const AdjList& g, Vertex x, Vertex y, CounterRng& rng);

bool is_hamilton_path(const AdjList& g, const std::vector<Vertex>& path, Vertex x, Vertex y);

// ---- Hall game -------------------------------------------------------------

/// Winning sets of the Hall game on a bipartite edge board with parts
/// {0..r-1} and {r..2r-1}: for every A' ⊆ A, B' ⊆ B with |A'| + |B'| = r + 1,
/// the board edges between them. Throws TooLargeError when the family would
/// exceed `cap` sets.
Hypergraph hall_hypergraph(const GameState& board, int r, std::size_t cap = 1'000'000);
double hall_set_count(int r);  // Σ_t C(r,t) C(r,r-t+1) = C(2r, r+1)

struct MatchingOptions {
  enum class Mode { Exact, Heuristic, Auto };
  Mode mode = Mode::Auto;
  std::size_t enum_cap = 1'000'000;
};

/// Builds a perfect matching of the bipartite board in a (1:q) game. Exact
/// mode plays the potential strategy of HallBreaker in the (q:1) Hall game.
/// Heuristic mode forfeits once the non-Breaker graph has no perfect matching;
/// otherwise it takes the unmatched vertex with fewest free edges and claims
/// the free edge nearest it on a cheapest augmenting path.
class MatchingMaker : public Strategy {
 public:
  MatchingMaker(const GameState& board, int r, int q, MatchingOptions opt = {},
                std::shared_ptr<const Hypergraph> hall = nullptr);
  std::string name() const override { return exact() ? "matching-exact" : "matching-heuristic"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;
  nlohmann::json parameters() const override;
  nlohmann::json result() const override;
  std::vector<std::string> check_invariants(const GameState& state) const override;
  bool exact() const { return ledger_ != nullptr; }
  // Matching in the Maker graph as B-vertex per A-vertex (board ids), when perfect.
  std::optional<std::vector<Vertex>> matching(const GameState& state) const;

 private:
  int r_, q_;
  MatchingOptions opt_;
  std::unique_ptr<PotentialLedger> ledger_;
  double beck_ = -1;
  bool criterion_ = false;
  std::string fallback_reason_;
  int min_degree_ = 0;
  mutable std::optional<std::vector<Vertex>> last_matching_;
};

// ---- Hamilton connectivity -------------------------------------------------

struct HamConOptions {
  enum class Mode { Exact, Heuristic, Auto };
  Mode mode = Mode::Auto;
  std::size_t enum_cap = 1'000'000;   // winning sets of H1 ∪ H2
  std::uint64_t check_cap = 200'000;  // subsets per condition check in play
  int min_k = 8;
  double move_constant = 10.0;        // audit: moves ≤ C k log² k
  // Goal beyond the expander condition: a Hamilton path between these two
  // vertices, or (when unset and k ≤ 12) Hamilton connectivity.
  std::optional<std::pair<Vertex, Vertex>> endpoints;
  std::uint64_t seed = 0;
};

struct DualFamilySize {
  double h1 = 0, h2 = 0;
  double total() const { return h1 + h2; }
};
DualFamilySize hamcon_family_size(int k);
// The sets E_G(A,B) of H1 ∪ H2 on the edge board; throws TooLargeError above cap.
Hypergraph hamcon_hypergraph(const GameState& board, std::size_t cap);
// |B| for |A| = a in H1: the smallest leftover that violates |N(A)| ≥ D|A|.
int h1_b_size(int k, int a);

/// Maker for the game "build a Hamilton connected graph" on an edge board.
/// Secures the expander condition (dual potential play on H1 ∪ H2 in exact
/// mode, witness-driven repair otherwise). With endpoints set it then claims
/// the free edges of a target Hamilton path; the heuristic mode claims the
/// target path first and the game ends once Maker owns it.
class HamConMaker : public Strategy {
 public:
  HamConMaker(const GameState& board, int q, HamConOptions opt = {});
  std::string name() const override { return exact_ ? "hamcon-exact" : "hamcon-heuristic"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;
  nlohmann::json parameters() const override;
  nlohmann::json result() const override;
  // Maker-owned Hamilton path between the goal endpoints, once found.
  const std::vector<Vertex>& path() const { return done_path_; }

 private:
  bool condition_now(const GameState& state) const;
  bool goal_now(const GameState& state) const;
  std::optional<ElementId> condition_move(const GameState& state);
  std::optional<ElementId> goal_move(const GameState& state, std::string& why);

  int k_, q_;
  HamConOptions opt_;
  bool exact_ = false;
  std::unique_ptr<PotentialLedger> ledger_;
  double beck_ = -1;
  bool criterion_ = false;
  mutable bool condition_done_ = false;
  mutable std::vector<Vertex> done_path_;
  std::vector<Vertex> target_;
  std::size_t moves_ = 0;
  std::size_t condition_moves_ = 0;
  std::size_t replans_ = 0;
  bool path_first_ = false;
  int min_degree_ = 0;
  mutable std::optional<bool> hc_;
  mutable CounterRng rng_;
};

// ---- Hamilton path between fixed endpoints ---------------------------------

struct HamPathParams {
  double gamma = 0.1;
  double beta = 0.5;
  std::optional<double> delta_prime;  // default max(1/2 + 2γ, β) + 0.01
  std::optional<double> delta;        // default δ' + 2γ + 0.01
  HamConOptions stage2;
  void resolve();
  double dp() const { return *delta_prime; }
  double d() const { return *delta; }
};

/// Two-path strategy: grows P_a and P_b while handling dangerous vertices,
/// then builds a Hamilton path of the leftover region between the two path
/// ends and splices a..P_a..(G' path)..P_b..b.
class HamPathMaker : public Strategy {
 public:
  HamPathMaker(const GameState& board, Vertex a, Vertex b, int q, HamPathParams params = {});
  std::string name() const override { return "hampath"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;
  std::vector<std::string> check_invariants(const GameState& state) const override;
  nlohmann::json parameters() const override;
  nlohmann::json result() const override;

  const std::vector<Vertex>& path_a() const { return pa_; }
  const std::vector<Vertex>& path_b() const { return pb_; }
  int stage() const { return stage_; }
  // Final a..b Hamilton path once won.
  std::optional<std::vector<Vertex>> final_path(const GameState& state) const;
  bool guards_held() const { return guards_; }
  const ParallelMaker* composite() const { return stage2_.get(); }

 private:
  struct Connector {
    Vertex v = -1, x = -1;
    std::vector<Vertex> indep;
    std::vector<Vertex> nv;   // Maker neighbours of v inside I
    int c = 1;
    int moves = 0;
    bool pending_extension = false;
  };

  bool eligible(const GameState& state, Vertex v) const;
  std::vector<Vertex> dangerous(const GameState& state) const;
  bool stage1_running() const;
  std::optional<ElementId> extend(const GameState& state, std::vector<Vertex>& path, std::string& note);
  TurnPlan connector_step(const GameState& state);
  TurnPlan start_stage2(const GameState& state, const TurnContext& ctx);

  int k_, q_;
  Vertex a_, b_;
  HamPathParams p_;
  double danger_threshold_;
  double stop_threshold_;
  bool guards_ = false;
  std::vector<char> used_;
  std::vector<Vertex> pa_, pb_;
  std::optional<Connector> conn_;
  int extend_next_ = -1;          // 0: P_a, 1: P_b owes one more extension
  std::vector<char> ever_dangerous_;
  std::size_t ever_dangerous_count_ = 0;
  int stage_ = 1;
  std::size_t moves_ = 0;
  std::size_t stage1_moves_ = 0;
  std::size_t connectors_ = 0;
  int max_connector_moves_ = 0;
  std::size_t max_dangerous_ = 0;
  mutable long max_eligible_breaker_degree_ = 0;
  std::vector<Vertex> g_vertices_;          // region ids of G'
  std::unique_ptr<ParallelMaker> stage2_;   // one board: the HamCon game on G'
  const HamConMaker* stage2_inner_ = nullptr;
  mutable std::vector<std::string> soft_;
  mutable std::size_t soft_count_ = 0;
};

}  // namespace mbgame
