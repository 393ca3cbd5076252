#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mbgame/hypergraph.hpp"
#include "mbgame/strategy.hpp"
#include "mbgame/tree.hpp"

namespace mbgame {

using AdjList = std::vector<std::vector<Vertex>>;

struct SolveResult {
  enum class Status { MakerWin, BreakerWin, Inconclusive };
  Status status = Status::Inconclusive;
  int maker_turns = 0;  // optimal number of Maker turns when Maker wins
  std::size_t nodes = 0;
};

/// Exact game values by memoized search over ownership signatures. Maker
/// minimizes the number of his turns until he fully owns a winning set;
/// Breaker maximizes it (infinite when Breaker wins). Free elements that lie
/// in no live winning set are interchangeable, so only how many of them a
/// turn takes is branched on.
class MinimaxSolver {
 public:
  static constexpr int kInfinite = 1 << 29;
  static constexpr std::size_t kDefaultElementCap = 16;

  MinimaxSolver(const Hypergraph& f, Bias bias, std::size_t node_cap = 50'000'000,
                std::size_t element_cap = kDefaultElementCap);

  // Value of the position for `to_move`; nullopt once the node cap is hit.
  std::optional<int> value(const GameState& state, Side to_move);
  // First optimal turn in enumeration order; nullopt on cap or empty board.
  std::optional<std::vector<ElementId>> best_move(const GameState& state, Side to_move);
  SolveResult solve(const GameState& state, Side first);
  std::size_t nodes() const { return nodes_; }
  bool maker_owns_a_set(const GameState& state) const;

 private:
  struct CapHit {};
  int search(std::uint32_t mk, std::uint32_t br, Side side);
  template <typename Visit>
  void for_each_turn(std::uint32_t mk, std::uint32_t br, Side side, Visit&& visit) const;
  std::pair<std::uint32_t, std::uint32_t> masks(const GameState& s) const;

  std::vector<std::uint32_t> sets_;
  std::uint32_t all_;
  Bias bias_;
  std::size_t node_cap_;
  std::size_t nodes_ = 0;
  std::unordered_map<std::uint64_t, std::int32_t> memo_;
};

SolveResult minimax_solve(const Hypergraph& f, Bias bias, Side first, std::size_t node_cap = 50'000'000);

/// Plays an optimal side of the game on an explicit hypergraph.
class MinimaxStrategy : public Strategy {
 public:
  MinimaxStrategy(Side side, std::shared_ptr<const Hypergraph> f, Bias bias, std::size_t node_cap = 50'000'000);
  std::string name() const override { return side_ == Side::Maker ? "minimax-maker" : "minimax"; }
  Side side() const override { return side_; }
  TurnPlan play(const GameState& state, const TurnContext& ctx) override;
  bool succeeded(const GameState& state) const override;

 private:
  Side side_;
  std::shared_ptr<const Hypergraph> f_;
  Bias bias_;
  mutable MinimaxSolver solver_;
};

/// f[v] is the board vertex of tree vertex v. Throws when f is partial.
bool verify_tree_copy(const TreeSpec& t, const GameState& maker_graph, const std::vector<Vertex>& f);
bool verify_tree_copy(const TreeSpec& t, const AdjList& maker_graph, const std::vector<Vertex>& f);

/// Maximum matching of a bipartite graph given as A-side adjacency into
/// B-indices 0..r_b-1. match[a] = b or -1.
std::vector<int> maximum_matching(const std::vector<std::vector<int>>& a_adj, int r_b);
// The matching when it is perfect (|A| = |B| = r), nullopt otherwise.
std::optional<std::vector<int>> perfect_matching_oracle(const std::vector<std::vector<int>>& a_adj, int r);

// Exact Hamilton path test between u and w (u == w allowed only for n = 1).
bool hamilton_path_between(const AdjList& g, Vertex u, Vertex w);
// A Hamilton path between u and w, if any. Exponential; n ≤ 24.
std::optional<std::vector<Vertex>> find_hamilton_path(const AdjList& g, Vertex u, Vertex w);
// nullopt when |V| > vertex_cap.
std::optional<bool> hamilton_connected_oracle(const AdjList& g, int vertex_cap = 12);

struct HamConReport {
  bool holds = false;
  bool expansion_holds = false;
  bool joined_holds = false;
  bool exact = true;
  double d = 0;                 // log log k
  std::size_t small_max = 0;    // largest |S| checked for expansion
  std::size_t big_size = 0;     // ⌈k / log k⌉
  std::size_t samples = 0;      // sets sampled when not exact
  std::string regime;           // "degenerate" when D < 1
};

/// Both conditions of the expander criterion with D = log log k: every S with
/// |S| ≤ k/log k has |N(S)| ≥ D|S|, and every two disjoint sets of size
/// ≥ k/log k are joined by an edge. Exact when the subsets number at most
/// `enum_cap`, otherwise sampled.
HamConReport hamcon_condition_check(const AdjList& g, std::uint64_t enum_cap = 2'000'000, std::uint64_t seed = 0,
                                    std::size_t samples = 200'000);

struct HamConWitness {
  bool expansion = true;            // false: a t-set with ≥ t vertices outside A ∪ N(A)
  std::vector<std::size_t> set;     // S or A
  std::vector<std::size_t> outside; // V \ (set ∪ N(set))
};
// Up to `limit` violating sets, in scan order (expansion sizes ascending, then joined).
std::vector<HamConWitness> hamcon_violations(const AdjList& g, std::size_t limit, std::uint64_t enum_cap = 200'000,
                                             std::uint64_t seed = 0, std::size_t samples = 4'000);

// Every triangle of Maker's graph has a vertex of Maker-degree ≥ 3.
bool triangle_invariant_check(const GameState& state);
bool triangle_invariant_check(const AdjList& maker_graph);
// A triangle factor of the graph, as triples, if one exists.
std::optional<std::vector<std::array<Vertex, 3>>> find_triangle_factor(const AdjList& g);

AdjList maker_graph(const GameState& state);
AdjList graph_of(const GameState& state, Owner who);
AdjList available_graph(const GameState& state);  // Maker ∪ free edges

}  // namespace mbgame
