#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbgame/core.hpp"
#include "mbgame/rng.hpp"

namespace mbgame {

class InvalidTreeError : public GameError {
 public:
  using GameError::GameError;
};

/// Tree on vertices 0..n-1.
struct TreeSpec {
  int n = 0;
  std::vector<std::vector<Vertex>> adj;

  // Throws InvalidTreeError unless the edges form a spanning tree.
  static TreeSpec from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);
  static TreeSpec from_prufer(const std::vector<int>& seq);  // n = seq.size() + 2
  std::vector<std::pair<Vertex, Vertex>> edges() const;      // (u, v) with u < v, sorted
  int degree(Vertex v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }
  int max_degree() const;
};

TreeSpec parse_tree(std::istream& in);  // `n`, then n-1 lines `u v`
TreeSpec load_tree(const std::string& path);
void write_tree(std::ostream& out, const TreeSpec& t);

TreeSpec random_prufer_tree(int n, CounterRng& rng);
// Random recursive tree: each new vertex attaches to a uniformly random
// earlier vertex that still has degree < max_deg.
TreeSpec random_bounded_degree_tree(int n, int max_deg, CounterRng& rng);
TreeSpec path_tree(int n);
TreeSpec star_tree(int n);
// Center 0 with `legs` paths of `leg_length` vertices each.
TreeSpec spider_tree(int legs, int leg_length);
// Spine of `spine` vertices, one pendant leaf on each.
TreeSpec caterpillar_tree(int spine);
// Two adjacent centers with `left` and `right` leaves.
TreeSpec double_star_tree(int left, int right);
// Handle path of `handle` vertices whose last vertex carries `bristles` leaves.
TreeSpec broom_tree(int handle, int bristles);
// Two degree-3 hubs joined by a long bare path, each hub carrying two long legs.
TreeSpec h_tree(int n);
// Builds a named family member with about n vertices; names as above without "_tree".
TreeSpec make_tree(const std::string& family, int n, CounterRng& rng);

struct DegreeCensus {
  std::vector<Vertex> d1, d2, dgt2;
  std::vector<Vertex> leaves;           // = d1
  std::vector<Vertex> leaf_neighbors;   // N_T(L), sorted
};

// Throws InvalidTreeError for n < 2 or when |D_>2| ≤ |D_1| - 2 fails.
DegreeCensus degree_census(const TreeSpec& t);

enum class TreeCase { CaseI, CaseII };
std::string_view to_string(TreeCase c);
// Smallest c with c^3 ≥ n^2, i.e. ⌈n^(2/3)⌉ in exact arithmetic.
long ceil_two_thirds_power(long n);
// CaseI iff |N_T(L)| ≥ n^(2/3), decided exactly as |N_T(L)|^3 ≥ n^2.
TreeCase classify_case(const TreeSpec& t);

// ⌈n^(2/3)⌉ leaves with pairwise distinct neighbors: for each leaf neighbor
// in increasing id order, its lowest-id leaf. Throws for CaseII trees.
std::vector<Vertex> select_independent_leaves(const TreeSpec& t, const DegreeCensus& census);

struct BarePath {
  Vertex a = 0, b = 0;            // endpoints, kept in F
  std::vector<Vertex> interior;   // from a to b
  int length() const { return static_cast<int>(interior.size()) + 1; }
};

struct BareDecomposition {
  std::vector<BarePath> paths;     // removed maximal bare paths, length ≥ threshold
  std::vector<char> in_forest;     // per tree vertex
  std::vector<std::pair<Vertex, Vertex>> forest_edges;
};

BareDecomposition bare_decomposition(const TreeSpec& t, int len_threshold);
// ⌈n^0.2⌉
int bare_length_threshold(int n);

struct PartitionRequest {
  std::vector<Vertex> vertices;                     // V \ L
  std::vector<std::pair<Vertex, Vertex>> endpoints; // (a_i, b_i)
  std::vector<int> sizes;                           // k_i, Σ = |vertices|
  int k = 0;                                        // vertex count of the host graph
  std::vector<std::vector<Vertex>> host_adj;        // host graph on 0..k-1
  double degree_coeff = 10.0;
  double degree_exp = -0.05;
  int retry_cap = 100;
};

struct PartitionResult {
  std::vector<std::vector<Vertex>> parts;
  int attempts = 0;
  std::vector<int> max_degree;   // realized max degree of each G_i
  std::vector<double> limit;     // 10 k_i k^-0.05
};

class PartitionFailure : public GameError {
 public:
  PartitionFailure(int attempts, const std::string& what) : GameError(what), attempts(attempts) {}
  int attempts;
};

// Uniformly random partition, resampled until every G_i = host[V_i ∪ {a_i,b_i}]
// has max degree ≤ coeff·k_i·k^exp. Throws PartitionFailure after retry_cap draws.
PartitionResult random_partition(const PartitionRequest& req, CounterRng& rng);

}  // namespace mbgame
