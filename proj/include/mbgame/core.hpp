#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mbgame {

using ElementId = std::int32_t;
using Vertex = std::int32_t;

enum class Side : std::uint8_t { Maker, Breaker };
enum class Owner : std::uint8_t { Free = 0, Maker = 1, Breaker = 2 };

constexpr Side opponent(Side s) { return s == Side::Maker ? Side::Breaker : Side::Maker; }
constexpr Owner owner_of(Side s) { return s == Side::Maker ? Owner::Maker : Owner::Breaker; }
std::string_view to_string(Side s);
Side parse_side(std::string_view text);

class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidBoardError : public GameError {
 public:
  using GameError::GameError;
};

class DoubleClaimError : public GameError {
 public:
  DoubleClaimError(ElementId e, Owner current);
  ElementId element;
};

/// Maker claims `p` elements per turn, Breaker claims `q`.
struct Bias {
  int p = 1;
  int q = 1;

  Bias() = default;
  Bias(int maker, int breaker);
  int of(Side s) const { return s == Side::Maker ? p : q; }
  static Bias parse(std::string_view text);  // "p:q"
  std::string str() const;
  friend bool operator==(const Bias&, const Bias&) = default;
};

/// Edge board of a simple graph. Element ids enumerate the edges in
/// lexicographic order of (u, v) with u < v; for K_n the id of (u, v) is
/// u*n - u*(u+1)/2 + (v - u - 1).
class GraphBoard {
 public:
  static std::shared_ptr<const GraphBoard> complete(int n);
  static std::shared_ptr<const GraphBoard> complete_bipartite(int r);  // parts {0..r-1}, {r..2r-1}
  static std::shared_ptr<const GraphBoard> from_edges(int n, std::vector<std::pair<Vertex, Vertex>> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::pair<Vertex, Vertex> endpoints(ElementId e) const { return edges_[static_cast<std::size_t>(e)]; }
  // -1 when (u, v) is not an edge of the board.
  ElementId edge_id(Vertex u, Vertex v) const {
    return ids_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)];
  }
  const std::vector<ElementId>& incident(Vertex v) const { return incident_[static_cast<std::size_t>(v)]; }
  std::string kind() const { return kind_; }

 private:
  GraphBoard(int n, std::vector<std::pair<Vertex, Vertex>> edges, std::string kind);
  int n_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<ElementId> ids_;
  std::vector<std::vector<ElementId>> incident_;
  std::string kind_;
};

ElementId complete_edge_index(int n, Vertex u, Vertex v);

/// Ownership of every board element, plus Maker/Breaker degree caches and
/// adjacency lists when the board is an edge board.
class GameState {
 public:
  static GameState generic(std::size_t size);
  static GameState on_graph(std::shared_ptr<const GraphBoard> graph);

  std::size_t size() const { return owner_.size(); }
  Owner owner(ElementId e) const { return owner_[static_cast<std::size_t>(e)]; }
  bool is_free(ElementId e) const { return owner(e) == Owner::Free; }
  bool valid(ElementId e) const { return e >= 0 && static_cast<std::size_t>(e) < owner_.size(); }
  const std::vector<Owner>& ownership() const { return owner_; }

  // Throws DoubleClaimError when e is not Free.
  void claim(Side side, ElementId e);

  std::size_t claims(Side side) const { return side == Side::Maker ? maker_claims_ : breaker_claims_; }
  std::size_t free_count() const { return owner_.size() - maker_claims_ - breaker_claims_; }
  std::optional<ElementId> lowest_free() const;

  // Edge-board queries; all of these require graph() != nullptr.
  const GraphBoard* graph() const { return graph_.get(); }
  std::shared_ptr<const GraphBoard> graph_ptr() const { return graph_; }
  int vertex_count() const { return graph_ ? graph_->vertex_count() : 0; }
  int degree(Side side, Vertex v) const {
    return static_cast<int>(side == Side::Maker ? maker_adj_[static_cast<std::size_t>(v)].size()
                                                : breaker_adj_[static_cast<std::size_t>(v)].size());
  }
  const std::vector<Vertex>& neighbors(Side side, Vertex v) const {
    return side == Side::Maker ? maker_adj_[static_cast<std::size_t>(v)] : breaker_adj_[static_cast<std::size_t>(v)];
  }
  ElementId edge(Vertex u, Vertex v) const { return graph_->edge_id(u, v); }
  // Owner of edge (u, v); nullopt when it is not a board edge.
  std::optional<Owner> edge_owner(Vertex u, Vertex v) const;
  bool edge_free(Vertex u, Vertex v) const;
  bool edge_owned(Side side, Vertex u, Vertex v) const;

  // Recomputes degrees from ownership and compares them to the caches.
  bool degree_caches_consistent() const;

 private:
  std::vector<Owner> owner_;
  std::size_t maker_claims_ = 0;
  std::size_t breaker_claims_ = 0;
  std::shared_ptr<const GraphBoard> graph_;
  std::vector<std::vector<Vertex>> maker_adj_;
  std::vector<std::vector<Vertex>> breaker_adj_;
};

/// Edge board of K_n with every element Free. Throws InvalidBoardError for n < 2.
GameState complete_board(int n);

}  // namespace mbgame
