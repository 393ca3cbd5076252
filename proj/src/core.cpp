#include "mbgame/core.hpp"

#include <algorithm>
#include <charconv>

namespace mbgame {

std::string_view to_string(Side s) { return s == Side::Maker ? "maker" : "breaker"; }

Side parse_side(std::string_view text) {
  if (text == "maker" || text == "Maker") return Side::Maker;
  if (text == "breaker" || text == "Breaker") return Side::Breaker;
  throw GameError("unknown side '" + std::string(text) + "'");
}

namespace {
std::string_view owner_name(Owner o) {
  switch (o) {
    case Owner::Free: return "free";
    case Owner::Maker: return "maker";
    case Owner::Breaker: return "breaker";
  }
  return "?";
}
}  // namespace

DoubleClaimError::DoubleClaimError(ElementId e, Owner current)
    : GameError("element " + std::to_string(e) + " already owned by " + std::string(owner_name(current))),
      element(e) {}

Bias::Bias(int maker, int breaker) : p(maker), q(breaker) {
  if (p < 1 || q < 1) throw GameError("bias must satisfy p >= 1 and q >= 1");
}

Bias Bias::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw GameError("bias must look like p:q");
  int p = 0;
  int q = 0;
  const auto left = text.substr(0, colon);
  const auto right = text.substr(colon + 1);
  auto r1 = std::from_chars(left.data(), left.data() + left.size(), p);
  auto r2 = std::from_chars(right.data(), right.data() + right.size(), q);
  if (r1.ec != std::errc() || r2.ec != std::errc() || r1.ptr != left.data() + left.size() ||
      r2.ptr != right.data() + right.size())
    throw GameError("bias must look like p:q");
  return Bias(p, q);
}

std::string Bias::str() const { return std::to_string(p) + ":" + std::to_string(q); }

ElementId complete_edge_index(int n, Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

GraphBoard::GraphBoard(int n, std::vector<std::pair<Vertex, Vertex>> edges, std::string kind)
    : n_(n), edges_(std::move(edges)), kind_(std::move(kind)) {
  ids_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  incident_.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto [u, v] = edges_[i];
    const auto id = static_cast<ElementId>(i);
    ids_[static_cast<std::size_t>(u) * n + v] = id;
    ids_[static_cast<std::size_t>(v) * n + u] = id;
    incident_[static_cast<std::size_t>(u)].push_back(id);
    incident_[static_cast<std::size_t>(v)].push_back(id);
  }
}

std::shared_ptr<const GraphBoard> GraphBoard::complete(int n) {
  if (n < 2) throw InvalidBoardError("complete board needs n >= 2, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return std::shared_ptr<const GraphBoard>(new GraphBoard(n, std::move(edges), "complete"));
}

std::shared_ptr<const GraphBoard> GraphBoard::complete_bipartite(int r) {
  if (r < 1) throw InvalidBoardError("bipartite board needs r >= 1");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < r; ++a)
    for (Vertex b = r; b < 2 * r; ++b) edges.emplace_back(a, b);
  return std::shared_ptr<const GraphBoard>(new GraphBoard(2 * r, std::move(edges), "bipartite"));
}

std::shared_ptr<const GraphBoard> GraphBoard::from_edges(int n, std::vector<std::pair<Vertex, Vertex>> edges) {
  if (n < 1) throw InvalidBoardError("graph board needs at least one vertex");
  for (auto& [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) throw InvalidBoardError("bad edge in graph board");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw InvalidBoardError("duplicate edge in graph board");
  return std::shared_ptr<const GraphBoard>(new GraphBoard(n, std::move(edges), "graph"));
}

GameState GameState::generic(std::size_t size) {
  if (size == 0) throw InvalidBoardError("board must have at least one element");
  GameState s;
  s.owner_.assign(size, Owner::Free);
  return s;
}

GameState GameState::on_graph(std::shared_ptr<const GraphBoard> graph) {
  if (!graph || graph->edge_count() == 0) throw InvalidBoardError("graph board has no edges");
  GameState s;
  s.owner_.assign(graph->edge_count(), Owner::Free);
  s.maker_adj_.resize(static_cast<std::size_t>(graph->vertex_count()));
  s.breaker_adj_.resize(static_cast<std::size_t>(graph->vertex_count()));
  s.graph_ = std::move(graph);
  return s;
}

GameState complete_board(int n) { return GameState::on_graph(GraphBoard::complete(n)); }

void GameState::claim(Side side, ElementId e) {
  if (!valid(e)) throw GameError("element " + std::to_string(e) + " is not on the board");
  auto& slot = owner_[static_cast<std::size_t>(e)];
  if (slot != Owner::Free) throw DoubleClaimError(e, slot);
  slot = owner_of(side);
  (side == Side::Maker ? maker_claims_ : breaker_claims_) += 1;
  if (graph_) {
    auto [u, v] = graph_->endpoints(e);
    auto& adj = side == Side::Maker ? maker_adj_ : breaker_adj_;
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
}

std::optional<ElementId> GameState::lowest_free() const {
  for (std::size_t i = 0; i < owner_.size(); ++i)
    if (owner_[i] == Owner::Free) return static_cast<ElementId>(i);
  return std::nullopt;
}

std::optional<Owner> GameState::edge_owner(Vertex u, Vertex v) const {
  if (u == v) return std::nullopt;
  const ElementId e = graph_->edge_id(u, v);
  if (e < 0) return std::nullopt;
  return owner(e);
}

bool GameState::edge_free(Vertex u, Vertex v) const {
  auto o = edge_owner(u, v);
  return o && *o == Owner::Free;
}

bool GameState::edge_owned(Side side, Vertex u, Vertex v) const {
  auto o = edge_owner(u, v);
  return o && *o == owner_of(side);
}

bool GameState::degree_caches_consistent() const {
  if (!graph_) return true;
  std::vector<int> dm(static_cast<std::size_t>(graph_->vertex_count()), 0);
  std::vector<int> db(dm.size(), 0);
  for (std::size_t e = 0; e < owner_.size(); ++e) {
    if (owner_[e] == Owner::Free) continue;
    auto [u, v] = graph_->endpoints(static_cast<ElementId>(e));
    auto& d = owner_[e] == Owner::Maker ? dm : db;
    ++d[static_cast<std::size_t>(u)];
    ++d[static_cast<std::size_t>(v)];
  }
  for (std::size_t v = 0; v < dm.size(); ++v) {
    if (dm[v] != static_cast<int>(maker_adj_[v].size()) || db[v] != static_cast<int>(breaker_adj_[v].size()))
      return false;
  }
  return true;
}

}  // namespace mbgame
