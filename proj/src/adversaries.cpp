#include "mbgame/adversaries.hpp"

#include <algorithm>

#include "mbgame/oracle.hpp"

namespace mbgame {

namespace {

std::vector<ElementId> free_elements(const GameState& s) {
  std::vector<ElementId> out;
  for (std::size_t e = 0; e < s.size(); ++e)
    if (s.is_free(static_cast<ElementId>(e))) out.push_back(static_cast<ElementId>(e));
  return out;
}

void top_up_lowest(const GameState& s, std::vector<ElementId>& picks, int budget) {
  for (std::size_t e = 0; e < s.size() && static_cast<int>(picks.size()) < budget; ++e) {
    const auto id = static_cast<ElementId>(e);
    if (s.is_free(id) && std::find(picks.begin(), picks.end(), id) == picks.end()) picks.push_back(id);
  }
}

bool taken(const std::vector<ElementId>& picks, ElementId e) {
  return std::find(picks.begin(), picks.end(), e) != picks.end();
}

}  // namespace

RandomBreaker::RandomBreaker(int q, std::uint64_t seed) : q_(q), rng_(seed, 0xB4EA) {}

TurnPlan RandomBreaker::play(const GameState& state, const TurnContext&) {
  auto f = free_elements(state);
  TurnPlan plan;
  for (int i = 0; i < q_ && !f.empty(); ++i) {
    const std::size_t j = rng_.below(f.size());
    plan.claims.push_back(f[j]);
    f[j] = f.back();
    f.pop_back();
  }
  return plan;
}

TurnPlan MaxDegreeBreaker::play(const GameState& state, const TurnContext&) {
  TurnPlan plan;
  const GraphBoard* g = state.graph();
  if (!g) {
    top_up_lowest(state, plan.claims, q_);
    return plan;
  }
  const int n = g->vertex_count();
  std::vector<int> extra(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < q_; ++i) {
    Vertex best = -1;
    int best_deg = -1;
    for (Vertex v = 0; v < n; ++v) {
      bool has_free = false;
      for (ElementId e : g->incident(v))
        if (state.is_free(e) && !taken(plan.claims, e)) {
          has_free = true;
          break;
        }
      if (!has_free) continue;
      const int d = state.degree(Side::Breaker, v) + extra[static_cast<std::size_t>(v)];
      if (d > best_deg) best_deg = d, best = v;
    }
    if (best < 0) break;
    ElementId pick = -1;
    int partner_deg = -1;
    for (ElementId e : g->incident(best)) {
      if (!state.is_free(e) || taken(plan.claims, e)) continue;
      auto [u, w] = g->endpoints(e);
      const Vertex other = u == best ? w : u;
      const int d = state.degree(Side::Maker, other);
      if (d > partner_deg || (d == partner_deg && e < pick)) partner_deg = d, pick = e;
    }
    plan.claims.push_back(pick);
    auto [u, w] = g->endpoints(pick);
    ++extra[static_cast<std::size_t>(u)];
    ++extra[static_cast<std::size_t>(w)];
  }
  return plan;
}

TurnPlan IsolatorBreaker::play(const GameState& state, const TurnContext&) {
  TurnPlan plan;
  const GraphBoard* g = state.graph();
  if (!g) {
    top_up_lowest(state, plan.claims, q_);
    return plan;
  }
  const int n = g->vertex_count();
  for (int i = 0; i < q_; ++i) {
    Vertex target = -1;
    int target_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
      bool has_free = false;
      for (ElementId e : g->incident(v))
        if (state.is_free(e) && !taken(plan.claims, e)) {
          has_free = true;
          break;
        }
      if (!has_free) continue;
      const int d = state.degree(Side::Maker, v);
      if (target < 0 || d < target_deg) target = v, target_deg = d;
    }
    if (target < 0) break;
    ElementId pick = -1;
    Vertex pick_other = n;
    for (ElementId e : g->incident(target)) {
      if (!state.is_free(e) || taken(plan.claims, e)) continue;
      auto [u, w] = g->endpoints(e);
      const Vertex other = u == target ? w : u;
      if (other < pick_other) pick_other = other, pick = e;
    }
    plan.claims.push_back(pick);
  }
  return plan;
}

std::optional<ElementId> triangle_delayer_move(const GameState& state, Vertex x, Vertex y) {
  const GraphBoard* g = state.graph();
  if (!g) throw GameError("the triangle delayer needs an edge board");
  const int n = g->vertex_count();
  for (auto [p, r] : {std::pair{x, y}, std::pair{y, x}})
    for (Vertex z = 0; z < n; ++z) {
      if (z == x || z == y) continue;
      if (state.edge_owned(Side::Maker, p, z) && state.edge_free(r, z)) return state.edge(r, z);
    }
  return state.lowest_free();
}

TurnPlan TriangleDelayer::play(const GameState& state, const TurnContext& ctx) {
  TurnPlan plan;
  const GraphBoard* g = state.graph();
  if (g && !ctx.opponent_last.empty()) {
    auto [x, y] = g->endpoints(ctx.opponent_last.back());
    if (auto e = triangle_delayer_move(state, x, y)) plan.claims.push_back(*e);
  }
  top_up_lowest(state, plan.claims, q_);
  return plan;
}

std::vector<std::string> breaker_names() { return {"random", "null", "max-degree", "isolator", "triangle-delayer", "lowest"}; }

namespace {

class LowestBreaker : public Strategy {
 public:
  explicit LowestBreaker(int q) : q_(q) {}
  std::string name() const override { return "lowest"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& s, const TurnContext&) override {
    TurnPlan p;
    top_up_lowest(s, p.claims, q_);
    return p;
  }

 private:
  int q_;
};

}  // namespace

std::unique_ptr<Strategy> make_breaker(const std::string& name, int q, std::uint64_t seed) {
  if (name == "random") return std::make_unique<RandomBreaker>(q, seed);
  if (name == "null") return std::make_unique<NullBreaker>();
  if (name == "max-degree") return std::make_unique<MaxDegreeBreaker>(q);
  if (name == "isolator") return std::make_unique<IsolatorBreaker>(q);
  if (name == "triangle-delayer") return std::make_unique<TriangleDelayer>(q);
  if (name == "lowest") return std::make_unique<LowestBreaker>(q);
  throw GameError("unknown breaker '" + name + "'");
}

bool has_triangle_factor(const GameState& state) {
  if (state.vertex_count() % 3 != 0) return false;
  for (Vertex v = 0; v < state.vertex_count(); ++v)
    if (state.degree(Side::Maker, v) < 2) return false;
  return find_triangle_factor(maker_graph(state)).has_value();
}

TriangleMaker::TriangleMaker(Kind kind, std::uint64_t seed) : kind_(kind), rng_(seed, 0x7A1) {}

std::string TriangleMaker::name() const {
  switch (kind_) {
    case Kind::Random: return "random";
    case Kind::Closer: return "closer";
    case Kind::Planner: return "planner";
  }
  return "?";
}

bool TriangleMaker::succeeded(const GameState& state) const { return has_triangle_factor(state); }

TurnPlan TriangleMaker::play(const GameState& state, const TurnContext&) {
  const GraphBoard* g = state.graph();
  if (!g) throw GameError("triangle makers need an edge board");
  const int n = g->vertex_count();
  if (kind_ == Kind::Random) {
    auto f = free_elements(state);
    if (f.empty()) return TurnPlan::pass();
    return TurnPlan::single(f[rng_.below(f.size())]);
  }
  if (kind_ == Kind::Closer) {
    // vertices already inside some Maker triangle
    auto m = maker_graph(state);
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v : m[static_cast<std::size_t>(u)])
        for (Vertex w : m[static_cast<std::size_t>(v)])
          if (w != u && std::binary_search(m[static_cast<std::size_t>(u)].begin(), m[static_cast<std::size_t>(u)].end(), w))
            covered[static_cast<std::size_t>(u)] = 1;
    // close a cherry on uncovered vertices
    for (Vertex v = 0; v < n; ++v) {
      if (covered[static_cast<std::size_t>(v)]) continue;
      const auto& nb = m[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!covered[static_cast<std::size_t>(nb[i])] && !covered[static_cast<std::size_t>(nb[j])] &&
              state.edge_free(nb[i], nb[j]))
            return TurnPlan::single(state.edge(nb[i], nb[j]), "close");
    }
    // grow a cherry at the lowest uncovered vertex
    for (Vertex v = 0; v < n; ++v) {
      if (covered[static_cast<std::size_t>(v)]) continue;
      for (Vertex w = 0; w < n; ++w)
        if (w != v && !covered[static_cast<std::size_t>(w)] && state.edge_free(v, w))
          return TurnPlan::single(state.edge(v, w), "grow");
    }
    if (auto e = state.lowest_free()) return TurnPlan::single(*e, "fallback");
    return TurnPlan::pass();
  }
  // planner: a triangle factor of Maker ∪ free edges, claim its lowest free edge
  auto avail = available_graph(state);
  auto plan = find_triangle_factor(avail);
  if (!plan) {
    if (auto e = state.lowest_free()) return TurnPlan::single(*e, "no factor left");
    return TurnPlan::pass();
  }
  for (const auto& t : *plan)
    for (auto [a, b] : {std::pair{t[0], t[1]}, std::pair{t[0], t[2]}, std::pair{t[1], t[2]}})
      if (state.edge_free(a, b)) return TurnPlan::single(state.edge(a, b), "plan");
  if (auto e = state.lowest_free()) return TurnPlan::single(*e);
  return TurnPlan::pass();
}

std::vector<std::string> triangle_maker_names() { return {"random", "closer", "planner"}; }

std::unique_ptr<Strategy> make_triangle_maker(const std::string& name, std::uint64_t seed) {
  if (name == "random") return std::make_unique<TriangleMaker>(TriangleMaker::Kind::Random, seed);
  if (name == "closer") return std::make_unique<TriangleMaker>(TriangleMaker::Kind::Closer, seed);
  if (name == "planner") return std::make_unique<TriangleMaker>(TriangleMaker::Kind::Planner, seed);
  throw GameError("unknown triangle maker '" + name + "'");
}

}  // namespace mbgame
