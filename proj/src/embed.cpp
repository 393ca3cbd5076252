#include "mbgame/embed.hpp"

#include <algorithm>
#include <cmath>

#include "mbgame/oracle.hpp"

namespace mbgame {

double embed_move_budget(int n, double c) { return n + c * std::pow(static_cast<double>(n), 0.95); }

TreeEmbedMaker::TreeEmbedMaker(TreeSpec tree, int q, EmbedConfig cfg)
    : t_(std::move(tree)), n_(t_.n), q_(q), cfg_(std::move(cfg)), case_(classify_case(t_)), census_(degree_census(t_)) {
  if (q < 1) throw GameError("tree-embed needs q >= 1");
  cfg_.hampath.resolve();
  const double n = n_;
  guards_ = cfg_.alpha > 0 && cfg_.alpha < 0.005 && cfg_.epsilon > 0 && cfg_.epsilon < 0.05 &&
            q <= std::pow(n, cfg_.alpha) && t_.max_degree() <= std::pow(n, cfg_.epsilon);
  f_.assign(static_cast<std::size_t>(n_), -1);
  inv_.assign(static_cast<std::size_t>(n_), -1);
  if (case_ == TreeCase::CaseI) {
    in_lprime_.assign(static_cast<std::size_t>(n_), 0);
    for (Vertex l : select_independent_leaves(t_, census_)) in_lprime_[static_cast<std::size_t>(l)] = 1;
    tprime_left_ = static_cast<std::size_t>(std::count(in_lprime_.begin(), in_lprime_.end(), 0));
    ever_dangerous_.assign(static_cast<std::size_t>(n_), 0);
    skipped_.assign(static_cast<std::size_t>(n_), 0);
    danger_threshold_ = std::pow(n, cfg_.danger_exp);
    Vertex w = 0;
    while (in_lprime_[static_cast<std::size_t>(w)]) ++w;
    embed(w, 0);
  } else {
    bare_threshold_ = bare_length_threshold(n_);
    bare_ = bare_decomposition(t_, bare_threshold_);
    forest_adj_.assign(static_cast<std::size_t>(n_), {});
    for (auto [u, v] : bare_.forest_edges) {
      forest_adj_[static_cast<std::size_t>(u)].push_back(v);
      forest_adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& a : forest_adj_) std::sort(a.begin(), a.end());
  }
}

bool TreeEmbedMaker::open_in(Vertex tv, bool tprime_only) const {
  if (f_[static_cast<std::size_t>(tv)] < 0) return false;
  for (Vertex w : t_.adj[static_cast<std::size_t>(tv)])
    if (f_[static_cast<std::size_t>(w)] < 0 && !(tprime_only && in_lprime_[static_cast<std::size_t>(w)])) return true;
  return false;
}

void TreeEmbedMaker::embed(Vertex tv, Vertex board) {
  if (f_[static_cast<std::size_t>(tv)] >= 0 || inv_[static_cast<std::size_t>(board)] >= 0)
    throw GameError("embedding would not be injective");
  f_[static_cast<std::size_t>(tv)] = board;
  inv_[static_cast<std::size_t>(board)] = tv;
  ++embedded_;
  if (case_ == TreeCase::CaseI && !in_lprime_[static_cast<std::size_t>(tv)]) --tprime_left_;
}

std::optional<Vertex> TreeEmbedMaker::lowest_available_via(const GameState& state, Vertex from) const {
  for (Vertex x = 0; x < n_; ++x)
    if (!taken(x) && x != from && state.edge_free(from, x)) return x;
  return std::nullopt;
}

TurnPlan TreeEmbedMaker::play(const GameState& state, const TurnContext& ctx) {
  ++moves_;
  if (moves_ > 2 * static_cast<std::size_t>(n_)) return TurnPlan::give_up("tree-embed exceeded 2n Maker moves");
  if (stage_ == 2) return delegate(state, ctx);
  return case_ == TreeCase::CaseI ? play_case1(state, ctx) : play_case2(state, ctx);
}

TurnPlan TreeEmbedMaker::delegate(const GameState& state, const TurnContext& ctx) {
  if (!stage2_) return TurnPlan::pass("embedding complete");
  auto plan = stage2_->play(state, ctx);
  plan.note = "stage2 " + plan.note;
  return plan;
}

// ---- Case I ----------------------------------------------------------------

std::optional<TurnPlan> TreeEmbedMaker::close_step(const GameState& state) {
  const Vertex v = *closing_;
  const Vertex vt = inv_[static_cast<std::size_t>(v)];
  for (Vertex w : t_.adj[static_cast<std::size_t>(vt)]) {
    if (f_[static_cast<std::size_t>(w)] >= 0) continue;
    auto x = lowest_available_via(state, v);
    if (!x) return TurnPlan::give_up("cannot close dangerous vertex " + std::to_string(v) + ": no free edge to an available vertex");
    embed(w, *x);
    return TurnPlan::single(state.edge(v, *x), "stage1 close " + std::to_string(v));
  }
  closing_.reset();
  return std::nullopt;
}

std::optional<TurnPlan> TreeEmbedMaker::start_connector(const GameState& state, Vertex v) {
  Connector c;
  c.v = v;
  for (Vertex u = 0; u < n_ && c.u < 0; ++u) {
    const Vertex ut = inv_[static_cast<std::size_t>(u)];
    if (ut < 0 || !open_in(ut, false)) continue;
    for (Vertex xt : t_.adj[static_cast<std::size_t>(ut)]) {
      if (f_[static_cast<std::size_t>(xt)] >= 0 || c.u >= 0) continue;
      for (Vertex yt : t_.adj[static_cast<std::size_t>(xt)]) {
        if (yt == ut || f_[static_cast<std::size_t>(yt)] >= 0 || c.u >= 0) continue;
        for (Vertex vt : t_.adj[static_cast<std::size_t>(yt)])
          if (vt != xt && f_[static_cast<std::size_t>(vt)] < 0) {
            c.u = u, c.x_t = xt, c.y_t = yt, c.v_t = vt;
            break;
          }
      }
    }
  }
  // no room for a length-3 path: fan out from v, bridge from any open vertex later
  c.shortcut = c.u < 0;
  std::vector<char> blocked(static_cast<std::size_t>(n_), 0);
  blocked[static_cast<std::size_t>(v)] = 1;
  if (!c.shortcut)
    for (Vertex w : state.neighbors(Side::Breaker, c.u)) blocked[static_cast<std::size_t>(w)] = 1;
  for (Vertex w : state.neighbors(Side::Breaker, v)) blocked[static_cast<std::size_t>(w)] = 1;
  for (Vertex w = 0; w < n_; ++w) {
    if (taken(w) || blocked[static_cast<std::size_t>(w)]) continue;
    bool independent = true;
    for (Vertex i : c.indep)
      if (state.edge_owned(Side::Breaker, i, w)) {
        independent = false;
        break;
      }
    if (independent) c.indep.push_back(w);
  }
  if (c.indep.size() < (c.shortcut ? 1u : 2u)) {
    skipped_[static_cast<std::size_t>(v)] = 1;
    return std::nullopt;
  }
  c.c = std::max(1, static_cast<int>(std::floor(5 * std::pow(static_cast<double>(n_), cfg_.alpha))));
  c.c = std::min(c.c, static_cast<int>(c.shortcut ? c.indep.size() : c.indep.size() / 2));
  if (c.shortcut) ++shortcuts_;
  conn_ = std::move(c);
  ++connectors_;
  return connector_step(state);
}

std::optional<TurnPlan> TreeEmbedMaker::shortcut_bridge(const GameState& state) {
  auto& c = *conn_;
  for (Vertex u = 0; u < n_; ++u) {
    const Vertex ut = inv_[static_cast<std::size_t>(u)];
    if (ut < 0) continue;
    for (Vertex xt : t_.adj[static_cast<std::size_t>(ut)]) {
      if (f_[static_cast<std::size_t>(xt)] >= 0) continue;
      Vertex vt = -1;
      for (Vertex z : t_.adj[static_cast<std::size_t>(xt)])
        if (f_[static_cast<std::size_t>(z)] < 0 && vt < 0) vt = z;
      if (vt < 0) continue;
      for (Vertex w : c.nv) {
        const Owner o = state.edge_owner(u, w).value_or(Owner::Breaker);
        if (o == Owner::Breaker || taken(w)) continue;
        const Vertex v = c.v;
        embed(xt, w);
        embed(vt, v);
        closing_ = v;
        ++closures_;
        conn_.reset();
        if (o == Owner::Maker) return std::nullopt;
        return TurnPlan::single(state.edge(u, w), "stage1 connector shortcut");
      }
    }
  }
  skipped_[static_cast<std::size_t>(c.v)] = 1;
  conn_.reset();
  return std::nullopt;
}

std::optional<TurnPlan> TreeEmbedMaker::connector_step(const GameState& state) {
  auto& c = *conn_;
  auto step = [&](Vertex a, Vertex b, const char* what) {
    ++c.moves;
    max_connector_moves_ = std::max(max_connector_moves_, c.moves);
    if (c.moves > static_cast<int>(std::floor(cfg_.connector_coeff * std::pow(static_cast<double>(n_), cfg_.alpha))))
      return TurnPlan::give_up("connector to " + std::to_string(c.v) + " exceeded its move budget");
    return TurnPlan::single(state.edge(a, b), std::string("stage1 connector ") + what);
  };
  auto maker_nbrs = [&](Vertex a, const std::vector<Vertex>& pool) {
    std::vector<Vertex> out;
    for (Vertex w : pool)
      if (state.edge_owned(Side::Maker, a, w)) out.push_back(w);
    return out;
  };
  if (c.nv.empty()) {
    auto have = maker_nbrs(c.v, c.indep);
    if (static_cast<int>(have.size()) < c.c) {
      for (Vertex w : c.indep)
        if (state.edge_free(c.v, w)) return step(c.v, w, "v-side");
      if (c.shortcut && !have.empty()) c.c = static_cast<int>(have.size());
      else return TurnPlan::give_up("connector: no free edge from " + std::to_string(c.v) + " into I");
    }
    c.nv.assign(have.begin(), have.begin() + c.c);
  }
  if (c.shortcut) return shortcut_bridge(state);
  std::vector<Vertex> rest;
  for (Vertex w : c.indep)
    if (std::find(c.nv.begin(), c.nv.end(), w) == c.nv.end()) rest.push_back(w);
  auto nu = maker_nbrs(c.u, rest);
  if (static_cast<int>(nu.size()) < c.c) {
    for (Vertex w : rest)
      if (state.edge_free(c.u, w)) return step(c.u, w, "u-side");
    return TurnPlan::give_up("connector: no free edge from " + std::to_string(c.u) + " into I");
  }
  nu.resize(static_cast<std::size_t>(c.c));
  std::optional<std::pair<Vertex, Vertex>> fresh, owned;
  for (Vertex x : nu)
    for (Vertex y : c.nv) {
      const auto o = state.edge_owner(x, y);
      if (o == Owner::Maker && !owned) owned = std::pair{x, y};
      if (o == Owner::Free && !fresh) fresh = std::pair{x, y};
    }
  auto finish = [&](std::pair<Vertex, Vertex> xy) {
    embed(c.x_t, xy.first);
    embed(c.y_t, xy.second);
    embed(c.v_t, c.v);
    closing_ = c.v;
    ++closures_;
  };
  if (owned) {
    finish(*owned);
    conn_.reset();
    return std::nullopt;
  }
  if (!fresh) return TurnPlan::give_up("connector: no free bridge edge");
  auto plan = step(fresh->first, fresh->second, "bridge");
  if (!plan.forfeit) {
    finish(*fresh);
    conn_.reset();
  }
  return plan;
}

TurnPlan TreeEmbedMaker::play_case1(const GameState& state, const TurnContext& ctx) {
  for (int guard = 0; guard < 8 * n_ + 8; ++guard) {
    if (conn_) {
      if (auto p = connector_step(state)) return *p;
      continue;
    }
    if (closing_) {
      if (auto p = close_step(state)) return *p;
      continue;
    }
    Vertex v = -1;
    for (Vertex b = 0; b < n_; ++b) {
      if (state.degree(Side::Breaker, b) < danger_threshold_) continue;
      const Vertex bt = inv_[static_cast<std::size_t>(b)];
      if (bt >= 0 && !open_in(bt, false)) continue;
      if (!ever_dangerous_[static_cast<std::size_t>(b)]) ever_dangerous_[static_cast<std::size_t>(b)] = 1, ++ever_dangerous_count_;
      if (v < 0 && !(skipped_[static_cast<std::size_t>(b)] && !taken(b))) v = b;
    }
    if (v >= 0) {
      if (taken(v)) {
        closing_ = v;
        ++closures_;
        continue;
      }
      // available: attach directly to an open vertex if an edge is free
      for (Vertex u = 0; u < n_; ++u) {
        const Vertex ut = inv_[static_cast<std::size_t>(u)];
        if (ut < 0 || !open_in(ut, false) || !state.edge_free(u, v)) continue;
        Vertex best = -1;
        int best_new = 0;
        for (Vertex w : t_.adj[static_cast<std::size_t>(ut)]) {
          if (f_[static_cast<std::size_t>(w)] >= 0) continue;
          int fresh = 0;
          for (Vertex z : t_.adj[static_cast<std::size_t>(w)]) fresh += f_[static_cast<std::size_t>(z)] < 0 ? 1 : 0;
          if (best < 0 || fresh < best_new) best = w, best_new = fresh;
        }
        embed(best, v);
        closing_ = v;
        ++closures_;
        return TurnPlan::single(state.edge(u, v), "stage1 attach " + std::to_string(v));
      }
      if (tprime_left_ > 0) {
        if (auto p = start_connector(state, v)) return *p;
        continue;
      }
      skipped_[static_cast<std::size_t>(v)] = 1;
      continue;
    }
    if (tprime_left_ > 0) {
      for (Vertex u = 0; u < n_; ++u) {
        const Vertex ut = inv_[static_cast<std::size_t>(u)];
        if (ut < 0 || !open_in(ut, true)) continue;
        auto x = lowest_available_via(state, u);
        if (!x) continue;
        for (Vertex w : t_.adj[static_cast<std::size_t>(ut)])
          if (f_[static_cast<std::size_t>(w)] < 0 && !in_lprime_[static_cast<std::size_t>(w)]) {
            embed(w, *x);
            return TurnPlan::single(state.edge(u, *x), "stage1 extend");
          }
      }
      return TurnPlan::give_up("no free edge extends T' from an open vertex");
    }
    return start_case1_stage2(state, ctx);
  }
  throw GameError("tree-embed stage 1 made no progress");
}

TurnPlan TreeEmbedMaker::start_case1_stage2(const GameState& state, const TurnContext& ctx) {
  stage_ = 2;
  stage1_moves_ = moves_ - 1;
  for (Vertex l = 0; l < n_; ++l) {
    if (f_[static_cast<std::size_t>(l)] >= 0) continue;
    if (!in_lprime_[static_cast<std::size_t>(l)]) throw GameError("tree vertex " + std::to_string(l) + " missed by stage 1");
    stage2_leaf_.push_back(l);
    stage2_y_.push_back(f_[static_cast<std::size_t>(t_.adj[static_cast<std::size_t>(l)][0])]);
  }
  for (Vertex x = 0; x < n_; ++x)
    if (!taken(x)) stage2_x_.push_back(x);
  if (stage2_x_.size() != stage2_y_.size()) throw GameError("matching sides differ in size");
  const int r = static_cast<int>(stage2_y_.size());
  if (r == 0) return TurnPlan::pass("embedding complete");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (state.edge_owner(stage2_y_[static_cast<std::size_t>(i)], stage2_x_[static_cast<std::size_t>(j)]) != Owner::Breaker)
        pairs.emplace_back(i, r + j);
  auto board = GraphBoard::from_edges(2 * r, pairs);
  std::vector<ElementId> global(board->edge_count());
  for (auto [i, j] : pairs)
    global[static_cast<std::size_t>(board->edge_id(i, j))] =
        state.edge(stage2_y_[static_cast<std::size_t>(i)], stage2_x_[static_cast<std::size_t>(j - r)]);
  GameState local = GameState::on_graph(board);
  auto m = std::make_unique<MatchingMaker>(local, r, q_, cfg_.matching);
  matcher_ = m.get();
  std::vector<SubGame> games;
  games.push_back(SubGame{std::move(global), std::move(local), std::move(m), {}, 0});
  stage2_ = std::make_unique<ParallelMaker>(std::move(games), q_, state.size());
  return delegate(state, ctx);
}

// ---- Case II ---------------------------------------------------------------

TurnPlan TreeEmbedMaker::play_case2(const GameState& state, const TurnContext& ctx) {
  for (int guard = 0; guard < 2 * n_ + 2; ++guard) {
    bool pending = false;
    for (Vertex u = 0; u < n_; ++u) {
      if (f_[static_cast<std::size_t>(u)] < 0) continue;
      for (Vertex w : forest_adj_[static_cast<std::size_t>(u)]) {
        if (f_[static_cast<std::size_t>(w)] >= 0) continue;
        pending = true;
        auto x = lowest_available_via(state, f_[static_cast<std::size_t>(u)]);
        if (!x) break;
        const ElementId e = state.edge(f_[static_cast<std::size_t>(u)], *x);
        embed(w, *x);
        ++stage1_embedded_;
        return TurnPlan::single(e, "stage1 forest");
      }
    }
    if (pending) return TurnPlan::give_up("no free edge extends the forest");
    // next component: its lowest vertex goes to the lowest available board vertex
    Vertex root = -1;
    for (Vertex v = 0; v < n_ && root < 0; ++v)
      if (bare_.in_forest[static_cast<std::size_t>(v)] && f_[static_cast<std::size_t>(v)] < 0) root = v;
    if (root < 0) return start_case2_stage2(state, ctx);
    Vertex spot = 0;
    while (taken(spot)) ++spot;
    embed(root, spot);
    ++stage1_embedded_;
  }
  throw GameError("tree-embed forest stage made no progress");
}

TurnPlan TreeEmbedMaker::start_case2_stage2(const GameState& state, const TurnContext& ctx) {
  stage_ = 2;
  stage1_moves_ = moves_ - 1;
  const std::size_t ell = bare_.paths.size();
  if (ell == 0) return TurnPlan::pass("embedding complete");
  PartitionRequest req;
  for (Vertex x = 0; x < n_; ++x)
    if (!taken(x)) req.vertices.push_back(x);
  for (const auto& p : bare_.paths) {
    req.endpoints.emplace_back(f_[static_cast<std::size_t>(p.a)], f_[static_cast<std::size_t>(p.b)]);
    req.sizes.push_back(static_cast<int>(p.interior.size()));
  }
  req.k = n_;
  req.host_adj = maker_graph(state);
  const AdjList breaker = graph_of(state, Owner::Breaker);
  for (std::size_t v = 0; v < breaker.size(); ++v)
    req.host_adj[v].insert(req.host_adj[v].end(), breaker[v].begin(), breaker[v].end());
  req.degree_coeff = cfg_.partition_coeff;
  req.degree_exp = cfg_.partition_exp;
  req.retry_cap = cfg_.partition_retries;
  CounterRng rng(cfg_.seed, 0x9A27);
  PartitionResult part;
  try {
    part = random_partition(req, rng);
  } catch (const PartitionFailure& e) {
    partition_attempts_ = e.attempts;
    return TurnPlan::give_up(std::string("random partition failed: ") + e.what());
  }
  partition_attempts_ = part.attempts;

  struct Region {
    std::vector<ElementId> global;
    GameState local;
    Vertex a, b;
  };
  std::vector<Region> regions;
  std::size_t total = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    auto verts = part.parts[i];
    verts.push_back(req.endpoints[i].first);
    verts.push_back(req.endpoints[i].second);
    std::sort(verts.begin(), verts.end());
    const int k = static_cast<int>(verts.size());
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int u = 0; u < k; ++u)
      for (int w = u + 1; w < k; ++w)
        if (state.edge_owner(verts[static_cast<std::size_t>(u)], verts[static_cast<std::size_t>(w)]) != Owner::Breaker)
          pairs.emplace_back(u, w);
    auto board = GraphBoard::from_edges(k, pairs);
    std::vector<ElementId> global(board->edge_count());
    for (auto [u, w] : pairs)
      global[static_cast<std::size_t>(board->edge_id(u, w))] =
          state.edge(verts[static_cast<std::size_t>(u)], verts[static_cast<std::size_t>(w)]);
    auto local_of = [&](Vertex b) {
      return static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), b) - verts.begin());
    };
    total += global.size();
    regions.push_back(Region{std::move(global), GameState::on_graph(board), local_of(req.endpoints[i].first),
                             local_of(req.endpoints[i].second)});
    region_vertices_.push_back(std::move(verts));
  }
  region_bias_ = inflated_bias(ell, q_, std::max<std::size_t>(total, 1));
  std::vector<SubGame> games;
  for (auto& r : regions) {
    HamPathParams params = cfg_.hampath;
    params.stage2.seed = cfg_.seed;
    auto m = std::make_unique<HamPathMaker>(r.local, r.a, r.b, region_bias_, params);
    region_makers_.push_back(m.get());
    games.push_back(SubGame{std::move(r.global), std::move(r.local), std::move(m), {}, 0});
  }
  stage2_ = std::make_unique<ParallelMaker>(std::move(games), q_, state.size());
  return delegate(state, ctx);
}

// ---- completion and audits -------------------------------------------------

std::optional<std::vector<Vertex>> TreeEmbedMaker::embedding(const GameState& state) const {
  if (embedded_ == static_cast<std::size_t>(n_)) return f_;
  if (stage_ != 2 || !stage2_) return std::nullopt;
  std::vector<Vertex> f = f_;
  if (case_ == TreeCase::CaseI) {
    auto m = matcher_->matching(stage2_->local_view(0, state));
    if (!m) return std::nullopt;
    const int r = static_cast<int>(stage2_y_.size());
    for (int i = 0; i < r; ++i)
      f[static_cast<std::size_t>(stage2_leaf_[static_cast<std::size_t>(i)])] =
          stage2_x_[static_cast<std::size_t>((*m)[static_cast<std::size_t>(i)] - r)];
    return f;
  }
  for (std::size_t i = 0; i < region_makers_.size(); ++i) {
    auto p = region_makers_[i]->final_path(stage2_->local_view(i, state));
    if (!p) return std::nullopt;
    const auto& interior = bare_.paths[i].interior;
    const auto& verts = region_vertices_[i];
    if (p->size() != interior.size() + 2) return std::nullopt;
    for (std::size_t j = 0; j < interior.size(); ++j)
      f[static_cast<std::size_t>(interior[j])] = verts[static_cast<std::size_t>((*p)[j + 1])];
  }
  return f;
}

bool TreeEmbedMaker::succeeded(const GameState& state) const {
  auto f = embedding(state);
  return f && verify_tree_copy(t_, state, *f);
}

std::vector<std::string> TreeEmbedMaker::check_invariants(const GameState& state) const {
  std::vector<std::string> hard;
  for (Vertex u = 0; u < n_; ++u) {
    const Vertex fu = f_[static_cast<std::size_t>(u)];
    if (fu < 0) continue;
    if (inv_[static_cast<std::size_t>(fu)] != u) hard.push_back("embedding map is not injective at " + std::to_string(u));
    for (Vertex w : t_.adj[static_cast<std::size_t>(u)]) {
      const Vertex fw = f_[static_cast<std::size_t>(w)];
      if (u < w && fw >= 0 && !state.edge_owned(Side::Maker, fu, fw))
        hard.push_back("tree edge " + std::to_string(u) + "-" + std::to_string(w) + " is embedded on a non-Maker edge");
    }
  }
  if (stage_ == 2 && stage2_)
    for (auto& v : stage2_->check_invariants(state)) hard.push_back(v);

  std::vector<std::string> soft;
  const double n = n_;
  if (case_ == TreeCase::CaseI && stage_ == 1) {
    if (n - static_cast<double>(embedded_) < 0.5 * std::pow(n, 2.0 / 3.0))
      soft.push_back("fewer than n^(2/3)/2 unembedded tree vertices during stage 1");
    const double cap = 4 * std::pow(n, 1 + cfg_.alpha) / std::sqrt(n);
    if (static_cast<double>(ever_dangerous_count_) > cap)
      soft.push_back(std::to_string(ever_dangerous_count_) + " vertices turned dangerous, above 4n^(1+alpha)/sqrt(n)");
    double worst = 0;
    for (Vertex b = 0; b < n_; ++b) {
      const Vertex bt = inv_[static_cast<std::size_t>(b)];
      if (bt < 0 || open_in(bt, false)) worst = std::max<double>(worst, state.degree(Side::Breaker, b));
    }
    max_open_degree_ = std::max(max_open_degree_, worst);
    if (worst > std::pow(n, cfg_.open_degree_exp))
      soft.push_back("available/open vertex with Breaker degree " + std::to_string(worst) + " above n^" +
                     std::to_string(cfg_.open_degree_exp));
  }
  if (case_ == TreeCase::CaseII &&
      static_cast<double>(stage1_embedded_) > 3.0 * static_cast<double>(census_.d1.size()) * std::pow(n, 0.2))
    soft.push_back("forest stage embedded more than 3|D_1| n^0.2 vertices");
  if (guards_) {
    hard.insert(hard.end(), soft.begin(), soft.end());
  } else {
    soft_count_ += soft.size();
    for (auto& s : soft)
      if (soft_.size() < 20) soft_.push_back(s);
  }
  return hard;
}

nlohmann::json TreeEmbedMaker::parameters() const {
  const double n = n_;
  nlohmann::json j{{"n", n_},
                   {"q", q_},
                   {"case", std::string(to_string(case_))},
                   {"alpha", cfg_.alpha},
                   {"epsilon", cfg_.epsilon},
                   {"max_degree", t_.max_degree()},
                   {"guards_held", guards_},
                   {"bias_guard", q_ <= std::pow(n, cfg_.alpha)},
                   {"degree_guard", t_.max_degree() <= std::pow(n, cfg_.epsilon)},
                   {"leaf_neighbors", census_.leaf_neighbors.size()},
                   {"leaf_split", ceil_two_thirds_power(n_)},
                   {"move_budget", embed_move_budget(n_, cfg_.move_constant)},
                   {"hampath", {{"gamma", cfg_.hampath.gamma},
                                {"beta", cfg_.hampath.beta},
                                {"delta_prime", cfg_.hampath.dp()},
                                {"delta", cfg_.hampath.d()}}}};
  if (case_ == TreeCase::CaseI) {
    j["danger_threshold"] = danger_threshold_;
    j["connector_budget"] = std::floor(cfg_.connector_coeff * std::pow(n, cfg_.alpha));
    j["lprime"] = std::count(in_lprime_.begin(), in_lprime_.end(), 1);
  } else {
    j["bare_threshold"] = bare_threshold_;
    j["bare_paths"] = bare_.paths.size();
    j["partition"] = {{"coeff", cfg_.partition_coeff}, {"exp", cfg_.partition_exp}, {"retries", cfg_.partition_retries}};
  }
  return j;
}

nlohmann::json TreeEmbedMaker::result() const {
  nlohmann::json j{{"stage", stage_},
                   {"moves", moves_},
                   {"stage1_moves", stage_ == 2 ? stage1_moves_ : moves_},
                   {"embedded", embedded_},
                   {"within_move_budget", static_cast<double>(moves_) <= embed_move_budget(n_, cfg_.move_constant)},
                   {"soft_violations", soft_count_},
                   {"soft_examples", soft_}};
  if (case_ == TreeCase::CaseI) {
    j["ever_dangerous"] = ever_dangerous_count_;
    j["connectors"] = connectors_;
    j["closures"] = closures_;
    j["shortcuts"] = shortcuts_;
    j["skipped_dangerous"] = std::count(skipped_.begin(), skipped_.end(), 1);
    j["max_connector_moves"] = max_connector_moves_;
    j["max_open_breaker_degree"] = max_open_degree_;
  } else {
    j["stage1_embedded"] = stage1_embedded_;
    j["stage1_work_bound"] = 3.0 * static_cast<double>(census_.d1.size()) * std::pow(static_cast<double>(n_), 0.2);
    j["partition_attempts"] = partition_attempts_;
    j["region_bias"] = region_bias_;
  }
  if (stage2_) j["stage2"] = stage2_->result();
  return j;
}

}  // namespace mbgame
