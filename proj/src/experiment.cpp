#include "mbgame/experiment.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "mbgame/adversaries.hpp"
#include "mbgame/embed.hpp"
#include "mbgame/hypergraph.hpp"
#include "mbgame/oracle.hpp"
#include "mbgame/potential.hpp"
#include "mbgame/subgames.hpp"

namespace mbgame {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kTreeStream = 0x7EE;

// Reads an object, remembering which keys were used; finish() rejects the rest.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  template <typename T>
  T get(const std::string& key, const T& fallback) {
    used_.insert(key);
    if (!j_.contains(key)) return fallback;
    return as<T>(key);
  }
  template <typename T>
  T need(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw ConfigError(path_ + ": missing required key '" + key + "'");
    return as<T>(key);
  }
  const json& raw(const std::string& key) {
    used_.insert(key);
    if (!j_.contains(key)) throw ConfigError(path_ + ": missing required key '" + key + "'");
    return j_.at(key);
  }
  std::string at(const std::string& key) const { return path_ + "." + key; }
  void finish() const {
    std::string bad;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) bad += (bad.empty() ? "" : ", ") + it.key();
    if (!bad.empty()) throw ConfigError(path_ + ": unknown key(s): " + bad);
  }

 private:
  template <typename T>
  T as(const std::string& key) const {
    try {
      return j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(path_ + "." + key + ": wrong type (" + std::string(j_.at(key).type_name()) + ")");
    }
  }
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

template <typename Mode>
Mode parse_mode(const std::string& s, const std::string& where) {
  if (s == "exact") return Mode::Exact;
  if (s == "heuristic") return Mode::Heuristic;
  if (s == "auto") return Mode::Auto;
  throw ConfigError(where + ": mode must be exact, heuristic or auto");
}

template <typename Mode>
std::string mode_name(Mode m) {
  return m == Mode::Exact ? "exact" : m == Mode::Heuristic ? "heuristic" : "auto";
}

// ---- strategy parameters ----------------------------------------------------

HamConOptions read_hamcon(Fields& f, const std::string& where) {
  HamConOptions o;
  o.mode = parse_mode<HamConOptions::Mode>(f.get<std::string>("mode", mode_name(o.mode)), where);
  o.enum_cap = f.get<std::size_t>("enum_cap", o.enum_cap);
  o.check_cap = f.get<std::uint64_t>("check_cap", o.check_cap);
  o.min_k = f.get<int>("min_k", o.min_k);
  o.move_constant = f.get<double>("move_constant", o.move_constant);
  return o;
}

json hamcon_json(const HamConOptions& o) {
  return {{"mode", mode_name(o.mode)},
          {"enum_cap", o.enum_cap},
          {"check_cap", o.check_cap},
          {"min_k", o.min_k},
          {"move_constant", o.move_constant}};
}

HamPathParams read_hampath(const json& j, const std::string& where, HamPathParams p) {
  Fields f(j, where);
  p.gamma = f.get<double>("gamma", p.gamma);
  p.beta = f.get<double>("beta", p.beta);
  if (f.has("delta_prime")) p.delta_prime = f.need<double>("delta_prime");
  if (f.has("delta")) p.delta = f.need<double>("delta");
  if (f.has("stage2")) {
    Fields s(f.raw("stage2"), f.at("stage2"));
    HamConOptions o = read_hamcon(s, f.at("stage2"));
    o.endpoints = p.stage2.endpoints;
    p.stage2 = o;
    s.finish();
  }
  f.finish();
  p.resolve();
  return p;
}

json hampath_json(const HamPathParams& p) {
  return {{"gamma", p.gamma}, {"beta", p.beta}, {"delta_prime", p.dp()}, {"delta", p.d()}, {"stage2", hamcon_json(p.stage2)}};
}

EmbedConfig read_embed(const json& j, const std::string& where) {
  EmbedConfig c;
  Fields f(j, where);
  c.alpha = f.get<double>("alpha", c.alpha);
  c.epsilon = f.get<double>("epsilon", c.epsilon);
  c.danger_exp = f.get<double>("danger_exp", c.danger_exp);
  c.connector_coeff = f.get<double>("connector_coeff", c.connector_coeff);
  c.open_degree_exp = f.get<double>("open_degree_exp", c.open_degree_exp);
  c.move_constant = f.get<double>("move_constant", c.move_constant);
  c.partition_coeff = f.get<double>("partition_coeff", c.partition_coeff);
  c.partition_exp = f.get<double>("partition_exp", c.partition_exp);
  c.partition_retries = f.get<int>("partition_retries", c.partition_retries);
  if (f.has("matching")) {
    Fields m(f.raw("matching"), f.at("matching"));
    c.matching.mode = parse_mode<MatchingOptions::Mode>(m.get<std::string>("mode", mode_name(c.matching.mode)), f.at("matching"));
    c.matching.enum_cap = m.get<std::size_t>("enum_cap", c.matching.enum_cap);
    m.finish();
  }
  c.hampath = f.has("hampath") ? read_hampath(f.raw("hampath"), f.at("hampath"), c.hampath) : [&] {
    auto p = c.hampath;
    p.resolve();
    return p;
  }();
  f.finish();
  return c;
}

json embed_json(const EmbedConfig& c) {
  return {{"alpha", c.alpha},
          {"epsilon", c.epsilon},
          {"danger_exp", c.danger_exp},
          {"connector_coeff", c.connector_coeff},
          {"open_degree_exp", c.open_degree_exp},
          {"move_constant", c.move_constant},
          {"partition_coeff", c.partition_coeff},
          {"partition_exp", c.partition_exp},
          {"partition_retries", c.partition_retries},
          {"matching", {{"mode", mode_name(c.matching.mode)}, {"enum_cap", c.matching.enum_cap}}},
          {"hampath", hampath_json(c.hampath)}};
}

// Maker section with defaults filled in.
json resolve_maker(GameKind game, const json& j) {
  Fields f(j, "maker");
  const json none = json::object();
  json params = f.has("params") ? f.raw("params") : none;
  const std::string where = "maker.params";
  json out;
  switch (game) {
    case GameKind::TreeEmbed:
      out = {{"name", f.get<std::string>("name", "tree-embed")}, {"params", embed_json(read_embed(params, where))}};
      if (out["name"] != "tree-embed") throw ConfigError("maker.name: tree-embed games use the tree-embed maker");
      break;
    case GameKind::Matching: {
      Fields p(params, where);
      MatchingOptions o;
      o.mode = parse_mode<MatchingOptions::Mode>(p.get<std::string>("mode", mode_name(o.mode)), where);
      o.enum_cap = p.get<std::size_t>("enum_cap", o.enum_cap);
      p.finish();
      out = {{"name", f.get<std::string>("name", "matching")}, {"params", {{"mode", mode_name(o.mode)}, {"enum_cap", o.enum_cap}}}};
      if (out["name"] != "matching") throw ConfigError("maker.name: matching games use the matching maker");
      break;
    }
    case GameKind::HamCon: {
      Fields p(params, where);
      const auto o = read_hamcon(p, where);
      p.finish();
      out = {{"name", f.get<std::string>("name", "hamcon")}, {"params", hamcon_json(o)}};
      if (out["name"] != "hamcon") throw ConfigError("maker.name: hamcon games use the hamcon maker");
      break;
    }
    case GameKind::HamPath:
      out = {{"name", f.get<std::string>("name", "hampath")}, {"params", hampath_json(read_hampath(params, where, {}))}};
      if (out["name"] != "hampath") throw ConfigError("maker.name: hampath games use the hampath maker");
      break;
    case GameKind::Triangle: {
      Fields p(params, where);
      p.finish();
      const auto name = f.get<std::string>("name", "planner");
      const auto names = triangle_maker_names();
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw ConfigError("maker.name: triangle makers are random, closer, planner");
      out = {{"name", name}, {"params", json::object()}};
      break;
    }
    case GameKind::CustomHypergraph: {
      Fields p(params, where);
      const auto node_cap = p.get<std::size_t>("node_cap", 50'000'000);
      p.finish();
      const auto name = f.get<std::string>("name", "greedy");
      if (name != "greedy" && name != "minimax-maker") throw ConfigError("maker.name: use greedy or minimax-maker");
      out = {{"name", name}, {"params", {{"node_cap", node_cap}}}};
      break;
    }
    case GameKind::Box: {
      Fields p(params, where);
      p.finish();
      out = {{"name", f.get<std::string>("name", "box-maker")}, {"params", json::object()}};
      break;
    }
  }
  f.finish();
  return out;
}

json resolve_tree(const json& j, const std::string& where) {
  Fields f(j, where);
  json out;
  if (f.has("file")) {
    const TreeSpec t = load_tree(f.need<std::string>("file"));
    out = {{"n", t.n}, {"edges", t.edges()}};
  } else if (f.has("edges")) {
    const int n = f.need<int>("n");
    const auto edges = f.need<std::vector<std::pair<int, int>>>("edges");
    TreeSpec::from_edges(n, edges);
    out = {{"n", n}, {"edges", edges}};
  } else {
    const auto family = f.need<std::string>("family");
    const int n = f.need<int>("n");
    CounterRng probe(0, kTreeStream);
    make_tree(family, n, probe);  // validates the family name
    out = {{"family", family}, {"n", n}};
  }
  f.finish();
  return out;
}

json resolve_board(GameKind game, const json& j) {
  Fields f(j, "board");
  json out;
  auto positive = [&](const std::string& key, int lo) {
    const int v = f.need<int>(key);
    if (v < lo) throw ConfigError("board." + key + " must be at least " + std::to_string(lo));
    return v;
  };
  switch (game) {
    case GameKind::TreeEmbed:
      try {
        out = {{"tree", resolve_tree(f.raw("tree"), "board.tree")}};
      } catch (const ConfigError&) {
        throw;
      } catch (const GameError& e) {
        throw ConfigError(std::string("board.tree: ") + e.what());
      }
      break;
    case GameKind::Matching:
      out = {{"r", positive("r", 1)}};
      break;
    case GameKind::HamCon: {
      out = {{"k", positive("k", 2)}};
      if (f.has("endpoints")) out["endpoints"] = f.need<std::pair<int, int>>("endpoints");
      break;
    }
    case GameKind::HamPath: {
      const int k = positive("k", 2);
      out = {{"k", k}, {"a", f.get<int>("a", 0)}, {"b", f.get<int>("b", k - 1)}};
      break;
    }
    case GameKind::Triangle:
      out = {{"n", positive("n", 3)}};
      break;
    case GameKind::CustomHypergraph: {
      Hypergraph h;
      if (f.has("file")) {
        try {
          h = load_hypergraph(f.need<std::string>("file"));
        } catch (const ConfigError&) {
          throw;
        } catch (const GameError& e) {
          throw ConfigError(std::string("board.file: ") + e.what());
        }
      } else {
        Fields hf(f.raw("hypergraph"), "board.hypergraph");
        h.board_size = hf.need<std::size_t>("board_size");
        h.sets = hf.need<std::vector<std::vector<ElementId>>>("sets");
        hf.finish();
        try {
          h.normalize();
        } catch (const GameError& e) {
          throw ConfigError(std::string("board.hypergraph: ") + e.what());
        }
      }
      out = {{"hypergraph", {{"board_size", h.board_size}, {"sets", h.sets}}}};
      break;
    }
    case GameKind::Box: {
      const int m = positive("m", 1);
      const int k = positive("k", 1);
      const auto mode = f.get<std::string>("mode", "integral");
      if (mode != "integral" && mode != "continuous") throw ConfigError("board.mode must be integral or continuous");
      out = {{"m", m}, {"k", k}, {"mode", mode}};
      break;
    }
  }
  f.finish();
  return out;
}

std::vector<std::string> opponent_names(GameKind game) {
  if (game == GameKind::Box) return box_adversary_names();
  auto names = breaker_names();
  if (game == GameKind::Matching || game == GameKind::CustomHypergraph) names.push_back("minimax");
  if (game == GameKind::CustomHypergraph) names.push_back("potential");
  return names;
}

// ---- cells ------------------------------------------------------------------

TreeSpec tree_of(const json& t, std::uint64_t seed) {
  if (t.contains("edges")) return TreeSpec::from_edges(t.at("n").get<int>(), t.at("edges").get<std::vector<std::pair<int, int>>>());
  CounterRng rng(seed, kTreeStream);
  return make_tree(t.at("family").get<std::string>(), t.at("n").get<int>(), rng);
}

Hypergraph hypergraph_of(const json& h) {
  Hypergraph f;
  f.board_size = h.at("board_size").get<std::size_t>();
  f.sets = h.at("sets").get<std::vector<std::vector<ElementId>>>();
  f.normalize();
  return f;
}

// Maker on an explicit hypergraph: the free element of largest potential Σ 2^-(unclaimed) over live sets.
class GreedyMaker : public Strategy {
 public:
  explicit GreedyMaker(std::shared_ptr<const Hypergraph> f) : f_(std::move(f)) {}
  std::string name() const override { return "greedy"; }
  Side side() const override { return Side::Maker; }
  TurnPlan play(const GameState& s, const TurnContext&) override {
    std::vector<double> score(s.size(), 0.0);
    for (const auto& set : f_->sets) {
      int open = 0;
      bool dead = false;
      for (ElementId e : set) {
        dead = dead || s.owner(e) == Owner::Breaker;
        open += s.is_free(e) ? 1 : 0;
      }
      if (dead) continue;
      for (ElementId e : set)
        if (s.is_free(e)) score[static_cast<std::size_t>(e)] += std::ldexp(1.0, -open);
    }
    ElementId best = -1;
    for (std::size_t e = 0; e < s.size(); ++e)
      if (s.is_free(static_cast<ElementId>(e)) && (best < 0 || score[e] > score[static_cast<std::size_t>(best)]))
        best = static_cast<ElementId>(e);
    if (best < 0) return TurnPlan::pass();
    return TurnPlan::single(best, "potential");
  }
  bool succeeded(const GameState& s) const override { return winner_check(s, *f_) == WinStatus::MakerWin; }

 private:
  std::shared_ptr<const Hypergraph> f_;
};

class ScriptedBreaker : public Strategy {
 public:
  explicit ScriptedBreaker(const std::vector<std::vector<ElementId>>& turns) : turns_(turns) {}
  std::string name() const override { return "human"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState&, const TurnContext&) override {
    if (next_ >= turns_.size()) return TurnPlan::pass();
    return TurnPlan{turns_[next_++], {}, std::nullopt};
  }

 private:
  const std::vector<std::vector<ElementId>>& turns_;
  std::size_t next_ = 0;
};

class HumanBreaker : public Strategy {
 public:
  HumanBreaker(int q, std::istream& in, std::ostream& out) : q_(q), in_(in), out_(out) {}
  std::string name() const override { return "human"; }
  Side side() const override { return Side::Breaker; }
  TurnPlan play(const GameState& s, const TurnContext& ctx) override;

 private:
  std::optional<std::vector<ElementId>> parse(const GameState& s, const std::string& line, std::string& why) const;
  int q_;
  std::istream& in_;
  std::ostream& out_;
};

std::string element_name(const GameState& s, ElementId e) {
  if (const GraphBoard* g = s.graph()) {
    auto [u, v] = g->endpoints(e);
    return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
  }
  return std::to_string(e);
}

std::optional<std::vector<ElementId>> HumanBreaker::parse(const GameState& s, const std::string& line, std::string& why) const {
  std::vector<ElementId> claims;
  std::string text = line;
  for (char& c : text)
    if (c == ',' || c == ';' || c == '(' || c == ')') c = ' ';
  std::istringstream is(text);
  std::vector<long> nums;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      nums.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      why = "not a number: " + tok;
      return std::nullopt;
    }
  }
  if (s.graph()) {
    if (nums.size() % 2) {
      why = "give vertex pairs \"u v\"";
      return std::nullopt;
    }
    for (std::size_t i = 0; i < nums.size(); i += 2) {
      const ElementId e = s.edge(static_cast<Vertex>(nums[i]), static_cast<Vertex>(nums[i + 1]));
      if (e < 0) {
        why = "(" + std::to_string(nums[i]) + "," + std::to_string(nums[i + 1]) + ") is not a board edge";
        return std::nullopt;
      }
      claims.push_back(e);
    }
  } else {
    for (long x : nums) claims.push_back(static_cast<ElementId>(x));
  }
  if (static_cast<int>(claims.size()) > q_) {
    why = "at most " + std::to_string(q_) + " claims per turn";
    return std::nullopt;
  }
  for (std::size_t i = 0; i < claims.size(); ++i) {
    if (!s.valid(claims[i]) || !s.is_free(claims[i])) {
      why = element_name(s, claims[i]) + " is not free";
      return std::nullopt;
    }
    for (std::size_t j = 0; j < i; ++j)
      if (claims[j] == claims[i]) {
        why = "element listed twice";
        return std::nullopt;
      }
  }
  return claims;
}

TurnPlan HumanBreaker::play(const GameState& s, const TurnContext& ctx) {
  out_ << "round " << ctx.turn + 1 << ": Maker " << s.claims(Side::Maker) << ", Breaker " << s.claims(Side::Breaker)
       << ", free " << s.free_count();
  if (!ctx.opponent_last.empty()) {
    out_ << "; Maker took";
    for (ElementId e : ctx.opponent_last) out_ << ' ' << element_name(s, e);
  }
  out_ << "\n";
  for (;;) {
    out_ << "breaker (" << q_ << ")> " << std::flush;
    std::string line;
    if (!std::getline(in_, line)) return TurnPlan::pass();
    std::string why;
    if (auto claims = parse(s, line, why)) return TurnPlan{*claims, {}, std::nullopt};
    out_ << "illegal: " << why << "\n";
  }
}

struct Built {
  GameState board;
  Bias bias;
  Side first = Side::Breaker;
  std::size_t move_cap = 0;
  std::uint64_t seed = 0;
  GameKind game = GameKind::TreeEmbed;
  std::unique_ptr<Strategy> maker, breaker;
  WinCheck check;
  TreeSpec tree;
  std::shared_ptr<const Hypergraph> hyper;
  std::string opponent;
};

Built build(const json& cell, std::unique_ptr<Strategy> breaker_override) {
  Built b;
  b.game = parse_game_kind(cell.at("game").get<std::string>());
  b.bias = Bias::parse(cell.at("bias").get<std::string>());
  b.first = parse_side(cell.at("first").get<std::string>());
  b.move_cap = cell.at("move_cap").get<std::size_t>();
  b.seed = cell.at("seed").get<std::uint64_t>();
  const json& board = cell.at("board");
  const json& params = cell.at("maker").at("params");
  const std::string opp = cell.at("opponent").get<std::string>();
  b.opponent = opp;
  const int q = b.bias.q;

  switch (b.game) {
    case GameKind::TreeEmbed: {
      b.tree = tree_of(board.at("tree"), b.seed);
      b.board = complete_board(b.tree.n);
      EmbedConfig c = read_embed(params, "maker.params");
      c.seed = b.seed;
      b.maker = std::make_unique<TreeEmbedMaker>(b.tree, q, c);
      break;
    }
    case GameKind::Matching: {
      const int r = board.at("r").get<int>();
      b.board = GameState::on_graph(GraphBoard::complete_bipartite(r));
      MatchingOptions o;
      o.mode = parse_mode<MatchingOptions::Mode>(params.at("mode").get<std::string>(), "maker.params");
      o.enum_cap = params.at("enum_cap").get<std::size_t>();
      if (opp == "minimax") b.hyper = std::make_shared<Hypergraph>(hall_hypergraph(b.board, r));
      b.maker = std::make_unique<MatchingMaker>(b.board, r, q, o, b.hyper);
      break;
    }
    case GameKind::HamCon: {
      b.board = complete_board(board.at("k").get<int>());
      Fields p(params, "maker.params");
      HamConOptions o = read_hamcon(p, "maker.params");
      if (board.contains("endpoints")) o.endpoints = board.at("endpoints").get<std::pair<int, int>>();
      o.seed = b.seed;
      b.maker = std::make_unique<HamConMaker>(b.board, q, o);
      break;
    }
    case GameKind::HamPath: {
      b.board = complete_board(board.at("k").get<int>());
      HamPathParams p = read_hampath(params, "maker.params", {});
      p.stage2.seed = b.seed;
      b.maker = std::make_unique<HamPathMaker>(b.board, board.at("a").get<int>(), board.at("b").get<int>(), q, p);
      break;
    }
    case GameKind::Triangle:
      b.board = complete_board(board.at("n").get<int>());
      b.maker = make_triangle_maker(cell.at("maker").at("name").get<std::string>(), b.seed);
      break;
    case GameKind::CustomHypergraph: {
      b.hyper = std::make_shared<Hypergraph>(hypergraph_of(board.at("hypergraph")));
      b.board = GameState::generic(b.hyper->board_size);
      if (cell.at("maker").at("name") == "minimax-maker")
        b.maker = std::make_unique<MinimaxStrategy>(Side::Maker, b.hyper, b.bias, params.at("node_cap").get<std::size_t>());
      else
        b.maker = std::make_unique<GreedyMaker>(b.hyper);
      break;
    }
    case GameKind::Box:
      throw GameError("box cells are not board games");
  }

  if (breaker_override) {
    b.breaker = std::move(breaker_override);
  } else if (opp == "minimax") {
    if (!b.hyper) throw ConfigError("minimax breaker needs an explicit winning-set family");
    if (b.hyper->board_size > 16) throw ConfigError("minimax breaker is limited to 16 board elements");
    b.breaker = std::make_unique<MinimaxStrategy>(Side::Breaker, b.hyper, b.bias);
  } else if (opp == "potential") {
    b.breaker = std::make_unique<PotentialBreaker>(b.hyper, b.bias);
  } else {
    b.breaker = make_breaker(opp, q, b.seed);
  }
  if (b.game == GameKind::CustomHypergraph) {
    auto f = b.hyper;
    b.check = hypergraph_win_check(*f);
  } else {
    b.check = maker_goal_check(*b.maker);
  }
  return b;
}

void between_visit_check(std::vector<Check>& out, const Transcript& t, const ParallelMaker* comp, int q) {
  if (!comp) return;
  const auto a = audit_between_visits(t, comp->board_of(), comp->boards(), q);
  Check c{"between-visits", a.violations == 0, true, a.first_violation,
          "max " + std::to_string(a.max_between) + " vs bound " + std::to_string(a.bound)};
  if (static_cast<std::size_t>(a.violations) != comp->bound_violations()) {
    c.pass = false;
    c.detail += "; recount disagrees with the live counter";
  }
  out.push_back(std::move(c));
}

std::vector<Check> post_checks(const Built& b, const Transcript& t, const GameState& fin) {
  std::vector<Check> out;
  try {
    replay(t);
    out.push_back({"legal-replay", true, true, std::nullopt, {}});
  } catch (const ReplayError& e) {
    out.push_back({"legal-replay", false, true, e.move_index, e.what()});
  }
  {
    Check c{"strategy-invariants", t.violations.empty(), true, std::nullopt, {}};
    if (!t.violations.empty()) c.first_violation = t.violations.front().move_index, c.detail = t.violations.front().message;
    out.push_back(std::move(c));
  }
  const bool won = t.outcome.kind == Outcome::Kind::MakerWin;
  const json& res = t.result;
  switch (b.game) {
    case GameKind::TreeEmbed: {
      const auto& m = static_cast<const TreeEmbedMaker&>(*b.maker);
      if (won) {
        auto f = m.embedding(fin);
        out.push_back({"embedding", f && verify_tree_copy(b.tree, fin, *f), true, std::nullopt, "verify_tree_copy"});
      }
      between_visit_check(out, t, m.composite(), b.bias.q);
      const double n = b.tree.n;
      if (m.tree_case() == TreeCase::CaseI && res.contains("ever_dangerous")) {
        const double cap = 4 * std::pow(n, 1 + m.parameters()["alpha"].get<double>()) / std::sqrt(n);
        const auto seen = res["ever_dangerous"].get<std::size_t>();
        out.push_back({"danger-accounting", static_cast<double>(seen) <= cap, m.guards_held(), std::nullopt,
                       std::to_string(seen) + " vs " + std::to_string(cap)});
      }
      if (m.tree_case() == TreeCase::CaseII && res.contains("stage1_embedded")) {
        const double bound = res["stage1_work_bound"].get<double>();
        out.push_back({"stage1-work", res["stage1_embedded"].get<double>() <= bound, m.guards_held(), std::nullopt,
                       res["stage1_embedded"].dump() + " vs " + std::to_string(bound)});
      }
      const double budget = embed_move_budget(b.tree.n, 10.0);
      out.push_back({"move-budget", static_cast<double>(t.maker_moves()) <= budget, false, std::nullopt,
                     std::to_string(t.maker_moves()) + " vs " + std::to_string(budget)});
      break;
    }
    case GameKind::Matching:
      if (won) {
        const int r = fin.graph()->vertex_count() / 2;
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(r));
        const auto g = maker_graph(fin);
        for (int a = 0; a < r; ++a)
          for (Vertex w : g[static_cast<std::size_t>(a)]) adj[static_cast<std::size_t>(a)].push_back(w - r);
        out.push_back({"perfect-matching", perfect_matching_oracle(adj, r).has_value(), true, std::nullopt, {}});
      }
      break;
    case GameKind::HamCon:
      if (won) {
        const auto& m = static_cast<const HamConMaker&>(*b.maker);
        const auto g = maker_graph(fin);
        if (!m.path().empty()) {
          out.push_back({"hamilton-path", is_hamilton_path(g, m.path(), m.path().front(), m.path().back()), true, std::nullopt, {}});
        } else if (auto hc = hamilton_connected_oracle(g, 12)) {
          out.push_back({"hamilton-connected", *hc, true, std::nullopt, {}});
        }
        out.push_back({"expander-condition", hamcon_condition_check(g).holds, false, std::nullopt, {}});
      }
      break;
    case GameKind::HamPath: {
      const auto& m = static_cast<const HamPathMaker&>(*b.maker);
      if (won) {
        auto p = m.final_path(fin);
        out.push_back({"hamilton-path", p && is_hamilton_path(maker_graph(fin), *p, p->front(), p->back()), true, std::nullopt, {}});
      }
      between_visit_check(out, t, m.composite(), b.bias.q);
      break;
    }
    case GameKind::Triangle: {
      const auto g = maker_graph(fin);
      // only the delaying Breaker forces the claim
      const bool delayer = b.opponent == "triangle-delayer";
      out.push_back({"triangle-claim", triangle_invariant_check(g), delayer, std::nullopt, {}});
      if (find_triangle_factor(g)) {
        const int n = fin.graph()->vertex_count();
        const auto need = static_cast<std::size_t>((7 * n + 5) / 6);
        out.push_back({"factor-edges", fin.claims(Side::Maker) >= need, delayer, std::nullopt,
                       std::to_string(fin.claims(Side::Maker)) + " vs " + std::to_string(need)});
      }
      break;
    }
    case GameKind::CustomHypergraph:
      if (won) out.push_back({"winning-set", winner_check(fin, *b.hyper) == WinStatus::MakerWin, true, std::nullopt, {}});
      break;
    case GameKind::Box:
      break;
  }
  return out;
}

CellRun run_box_cell(const json& cell) {
  CellRun r;
  r.cell = cell;
  const json& board = cell.at("board");
  const auto m = board.at("m").get<std::size_t>();
  const auto k = board.at("k").get<std::size_t>();
  const int q = Bias::parse(cell.at("bias").get<std::string>()).q;
  const auto mode = board.at("mode") == "continuous" ? BoxState::Mode::Continuous : BoxState::Mode::Integral;
  auto adv = make_box_adversary(cell.at("opponent").get<std::string>());
  r.box = play_rbox(m, q, k, *adv, cell.at("seed").get<std::uint64_t>(), mode);
  const auto& tr = *r.box;
  const double bound = box_weight_bound(q, m, k);
  r.checks.push_back({"weight-bound", tr.weight_violations == 0, true, std::nullopt,
                      "max " + std::to_string(tr.max_weight) + " vs " + std::to_string(bound)});
  if (mode == BoxState::Mode::Continuous)
    r.checks.push_back({"phi-increment", tr.phi_violations == 0, true, std::nullopt,
                        "max increment " + std::to_string(tr.max_phi_increment)});
  if (!tr.forfeit.empty()) r.checks.push_back({"adversary-legal", false, false, std::nullopt, tr.forfeit});
  return r;
}

json box_result(const BoxTrace& t, int q) {
  return {{"rounds", t.rounds.size()},
          {"weight_violations", t.weight_violations},
          {"phi_violations", t.phi_violations},
          {"max_weight", t.max_weight},
          {"max_phi_increment", t.max_phi_increment},
          {"bound", box_weight_bound(q, t.m, t.rounds.size())},
          {"forfeit", t.forfeit}};
}

void write_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw GameError("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

// ---- public -----------------------------------------------------------------

std::string_view to_string(GameKind g) {
  switch (g) {
    case GameKind::TreeEmbed: return "tree-embed";
    case GameKind::Matching: return "matching";
    case GameKind::HamCon: return "hamcon";
    case GameKind::HamPath: return "hampath";
    case GameKind::Box: return "box";
    case GameKind::Triangle: return "triangle";
    case GameKind::CustomHypergraph: return "custom-hypergraph";
  }
  return "?";
}

GameKind parse_game_kind(std::string_view text) {
  for (GameKind g : {GameKind::TreeEmbed, GameKind::Matching, GameKind::HamCon, GameKind::HamPath, GameKind::Box,
                     GameKind::Triangle, GameKind::CustomHypergraph})
    if (to_string(g) == text) return g;
  throw ConfigError("unknown game kind '" + std::string(text) + "'");
}

std::string default_output_dir() {
  const char* env = std::getenv("MBGAME_OUT_DIR");
  return env && *env ? env : "mbgame_out";
}

ExperimentConfig parse_experiment(const json& j) {
  Fields f(j, "config");
  ExperimentConfig c;
  c.name = f.get<std::string>("name", c.name);
  if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) throw ConfigError("config.name must be a plain file name");
  c.game = parse_game_kind(f.need<std::string>("game"));
  c.board = resolve_board(c.game, f.has("board") ? f.raw("board") : json::object());
  try {
    c.bias = Bias::parse(f.get<std::string>("bias", "1:1"));
  } catch (const GameError& e) {
    throw ConfigError(std::string("config.bias: ") + e.what());
  }
  try {
    c.first = parse_side(f.get<std::string>("first", "breaker"));
  } catch (const GameError&) {
    throw ConfigError("config.first must be maker or breaker");
  }
  c.maker = resolve_maker(c.game, f.has("maker") ? f.raw("maker") : json::object());
  const auto known = opponent_names(c.game);
  c.opponents = f.get<std::vector<std::string>>(c.game == GameKind::Box ? "adversaries" : "breakers",
                                                c.game == GameKind::Box ? std::vector<std::string>{"uniform"}
                                                                        : std::vector<std::string>{"random"});
  // the other list name is not valid for this game
  if (f.has(c.game == GameKind::Box ? "breakers" : "adversaries"))
    throw ConfigError(c.game == GameKind::Box ? "config.breakers: box games take 'adversaries'" : "config.adversaries: only box games take adversaries");
  if (c.opponents.empty()) throw ConfigError("config: at least one opponent is needed");
  for (const auto& o : c.opponents)
    if (std::find(known.begin(), known.end(), o) == known.end()) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("unknown opponent '" + o + "' for " + std::string(to_string(c.game)) + " (known: " + list + ")");
    }
  {
    std::size_t elements = 0;
    if (c.game == GameKind::Matching) elements = static_cast<std::size_t>(c.board["r"].get<int>() * c.board["r"].get<int>());
    if (c.game == GameKind::CustomHypergraph) elements = c.board["hypergraph"]["board_size"].get<std::size_t>();
    const bool wants = std::find(c.opponents.begin(), c.opponents.end(), "minimax") != c.opponents.end() ||
                       c.maker["name"] == "minimax-maker";
    if (wants && elements > 16)
      throw ConfigError("minimax play is limited to 16 board elements (this board has " + std::to_string(elements) + ")");
  }
  if (f.has("seeds")) {
    const json& s = f.raw("seeds");
    if (s.is_array()) {
      try {
        c.seeds = s.get<std::vector<std::uint64_t>>();
      } catch (const json::exception&) {
        throw ConfigError("config.seeds: expected non-negative integers");
      }
    } else {
      Fields sf(s, "config.seeds");
      const auto count = sf.need<std::uint64_t>("count");
      const auto start = sf.get<std::uint64_t>("start", 0);
      sf.finish();
      for (std::uint64_t i = 0; i < count; ++i) c.seeds.push_back(start + i);
    }
  } else {
    c.seeds = {0};
  }
  if (c.seeds.empty()) throw ConfigError("config.seeds: no seeds");
  c.move_cap = f.get<std::size_t>("move_cap", c.move_cap);
  c.threads = f.get<int>("threads", 0);
  c.out_dir = default_output_dir();
  if (f.has("output")) {
    Fields o(f.raw("output"), "config.output");
    c.out_dir = o.get<std::string>("dir", c.out_dir);
    c.write_transcripts = o.get<bool>("transcripts", true);
    o.finish();
  }
  f.finish();
  return c;
}

ExperimentConfig load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_experiment(j);
}

json ExperimentConfig::to_json() const {
  return {{"name", name},
          {"game", std::string(to_string(game))},
          {"board", board},
          {"bias", bias.str()},
          {"first", std::string(mbgame::to_string(first))},
          {"maker", maker},
          {game == GameKind::Box ? "adversaries" : "breakers", opponents},
          {"seeds", seeds},
          {"move_cap", move_cap},
          {"threads", threads},
          {"output", {{"dir", out_dir}, {"transcripts", write_transcripts}}}};
}

std::vector<json> ExperimentConfig::cells() const {
  std::vector<json> out;
  for (const auto& opp : opponents)
    for (std::uint64_t s : seeds)
      out.push_back({{"name", name},
                     {"game", std::string(to_string(game))},
                     {"board", board},
                     {"bias", bias.str()},
                     {"first", std::string(mbgame::to_string(first))},
                     {"move_cap", move_cap},
                     {"maker", maker},
                     {"opponent", opp},
                     {"seed", s}});
  return out;
}

json to_json(const Check& c) {
  json j{{"name", c.name}, {"pass", c.pass}, {"enforced", c.enforced}};
  if (c.first_violation) j["first_violation"] = *c.first_violation;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

bool CellRun::clean() const {
  if (!error.empty()) return false;
  for (const auto& c : checks)
    if (c.enforced && !c.pass) return false;
  return true;
}

std::string CellRun::outcome() const {
  if (!error.empty()) return "error";
  if (transcript) return std::string(to_string(transcript->outcome.kind));
  if (box) return box->forfeit.empty() ? "completed" : "forfeit";
  return "error";
}

std::size_t CellRun::maker_moves() const {
  if (transcript) return transcript->maker_moves();
  if (box) return box->rounds.size();
  return 0;
}

CellRun run_cell(const json& cell, const std::vector<std::vector<ElementId>>* scripted) {
  if (cell.at("game") == "box") {
    try {
      return run_box_cell(cell);
    } catch (const std::exception& e) {
      CellRun r;
      r.cell = cell;
      r.error = e.what();
      return r;
    }
  }
  CellRun r;
  r.cell = cell;
  try {
    std::unique_ptr<Strategy> human;
    if (scripted) human = std::make_unique<ScriptedBreaker>(*scripted);
    Built b = build(cell, std::move(human));
    GameState fin = b.board;
    Transcript t = run_game(b.board, b.bias, *b.maker, *b.breaker, b.check, {b.first, b.move_cap, b.seed, true}, &fin);
    t.config = cell;
    r.checks = post_checks(b, t, fin);
    r.transcript = std::move(t);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

std::vector<CellRun> run_cells_serial(const std::vector<json>& cells) {
  std::vector<CellRun> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(run_cell(c));
  return out;
}

std::vector<CellRun> run_cells_parallel(const std::vector<json>& cells, int threads) {
  std::vector<CellRun> out(cells.size());
  std::vector<std::string> config_errors(cells.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (long i = 0; i < static_cast<long>(cells.size()); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = run_cell(cells[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      config_errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (const auto& e : config_errors)
    if (!e.empty()) throw ConfigError(e);
  return out;
}

std::string cell_file_stem(const json& cell) {
  return cell.at("opponent").get<std::string>() + "_seed" + std::to_string(cell.at("seed").get<std::uint64_t>());
}

void write_summary_csv(std::ostream& out, const std::vector<CellRun>& runs, const std::vector<std::string>& files) {
  out << "game,opponent,seed,outcome,maker_moves,total_moves,forfeit_reason,guards_held,bias_guard,degree_guard,"
         "hard_violations,soft_violations,checks_failed,realized,bound,file\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    std::string reason = r.error, guards, bias_guard, degree_guard, realized, bound;
    std::size_t hard = 0, soft = 0, total = 0;
    if (r.transcript) {
      const auto& t = *r.transcript;
      total = t.moves.size();
      hard = t.violations.size();
      if (t.outcome.kind == Outcome::Kind::Forfeit) reason = t.outcome.reason;
      const json& p = t.params["maker"];
      auto flag = [&](const char* key) { return p.contains(key) ? std::string(p[key].get<bool>() ? "1" : "0") : std::string(); };
      guards = flag("guards_held");
      bias_guard = flag("bias_guard");
      degree_guard = flag("degree_guard");
      if (t.result.is_object() && t.result.contains("soft_violations")) soft = t.result["soft_violations"].get<std::size_t>();
      if (p.contains("move_budget")) {
        realized = std::to_string(t.maker_moves());
        bound = std::to_string(p["move_budget"].get<double>());
      }
    } else if (r.box) {
      total = r.box->rounds.size();
      reason = r.box->forfeit;
      realized = std::to_string(r.box->max_weight);
      bound = std::to_string(box_weight_bound(Bias::parse(r.cell.at("bias").get<std::string>()).q, r.box->m, r.box->rounds.size()));
      hard = r.box->weight_violations + r.box->phi_violations;
    }
    std::size_t failed = 0;
    for (const auto& c : r.checks) failed += (c.enforced && !c.pass) ? 1 : 0;
    out << r.cell.at("game").get<std::string>() << ',' << csv_field(r.cell.at("opponent").get<std::string>()) << ','
        << r.cell.at("seed").get<std::uint64_t>() << ',' << r.outcome() << ',' << r.maker_moves() << ',' << total << ','
        << csv_field(reason) << ',' << guards << ',' << bias_guard << ',' << degree_guard << ',' << hard << ',' << soft
        << ',' << failed << ',' << realized << ',' << bound << ',' << csv_field(i < files.size() ? fs::path(files[i]).filename().string() : "") << '\n';
  }
}

RunReport run_experiment(const ExperimentConfig& cfg, bool parallel) {
  RunReport rep;
  const fs::path dir = fs::path(cfg.out_dir) / cfg.name;
  fs::create_directories(dir);
  rep.dir = dir.string();
  const auto cells = cfg.cells();
  rep.runs = parallel ? run_cells_parallel(cells, cfg.threads) : run_cells_serial(cells);
  for (const auto& r : rep.runs) {
    const fs::path stem = dir / cell_file_stem(r.cell);
    std::string file;
    if (cfg.write_transcripts) {
      file = stem.string() + ".jsonl";
      if (r.transcript) {
        write_atomically(file, transcript_to_string(*r.transcript));
      } else if (r.box) {
        json rec{{"type", "box"}, {"config", r.cell},
                 {"result", box_result(*r.box, Bias::parse(r.cell.at("bias").get<std::string>()).q)}};
        write_atomically(file, rec.dump() + "\n");
        std::ostringstream csv;
        write_box_csv(csv, *r.box);
        write_atomically(stem.string() + ".csv", csv.str());
      } else {
        json rec{{"type", "error"}, {"config", r.cell}, {"error", r.error}};
        write_atomically(file, rec.dump() + "\n");
      }
    }
    rep.files.push_back(file);
    rep.errors += r.error.empty() ? 0 : 1;
    rep.dirty += r.clean() ? 0 : 1;
  }
  std::ostringstream summary;
  write_summary_csv(summary, rep.runs, rep.files);
  write_atomically(dir / "summary.csv", summary.str());
  write_atomically(dir / "config.json", cfg.to_json().dump(2) + "\n");
  return rep;
}

// ---- audit ------------------------------------------------------------------

bool AuditReport::clean() const {
  for (const auto& c : checks)
    if (c.enforced && !c.pass) return false;
  return true;
}

json AuditReport::to_json() const {
  json checks_j = json::array();
  for (const auto& c : checks) checks_j.push_back(mbgame::to_json(c));
  json j{{"path", path}, {"outcome", outcome}, {"clean", clean()}, {"guards", guards}, {"checks", checks_j}};
  if (!forfeit_reason.empty()) j["forfeit_reason"] = forfeit_reason;
  return j;
}

AuditReport audit_transcript(const Transcript& t) {
  AuditReport rep;
  rep.outcome = std::string(to_string(t.outcome.kind));
  if (t.outcome.kind == Outcome::Kind::Forfeit) rep.forfeit_reason = t.outcome.reason;
  const json& p = t.params.contains("maker") ? t.params["maker"] : json::object();
  for (const char* key : {"guards_held", "bias_guard", "degree_guard"})
    if (p.contains(key)) rep.guards[key] = p[key];

  std::optional<std::size_t> bad_move;
  try {
    replay(t);
    rep.checks.push_back({"legal-replay", true, true, std::nullopt, {}});
  } catch (const ReplayError& e) {
    bad_move = e.move_index;
    rep.checks.push_back({"legal-replay", false, true, e.move_index, e.what()});
  } catch (const GameError& e) {
    rep.checks.push_back({"legal-replay", false, true, std::nullopt, e.what()});
  }
  {
    Check c{"recorded-invariants", t.violations.empty(), true, std::nullopt, {}};
    if (!t.violations.empty()) c.first_violation = t.violations.front().move_index, c.detail = t.violations.front().message;
    rep.checks.push_back(std::move(c));
  }
  if (!t.config.is_object() || t.config.empty()) {
    rep.checks.push_back({"resimulation", false, false, std::nullopt, "transcript carries no experiment cell"});
    return rep;
  }
  std::vector<std::vector<ElementId>> human;
  const bool scripted = t.config.value("opponent", "") == "human";
  if (scripted)
    for (const auto& m : t.moves)
      if (m.player == Side::Breaker) human.push_back(m.claims);
  CellRun again;
  try {
    again = run_cell(t.config, scripted ? &human : nullptr);
  } catch (const std::exception& e) {
    rep.checks.push_back({"resimulation", false, true, std::nullopt, e.what()});
    return rep;
  }
  if (!again.error.empty() || !again.transcript) {
    rep.checks.push_back({"resimulation", false, true, std::nullopt, "re-simulation failed: " + again.error});
    return rep;
  }
  const auto& u = *again.transcript;
  Check same{"resimulation", true, true, std::nullopt, {}};
  const std::size_t common = std::min(u.moves.size(), t.moves.size());
  for (std::size_t i = 0; i < common && same.pass; ++i)
    if (u.moves[i].player != t.moves[i].player || u.moves[i].claims != t.moves[i].claims) {
      same.pass = false;
      same.first_violation = i;
      same.detail = "move differs from the re-simulated game";
    }
  if (same.pass && (u.moves.size() != t.moves.size() || !(u.outcome == t.outcome))) {
    same.pass = false;
    same.first_violation = common;
    same.detail = "game length or outcome differs from the re-simulated game";
  }
  if (bad_move && (!same.first_violation || *same.first_violation > *bad_move)) same.first_violation = bad_move;
  rep.checks.push_back(same);
  // the remaining checks describe the re-simulated game, valid as a statement about this file only when it matches
  for (auto c : again.checks) {
    if (c.name == "legal-replay" || c.name == "strategy-invariants") c.name = "resimulated-" + c.name;
    if (!same.pass) c.enforced = false;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

AuditReport audit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open " + path);
  std::string first;
  std::getline(in, first);
  json head;
  try {
    head = json::parse(first);
  } catch (const json::parse_error& e) {
    throw TranscriptParseError(1, e.what());
  }
  AuditReport rep;
  if (head.value("type", "") == "box") {
    rep.path = path;
    const json& cell = head.at("config");
    CellRun again = run_cell(cell);
    if (!again.box) throw GameError("box re-simulation failed: " + again.error);
    const int q = Bias::parse(cell.at("bias").get<std::string>()).q;
    rep.outcome = again.outcome();
    rep.checks = again.checks;
    const bool same = box_result(*again.box, q) == head.at("result");
    rep.checks.insert(rep.checks.begin(), {"resimulation", same, true, std::nullopt, same ? "" : "recorded result differs"});
    return rep;
  }
  in.clear();
  in.seekg(0);
  Transcript t = read_transcript(in);
  rep = audit_transcript(t);
  rep.path = path;
  return rep;
}

void print_audit(std::ostream& out, const AuditReport& r) {
  out << r.path << ": " << (r.clean() ? "CLEAN" : "VIOLATIONS") << " (outcome " << r.outcome;
  if (!r.forfeit_reason.empty()) out << ", forfeit: " << r.forfeit_reason;
  if (!r.guards.empty()) out << ", guards " << r.guards.dump();
  out << ")\n";
  for (const auto& c : r.checks) {
    out << "  " << (c.pass ? "pass" : c.enforced ? "FAIL" : "soft") << "  " << c.name;
    if (c.first_violation) out << " at move " << *c.first_violation;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
}

Transcript play_interactive(const ExperimentConfig& cfg, std::uint64_t seed, std::istream& in, std::ostream& out) {
  if (cfg.game == GameKind::Box) throw ConfigError("play: box games have no board to play on");
  json cell = cfg.cells().front();
  cell["seed"] = seed;
  cell["opponent"] = "human";
  Built b = build(cell, std::make_unique<HumanBreaker>(cfg.bias.q, in, out));
  out << "playing " << to_string(cfg.game) << " as Breaker with bias " << cfg.bias.str() << " against " << b.maker->name()
      << "\n";
  GameState fin = b.board;
  Transcript t = run_game(b.board, b.bias, *b.maker, *b.breaker, b.check, {b.first, b.move_cap, b.seed, true}, &fin);
  t.config = cell;
  out << "result: " << to_string(t.outcome.kind);
  if (t.outcome.kind == Outcome::Kind::Forfeit) out << " (" << t.outcome.reason << ")";
  out << " after " << t.maker_moves() << " Maker moves\n";
  return t;
}

}  // namespace mbgame
