#include "mbgame/tree.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace mbgame {

TreeSpec TreeSpec::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  if (n < 1) throw InvalidTreeError("tree needs at least one vertex");
  if (static_cast<int>(edges.size()) != n - 1)
    throw InvalidTreeError("tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) + " edges, got " +
                           std::to_string(edges.size()));
  TreeSpec t;
  t.n = n;
  t.adj.assign(static_cast<std::size_t>(n), {});
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw InvalidTreeError("bad tree edge");
    const int ru = find(u), rv = find(v);
    if (ru == rv) throw InvalidTreeError("tree edges contain a cycle");
    parent[static_cast<std::size_t>(ru)] = rv;
    t.adj[static_cast<std::size_t>(u)].push_back(v);
    t.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : t.adj) std::sort(a.begin(), a.end());
  return t;
}

TreeSpec TreeSpec::from_prufer(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size()) + 2;
  std::vector<int> degree(static_cast<std::size_t>(n), 1);
  for (int x : seq) {
    if (x < 0 || x >= n) throw InvalidTreeError("Prufer entry out of range");
    ++degree[static_cast<std::size_t>(x)];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) leaves.push(v);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int x : seq) {
    const int leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, x);
    if (--degree[static_cast<std::size_t>(x)] == 1) leaves.push(x);
  }
  const int u = leaves.top();
  leaves.pop();
  edges.emplace_back(u, leaves.top());
  return from_edges(n, edges);
}

std::vector<std::pair<Vertex, Vertex>> TreeSpec::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v : adj[static_cast<std::size_t>(u)])
      if (u < v) out.emplace_back(u, v);
  return out;
}

int TreeSpec::max_degree() const {
  int d = 0;
  for (const auto& a : adj) d = std::max(d, static_cast<int>(a.size()));
  return d;
}

TreeSpec parse_tree(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw InvalidTreeError("missing vertex count");
  std::vector<std::pair<Vertex, Vertex>> edges;
  Vertex u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  return TreeSpec::from_edges(n, edges);
}

TreeSpec load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidTreeError("cannot open tree file " + path);
  return parse_tree(in);
}

void write_tree(std::ostream& out, const TreeSpec& t) {
  out << t.n << '\n';
  for (auto [u, v] : t.edges()) out << u << ' ' << v << '\n';
}

TreeSpec random_prufer_tree(int n, CounterRng& rng) {
  if (n < 2) throw InvalidTreeError("random tree needs n >= 2");
  std::vector<int> seq(static_cast<std::size_t>(n - 2));
  for (auto& x : seq) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  return TreeSpec::from_prufer(seq);
}

TreeSpec random_bounded_degree_tree(int n, int max_deg, CounterRng& rng) {
  if (n < 2 || max_deg < 2) throw InvalidTreeError("bounded-degree tree needs n >= 2 and max_deg >= 2");
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  std::vector<int> open{0};
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int v = 1; v < n; ++v) {
    const std::size_t pick = rng.below(open.size());
    const int u = open[pick];
    edges.emplace_back(u, v);
    if (++deg[static_cast<std::size_t>(u)] == max_deg) {
      open[pick] = open.back();
      open.pop_back();
    }
    ++deg[static_cast<std::size_t>(v)];
    open.push_back(v);
  }
  std::vector<int> relabel(static_cast<std::size_t>(n));
  std::iota(relabel.begin(), relabel.end(), 0);
  shuffle_in_place(relabel, rng);
  for (auto& [u, v] : edges) u = relabel[static_cast<std::size_t>(u)], v = relabel[static_cast<std::size_t>(v)];
  return TreeSpec::from_edges(n, edges);
}

TreeSpec path_tree(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return TreeSpec::from_edges(n, e);
}

TreeSpec star_tree(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(0, v);
  return TreeSpec::from_edges(n, e);
}

namespace {

// Appends a path of `len` new vertices hanging from `from`.
void hang_path(std::vector<std::pair<Vertex, Vertex>>& e, int& next, Vertex from, int len) {
  Vertex prev = from;
  for (int i = 0; i < len; ++i) {
    e.emplace_back(prev, next);
    prev = next++;
  }
}

}  // namespace

TreeSpec spider_tree(int legs, int leg_length) {
  std::vector<std::pair<Vertex, Vertex>> e;
  int next = 1;
  for (int l = 0; l < legs; ++l) hang_path(e, next, 0, leg_length);
  return TreeSpec::from_edges(next, e);
}

TreeSpec caterpillar_tree(int spine) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 1; v < spine; ++v) e.emplace_back(v - 1, v);
  for (int v = 0; v < spine; ++v) e.emplace_back(v, spine + v);
  return TreeSpec::from_edges(2 * spine, e);
}

TreeSpec double_star_tree(int left, int right) {
  std::vector<std::pair<Vertex, Vertex>> e{{0, 1}};
  int next = 2;
  for (int i = 0; i < left; ++i) e.emplace_back(0, next++);
  for (int i = 0; i < right; ++i) e.emplace_back(1, next++);
  return TreeSpec::from_edges(next, e);
}

TreeSpec broom_tree(int handle, int bristles) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 1; v < handle; ++v) e.emplace_back(v - 1, v);
  int next = handle;
  for (int i = 0; i < bristles; ++i) e.emplace_back(handle - 1, next++);
  return TreeSpec::from_edges(next, e);
}

TreeSpec h_tree(int n) {
  if (n < 7) throw InvalidTreeError("H-tree needs n >= 7");
  const int leg = (n - 2) / 5;
  const int bridge = n - 2 - 4 * leg;  // interior vertices between the hubs
  std::vector<std::pair<Vertex, Vertex>> e;
  int next = 2;
  Vertex prev = 0;
  for (int i = 0; i < bridge; ++i) {
    e.emplace_back(prev, next);
    prev = next++;
  }
  e.emplace_back(prev, 1);
  for (Vertex hub : {0, 1})
    for (int l = 0; l < 2; ++l) hang_path(e, next, hub, leg);
  return TreeSpec::from_edges(next, e);
}

TreeSpec make_tree(const std::string& family, int n, CounterRng& rng) {
  if (family == "path") return path_tree(n);
  if (family == "star") return star_tree(n);
  if (family == "spider") {
    // legs of length 2, the remainder appended to the first leg
    std::vector<std::pair<Vertex, Vertex>> e;
    int next = 1;
    const int legs = (n - 1) / 2;
    for (int l = 0; l < legs; ++l) hang_path(e, next, 0, l == 0 ? n - 1 - 2 * (legs - 1) : 2);
    return TreeSpec::from_edges(next, e);
  }
  if (family == "caterpillar") {
    if (n % 2 == 0) return caterpillar_tree(n / 2);
    auto t = caterpillar_tree(n / 2);
    auto e = t.edges();
    e.emplace_back(0, n - 1);
    return TreeSpec::from_edges(n, e);
  }
  if (family == "double-star") return double_star_tree((n - 2) / 2, n - 2 - (n - 2) / 2);
  if (family == "broom") return broom_tree(n - n / 3, n / 3);
  if (family == "h") return h_tree(n);
  if (family == "random") return random_prufer_tree(n, rng);
  if (family == "random4") return random_bounded_degree_tree(n, 4, rng);
  throw InvalidTreeError("unknown tree family '" + family + "'");
}

DegreeCensus degree_census(const TreeSpec& t) {
  if (t.n < 2) throw InvalidTreeError("degree census needs n >= 2");
  DegreeCensus c;
  std::set<Vertex> nl;
  for (Vertex v = 0; v < t.n; ++v) {
    const int d = t.degree(v);
    if (d == 1) {
      c.d1.push_back(v);
      nl.insert(t.adj[static_cast<std::size_t>(v)][0]);
    } else if (d == 2) {
      c.d2.push_back(v);
    } else {
      c.dgt2.push_back(v);
    }
  }
  c.leaves = c.d1;
  c.leaf_neighbors.assign(nl.begin(), nl.end());
  if (c.dgt2.size() + 2 > c.d1.size()) throw InvalidTreeError("leaf inequality |D_>2| <= |D_1| - 2 fails");
  return c;
}

std::string_view to_string(TreeCase c) { return c == TreeCase::CaseI ? "I" : "II"; }

long ceil_two_thirds_power(long n) {
  const long target = n * n;
  long c = static_cast<long>(std::cbrt(static_cast<double>(target)));
  while (c > 0 && (c - 1) * (c - 1) * (c - 1) >= target) --c;
  while (c * c * c < target) ++c;
  return c;
}

TreeCase classify_case(const TreeSpec& t) {
  const auto c = degree_census(t);
  const long k = static_cast<long>(c.leaf_neighbors.size());
  return k * k * k >= static_cast<long>(t.n) * t.n ? TreeCase::CaseI : TreeCase::CaseII;
}

std::vector<Vertex> select_independent_leaves(const TreeSpec& t, const DegreeCensus& census) {
  if (classify_case(t) != TreeCase::CaseI) throw InvalidTreeError("independent leaves need a Case I tree");
  const auto want = static_cast<std::size_t>(ceil_two_thirds_power(t.n));
  std::vector<Vertex> out;
  for (Vertex w : census.leaf_neighbors) {
    if (out.size() == want) break;
    for (Vertex x : t.adj[static_cast<std::size_t>(w)])
      if (t.degree(x) == 1) {
        out.push_back(x);
        break;
      }
  }
  return out;
}

int bare_length_threshold(int n) { return static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 0.2) - 1e-12)); }

BareDecomposition bare_decomposition(const TreeSpec& t, int len_threshold) {
  BareDecomposition d;
  d.in_forest.assign(static_cast<std::size_t>(t.n), 1);
  for (Vertex u = 0; u < t.n; ++u) {
    if (t.degree(u) == 2) continue;
    for (Vertex w : t.adj[static_cast<std::size_t>(u)]) {
      BarePath p;
      p.a = u;
      Vertex prev = u, cur = w;
      while (t.degree(cur) == 2) {
        p.interior.push_back(cur);
        const auto& nb = t.adj[static_cast<std::size_t>(cur)];
        const Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
      }
      p.b = cur;
      if (p.a > p.b || p.interior.empty() || p.length() < len_threshold) continue;
      for (Vertex x : p.interior) d.in_forest[static_cast<std::size_t>(x)] = 0;
      d.paths.push_back(std::move(p));
    }
  }
  for (auto [u, v] : t.edges())
    if (d.in_forest[static_cast<std::size_t>(u)] && d.in_forest[static_cast<std::size_t>(v)]) d.forest_edges.emplace_back(u, v);
  return d;
}

PartitionResult random_partition(const PartitionRequest& req, CounterRng& rng) {
  const std::size_t ell = req.sizes.size();
  if (ell == 0 || req.endpoints.size() != ell) throw GameError("partition needs one size per endpoint pair");
  long total = 0;
  for (int s : req.sizes) total += s;
  if (total != static_cast<long>(req.vertices.size()))
    throw GameError("partition sizes sum to " + std::to_string(total) + " but " + std::to_string(req.vertices.size()) +
                    " vertices are available");
  PartitionResult res;
  res.limit.resize(ell);
  for (std::size_t i = 0; i < ell; ++i)
    res.limit[i] = req.degree_coeff * req.sizes[i] * std::pow(static_cast<double>(req.k), req.degree_exp);

  std::vector<int> part_of(static_cast<std::size_t>(req.k), -1);
  std::vector<Vertex> pool = req.vertices;
  for (int attempt = 1; attempt <= req.retry_cap; ++attempt) {
    shuffle_in_place(pool, rng);
    std::vector<std::vector<Vertex>> parts(ell);
    std::size_t at = 0;
    for (std::size_t i = 0; i < ell; ++i)
      for (int j = 0; j < req.sizes[i]; ++j) parts[i].push_back(pool[at++]);
    for (auto& p : parts) std::sort(p.begin(), p.end());

    std::vector<int> maxdeg(ell, 0);
    bool ok = true;
    for (std::size_t i = 0; i < ell && ok; ++i) {
      std::vector<Vertex> members = parts[i];
      members.push_back(req.endpoints[i].first);
      members.push_back(req.endpoints[i].second);
      for (Vertex v : members) part_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
      for (Vertex v : members) {
        int d = 0;
        if (static_cast<std::size_t>(v) < req.host_adj.size())
          for (Vertex w : req.host_adj[static_cast<std::size_t>(v)])
            if (part_of[static_cast<std::size_t>(w)] == static_cast<int>(i)) ++d;
        maxdeg[i] = std::max(maxdeg[i], d);
      }
      for (Vertex v : members) part_of[static_cast<std::size_t>(v)] = -1;
      if (maxdeg[i] > res.limit[i]) ok = false;
    }
    if (ok) {
      res.parts = std::move(parts);
      res.attempts = attempt;
      res.max_degree = std::move(maxdeg);
      return res;
    }
  }
  throw PartitionFailure(req.retry_cap, "random partition failed " + std::to_string(req.retry_cap) + " times");
}

}  // namespace mbgame
