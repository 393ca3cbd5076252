#include "mbgame/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mbgame {

void Hypergraph::normalize(bool allow_empty) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw GameError("winning set repeats an element");
    for (ElementId e : s)
      if (e < 0 || static_cast<std::size_t>(e) >= board_size)
        throw GameError("element " + std::to_string(e) + " outside board of size " + std::to_string(board_size));
    if (s.empty() && !allow_empty) throw GameError("empty winning set");
  }
}

std::size_t Hypergraph::max_set_size() const {
  std::size_t m = 0;
  for (const auto& s : sets) m = std::max(m, s.size());
  return m;
}

Hypergraph parse_hypergraph(std::istream& in) {
  Hypergraph h;
  std::string line;
  std::size_t line_no = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (!have_size) {
      long long size = 0;
      if (!(ls >> size)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw GameError("hypergraph line " + std::to_string(line_no) + ": expected board size");
      }
      if (size <= 0) throw GameError("hypergraph board size must be positive");
      h.board_size = static_cast<std::size_t>(size);
      have_size = true;
      continue;
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<ElementId> set;
    long long e = 0;
    while (ls >> e) set.push_back(static_cast<ElementId>(e));
    if (!ls.eof()) throw GameError("hypergraph line " + std::to_string(line_no) + ": bad element id");
    h.sets.push_back(std::move(set));
  }
  if (!have_size) throw GameError("hypergraph file is empty");
  h.normalize();
  return h;
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameError("cannot open hypergraph file " + path);
  return parse_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.board_size << '\n';
  for (const auto& s : h.sets) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

namespace {
bool maker_owns_a_set(const GameState& state, const Hypergraph& f) {
  for (const auto& s : f.sets)
    if (std::all_of(s.begin(), s.end(), [&](ElementId e) { return state.owner(e) == Owner::Maker; })) return true;
  return false;
}
}  // namespace

WinStatus winner_check(const GameState& state, const Hypergraph& f) {
  if (state.size() != f.board_size)
    throw GameError("hypergraph board size " + std::to_string(f.board_size) + " does not match game board " +
                    std::to_string(state.size()));
  if (maker_owns_a_set(state, f)) return WinStatus::MakerWin;
  if (state.free_count() == 0) return WinStatus::BreakerWin;
  return WinStatus::Undecided;
}

WinCheck hypergraph_win_check(const Hypergraph& f) {
  return [f](const GameState& state) {
    const WinStatus w = winner_check(state, f);
    if (w != WinStatus::Undecided) return w;
    const bool all_dead = std::all_of(f.sets.begin(), f.sets.end(), [&](const auto& s) {
      return std::any_of(s.begin(), s.end(), [&](ElementId e) { return state.owner(e) == Owner::Breaker; });
    });
    return all_dead ? WinStatus::BreakerWin : WinStatus::Undecided;
  };
}

}  // namespace mbgame
