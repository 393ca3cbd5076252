#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mbgame/core.hpp"
#include "mbgame/engine.hpp"

namespace mbgame {

/// A finite board X = {0..board_size-1} and a family of winning sets.
struct Hypergraph {
  std::size_t board_size = 0;
  std::vector<std::vector<ElementId>> sets;

  // Sorts each set and checks ids are in range and not repeated within a set.
  // Empty sets are rejected unless allow_empty (an empty set is an instant Maker win).
  void normalize(bool allow_empty = false);
  std::size_t max_set_size() const;
};

// Plain text: first line `board_size`, then one winning set per line.
Hypergraph parse_hypergraph(std::istream& in);
Hypergraph load_hypergraph(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& h);

/// MakerWin iff some set is fully Maker-owned; BreakerWin iff the board is
/// exhausted and no set is fully Maker-owned. Throws on mismatched sizes.
WinStatus winner_check(const GameState& state, const Hypergraph& f);

/// Like winner_check, but additionally declares BreakerWin as soon as every
/// winning set holds a Breaker element.
WinCheck hypergraph_win_check(const Hypergraph& f);

}  // namespace mbgame
