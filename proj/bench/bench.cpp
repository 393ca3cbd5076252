#include <omp.h>

#include <chrono>
#include <cmath>
#include <iostream>

#include "mbgame/experiment.hpp"
#include "mbgame/potential.hpp"
#include "mbgame/subgames.hpp"

using namespace mbgame;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int seeds = argc > 1 ? std::atoi(argv[1]) : 16;
  std::cout << "threads available: " << omp_get_max_threads() << "\n";

  const auto cfg = parse_experiment({{"name", "bench"},
                                     {"game", "tree-embed"},
                                     {"board", {{"tree", {{"family", "spider"}, {"n", 60}}}}},
                                     {"breakers", {"random", "isolator"}},
                                     {"seeds", {{"count", seeds}}},
                                     {"output", {{"dir", "/tmp"}}}});
  const auto cells = cfg.cells();
  std::vector<CellRun> a, b;
  const double ts = seconds([&] { a = run_cells_serial(cells); });
  const double tp = seconds([&] { b = run_cells_parallel(cells); });
  bool same = a.size() == b.size();
  for (std::size_t i = 0; same && i < a.size(); ++i)
    same = a[i].transcript && b[i].transcript &&
           transcript_to_string(*a[i].transcript) == transcript_to_string(*b[i].transcript);
  std::cout << "playouts (" << cells.size() << " cells, spider n=60): serial " << ts << " s, openmp " << tp
            << " s, identical " << (same ? "yes" : "NO") << "\n";

  const GameState board = GameState::on_graph(GraphBoard::complete_bipartite(9));
  const Hypergraph hall = hall_hypergraph(board, 9);
  const Bias bias{1, 1};
  double s1 = 0, s2 = 0;
  const double bs = seconds([&] {
    for (int i = 0; i < 20; ++i) s1 = beck_sum(hall, bias);
  });
  const double bp = seconds([&] {
    for (int i = 0; i < 20; ++i) s2 = beck_sum_parallel(hall, bias);
  });
  std::cout << "beck_sum (Hall family r=9, " << hall.sets.size() << " sets, x20): serial " << bs << " s, openmp " << bp
            << " s, relative difference " << std::abs(s1 - s2) / std::max(s1, 1e-300) << "\n";
  return same ? 0 : 1;
}
