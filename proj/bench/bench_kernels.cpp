// Times each parallel kernel against its serial reference.
// Usage: bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "hanoi/contraction.hpp"
#include "hanoi/fractal.hpp"
#include "hanoi/schreier.hpp"

using namespace hanoi;

namespace {

double best_of(int repeats, const std::function<void()> &f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char *name, int repeats, const std::function<void()> &serial,
         const std::function<void()> &parallel) {
  double s = best_of(repeats, serial);
  double p = best_of(repeats, parallel);
  std::printf("%-28s %10.4f %10.4f %7.2fx\n", name, s, p, s / p);
}

} // namespace

int main(int argc, char **argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial s", "omp s", "speedup");

  auto hc5 = family_Hc(5);
  row("schreier_images Hc(5) n=6", repeats, [&] { schreier_images_serial(hc5, 6); },
      [&] { schreier_images(hc5, 6); });

  auto ifs = build_ifs(build_simplex(4));
  row("attractor_points k=4 m=6", repeats, [&] { attractor_points_serial(ifs, 6); },
      [&] { attractor_points(ifs, 6); });

  auto pts = attractor_points(build_ifs(build_simplex(3)), 6);
  row("assemble_cell_counts k=3 m=6", repeats,
      [&] { assemble_cell_counts_serial(3, pts.cells, pts.coords.size()); },
      [&] { assemble_cell_counts(3, pts.cells, pts.coords.size()); });

  auto hc6 = family_Hc(6);
  row("prenucleus Hc(6)", repeats, [&] { prenucleus_serial(hc6); }, [&] { prenucleus(hc6); });
  return 0;
}
