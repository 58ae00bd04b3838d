// Minimal library tour: sweep the slit imbalance on a coarse bench and print
// D, V and D^2 + V^2 next to the ideal family they should follow.

#include <cmath>
#include <cstdio>

#include <afshar/afshar.hpp>

int main() {
  afshar::ExperimentConfig cfg;
  cfg.wires.thickness = 0.0;
  cfg.grids.source.points = 2049;
  cfg.grids.interference.points = 4097;
  cfg.grids.detector.points = 1024;
  cfg.sweep.t_values = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  cfg.sweep.d_values = {0.0};

  std::printf("%6s %8s %8s %8s %10s %10s\n", "t", "D", "V", "D2+V2",
              "|1-2t|", "2sqrt(t(1-t))");
  for (const afshar::DualityResult& r : afshar::sweep_duality(cfg)) {
    const double t = r.context.t;
    std::printf("%6.2f %8.4f %8.4f %8.4f %10.4f %10.4f\n", t,
                r.distinguishability, r.visibility, r.sum_sq,
                std::abs(1.0 - 2.0 * t), 2.0 * std::sqrt(t * (1.0 - t)));
  }
  return 0;
}
