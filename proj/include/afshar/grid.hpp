#pragma once

#include <cstddef>
#include <sstream>

#include "errors.hpp"

namespace afshar {

// Uniform 1-D sample grid on [x_min, x_max], both endpoints included.
// The spacing is stored once at construction so position(k) is bit-identical
// no matter how or where it is evaluated.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;
  double spacing = 0.0;

  double position(std::size_t k) const {
    return x_min + static_cast<double>(k) * spacing;
  }
  double extent() const { return x_max - x_min; }
  double half_extent() const { return 0.5 * (x_max - x_min); }
};

inline Grid1D make_grid(double x_min, double x_max, std::size_t n) {
  if (!(x_min < x_max)) {
    std::ostringstream os;
    os << "grid bounds must satisfy x_min < x_max, got [" << x_min << ", "
       << x_max << "]";
    fail(Errc::invalid_bounds, os.str());
  }
  if (n < 2) {
    std::ostringstream os;
    os << "grid needs at least 2 points, got " << n;
    fail(Errc::too_few_points, os.str());
  }
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n = n;
  g.spacing = (x_max - x_min) / static_cast<double>(n - 1);
  return g;
}

// Exact comparison on the defining numbers. Fields produced on the "same"
// grid by different code paths must agree bitwise before they may be mixed.
inline bool same_grid(const Grid1D& a, const Grid1D& b) {
  return a.x_min == b.x_min && a.x_max == b.x_max && a.n == b.n;
}

}  // namespace afshar
