#pragma once

#include <cstddef>
#include <vector>

#include "grid.hpp"

namespace afshar {

struct Extremum {
  std::size_t index = 0;  // sample index of the discrete extremum
  double x = 0.0;         // parabola-refined position
  double value = 0.0;     // sample value at the discrete extremum
};

// Vertex abscissa of the parabola through (x[k-1],v[k-1]), (x[k],v[k]),
// (x[k+1],v[k+1]) on a uniform grid. Falls back to the sample position when
// the three points are collinear.
inline double refine_extremum_x(const Grid1D& g, const std::vector<double>& v,
                                std::size_t k) {
  const double vm = v[k - 1], v0 = v[k], vp = v[k + 1];
  const double denom = vm - 2.0 * v0 + vp;
  if (denom == 0.0) return g.position(k);
  const double delta = 0.5 * (vm - vp) / denom;
  return g.position(k) + delta * g.spacing;
}

// Interior local maxima: v[k] > v[k-1] and v[k] >= v[k+1], i.e. the first
// sample of any flat top wins, which keeps the result deterministic. Values
// below `floor` are ignored.
inline std::vector<Extremum> find_local_maxima(const Grid1D& g,
                                               const std::vector<double>& v,
                                               double floor = 0.0) {
  std::vector<Extremum> out;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (v[k] > v[k - 1] && v[k] >= v[k + 1] && v[k] >= floor)
      out.push_back({k, refine_extremum_x(g, v, k), v[k]});
  }
  return out;
}

inline std::vector<Extremum> find_local_minima(const Grid1D& g,
                                               const std::vector<double>& v) {
  std::vector<Extremum> out;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    if (v[k] < v[k - 1] && v[k] <= v[k + 1])
      out.push_back({k, refine_extremum_x(g, v, k), v[k]});
  }
  return out;
}

// Index of the largest value; the first one on ties.
inline std::size_t argmax_index(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < v.size(); ++k)
    if (v[k] > v[best]) best = k;
  return best;
}

}  // namespace afshar
