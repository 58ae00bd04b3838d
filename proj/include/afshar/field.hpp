#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "grid.hpp"

namespace afshar {

using cdouble = std::complex<double>;

// Wavelength and the two bench distances: l1 from the slits to the wire-grid
// plane, l2 from that plane (where the lens also sits) to the detector.
struct PhysicalParams {
  double wavelength = 650e-9;
  double l1 = 0.55;
  double l2 = 2.2;
};

// Complex scalar amplitude sampled on a grid. Intensity is |amp|^2 and
// power means the Riemann sum of intensity over the grid.
struct WaveField {
  Grid1D grid;
  std::vector<cdouble> amp;
};

inline WaveField make_field(const Grid1D& g) {
  return WaveField{g, std::vector<cdouble>(g.n, cdouble{})};
}

inline double total_power(const WaveField& f) {
  double s = 0.0;
  for (const cdouble& a : f.amp) s += std::norm(a);
  return s * f.grid.spacing;
}

// Scale to unit total power; the relative pattern is untouched.
inline WaveField& normalize(WaveField& f) {
  const double p = total_power(f);
  if (!(p > 0.0)) fail(Errc::zero_field, "cannot normalize a field with zero power");
  const double c = 1.0 / std::sqrt(p);
  for (cdouble& a : f.amp) a *= c;
  return f;
}

inline WaveField scaled(const WaveField& f, cdouble w) {
  WaveField out = f;
  for (cdouble& a : out.amp) a *= w;
  return out;
}

// Pointwise a*wa + b*wb. Both fields must live on the same grid.
inline WaveField coherent_sum(const WaveField& a, const WaveField& b,
                              cdouble wa, cdouble wb) {
  if (!same_grid(a.grid, b.grid))
    fail(Errc::grid_mismatch, "coherent sum of fields on different grids");
  WaveField out = make_field(a.grid);
  for (std::size_t k = 0; k < a.amp.size(); ++k)
    out.amp[k] = wa * a.amp[k] + wb * b.amp[k];
  return out;
}

}  // namespace afshar
