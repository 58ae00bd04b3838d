#pragma once

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "field.hpp"

namespace afshar {

// Free-space kernel between a source sample at x_i and a target point x_f in
// a plane a distance z downstream:
//
//   K(x_i, x_f) = scale * exp(i * 2*pi * L / lambda),
//   L = sqrt((x_f - x_i)^2 + z^2)   (exact point-to-point distance).
//
// No obliquity factor and no 1/sqrt(lambda z) prefactor: every observable in
// this library is a ratio of intensities within a single plane, so a constant
// per-hop factor cancels. `scale` exists so tests can verify exactly that
// invariance; leave it at 1 for normal use.
struct KernelSpec {
  double z = 0.0;
  double wavelength = 0.0;
  cdouble scale{1.0, 0.0};
};

inline cdouble kernel(const KernelSpec& ks, double x_i, double x_f) {
  const double dx = x_f - x_i;
  const double path = std::sqrt(dx * dx + ks.z * ks.z);
  const double phase = 2.0 * std::numbers::pi * path / ks.wavelength;
  return ks.scale * cdouble{std::cos(phase), std::sin(phase)};
}

// Half-extent of the region that actually carries amplitude, measured from
// x = 0 (the optical axis). Zero for an all-dark field.
inline double illuminated_half_extent(const WaveField& f) {
  double x = 0.0;
  for (std::size_t k = 0; k < f.amp.size(); ++k) {
    if (f.amp[k] != cdouble{}) {
      const double a = std::abs(f.grid.position(k));
      if (a > x) x = a;
    }
  }
  return x;
}

// Huygens sum over the source samples:
//
//   psi_f(x_f) = sum_k K(x_k, x_f) * psi(x_k) * dx.
//
// The target grid must resolve the fastest fringe the illuminated source
// extent can produce there, spacing <= lambda*z / (2*X_src); otherwise the
// sampled result is aliased garbage and the call fails with
// undersampled-source. Source samples that are exactly zero contribute
// nothing and are skipped; the summation order over the remaining samples is
// fixed (ascending x), so results are bit-reproducible run to run.
inline WaveField propagate(const WaveField& src, const Grid1D& target,
                           const KernelSpec& ks) {
  if (!(ks.z > 0.0)) fail(Errc::out_of_range, "propagation distance must be positive");
  if (!(ks.wavelength > 0.0)) fail(Errc::out_of_range, "wavelength must be positive");

  WaveField out = make_field(target);

  // Pack the nonzero source samples once; the inner loop then touches only
  // live emitters (slit fields are mostly dark).
  std::vector<double> xs;
  std::vector<cdouble> as;
  xs.reserve(src.amp.size());
  as.reserve(src.amp.size());
  for (std::size_t k = 0; k < src.amp.size(); ++k) {
    if (src.amp[k] != cdouble{}) {
      xs.push_back(src.grid.position(k));
      as.push_back(src.amp[k]);
    }
  }
  if (xs.empty()) return out;  // zero field in, zero field out

  const double x_src = illuminated_half_extent(src);
  const double max_target_spacing = ks.wavelength * ks.z / (2.0 * x_src);
  if (target.spacing > max_target_spacing) {
    std::ostringstream os;
    os << "target spacing " << target.spacing
       << " m cannot resolve the fringes of a source of half-extent " << x_src
       << " m at z = " << ks.z << " m (need <= " << max_target_spacing << " m)";
    fail(Errc::undersampled_source, os.str());
  }

  const double k0 = 2.0 * std::numbers::pi / ks.wavelength;
  const double z2 = ks.z * ks.z;
  const double w = src.grid.spacing;
  for (std::size_t j = 0; j < target.n; ++j) {
    const double xf = target.position(j);
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const double dx = xf - xs[k];
      const double phase = k0 * std::sqrt(dx * dx + z2);
      const double cp = std::cos(phase);
      const double sp = std::sin(phase);
      re += cp * as[k].real() - sp * as[k].imag();
      im += cp * as[k].imag() + sp * as[k].real();
    }
    out.amp[j] = ks.scale * cdouble{re * w, im * w};
  }
  return out;
}

}  // namespace afshar
