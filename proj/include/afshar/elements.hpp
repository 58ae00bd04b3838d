#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "field.hpp"

namespace afshar {

// ---------------------------------------------------------------------------
// Double slit
// ---------------------------------------------------------------------------

// Two rectangular slits of equal width, centers at +-separation/2. Slit A is
// the one whose transmission probability is `transmission`; it sits at
// +separation/2, so after the inverting imaging lens its image lands on the
// negative-x half of the detector (region D1). Slit B carries the remaining
// probability 1 - t at -separation/2. `phase` is a relative phase applied to
// the slit-A amplitude.
struct DoubleSlitSpec {
  double transmission = 0.5;
  double phase = 0.0;
  double width = 25e-6;
  double separation = 250e-6;
};

inline void validate(const DoubleSlitSpec& s) {
  if (!(s.transmission >= 0.0 && s.transmission <= 1.0))
    fail(Errc::validation_error, "t out of [0,1]");
  if (!(s.width > 0.0)) fail(Errc::validation_error, "slit width must be positive");
  if (!(s.separation > s.width))
    fail(Errc::validation_error, "slit separation must exceed slit width");
  if (!std::isfinite(s.phase)) fail(Errc::validation_error, "slit phase must be finite");
}

// Unit-amplitude aperture function of a single slit: 1 on the closed support
// [center - width/2, center + width/2], 0 elsewhere. Samples exactly on an
// edge count as inside. Used as the per-path building block; weights and
// normalization are applied by the caller.
inline WaveField slit_aperture_field(const Grid1D& g, double center, double width) {
  const double lo = center - 0.5 * width;
  const double hi = center + 0.5 * width;
  if (lo < g.x_min || hi > g.x_max) {
    std::ostringstream os;
    os << "slit support [" << lo << ", " << hi << "] m exceeds the source grid ["
       << g.x_min << ", " << g.x_max << "] m";
    fail(Errc::slits_outside_grid, os.str());
  }
  WaveField f = make_field(g);
  std::size_t hits = 0;
  // Closed support with an ulp-scale guard so a sample meant to sit exactly
  // on an edge cannot drop out to rounding; the guard is far below one
  // spacing, so no extra sample is ever picked up.
  const double eps = 1e-9 * g.spacing;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double x = g.position(k);
    if (x >= lo - eps && x <= hi + eps) {
      f.amp[k] = cdouble{1.0, 0.0};
      ++hits;
    }
  }
  if (hits < 8) {
    std::ostringstream os;
    os << "only " << hits << " source samples across a slit of width " << width
       << " m (need >= 8)";
    fail(Errc::grid_too_coarse, os.str());
  }
  return f;
}

// Combined source field of both slits, amplitudes sqrt(t)*exp(i*phase) and
// sqrt(1-t), normalized to unit total power.
inline WaveField double_slit_field(const DoubleSlitSpec& s, const Grid1D& g) {
  validate(s);
  const WaveField a = slit_aperture_field(g, +0.5 * s.separation, s.width);
  const WaveField b = slit_aperture_field(g, -0.5 * s.separation, s.width);
  const cdouble wa = std::sqrt(s.transmission) *
                     cdouble{std::cos(s.phase), std::sin(s.phase)};
  const cdouble wb = cdouble{std::sqrt(1.0 - s.transmission), 0.0};
  WaveField f = coherent_sum(a, b, wa, wb);
  normalize(f);
  return f;
}

// ---------------------------------------------------------------------------
// Fringe geometry
// ---------------------------------------------------------------------------

// Path-length difference at transverse position x in a plane z downstream,
// between rays from the two slit centers. Odd and strictly increasing in x,
// saturating at +-separation. Two-slit interference minima sit exactly where
// this equals an odd multiple of lambda/2, independent of the slit width
// (the single-slit envelope is common to both terms of the cosine).
inline double path_length_difference(double x, double separation, double z) {
  const double h = 0.5 * separation;
  return std::sqrt((x + h) * (x + h) + z * z) -
         std::sqrt((x - h) * (x - h) + z * z);
}

// Paraxial fringe period lambda*z/separation at the plane z downstream.
inline double fringe_period(const PhysicalParams& p, double separation) {
  return p.wavelength * p.l1 / separation;
}

// Exact position of the two-slit interference minimum nearest x0, found by
// bisection on path_length_difference(x) = (m + 1/2)*lambda for the nearest
// half-integer m. When x0 is exactly equidistant from two minima (it is a
// fringe maximum), the one on the negative side is returned.
inline double nearest_minimum(const PhysicalParams& p, double separation, double x0) {
  const double lam = p.wavelength;
  const double v = path_length_difference(x0, separation, p.l1) / lam;
  const double lo_half = std::floor(v + 0.5) - 0.5;
  const double hi_half = lo_half + 1.0;
  const double target_half = (v - lo_half <= hi_half - v) ? lo_half : hi_half;
  const double target = target_half * lam;
  if (std::abs(target) >= separation) {
    std::ostringstream os;
    os << "no interference minimum near x = " << x0
       << " m (past the edge of the fringe field)";
    fail(Errc::wires_outside_grid, os.str());
  }

  // Bracket around x0. The function is strictly increasing, so growing the
  // bracket geometrically always ends with a sign change.
  const double period = fringe_period(p, separation);
  double a = x0 - period, b = x0 + period;
  auto g = [&](double x) { return path_length_difference(x, separation, p.l1) - target; };
  for (int i = 0; i < 80 && g(a) > 0.0; ++i) a -= period * (1 << std::min(i, 20));
  for (int i = 0; i < 80 && g(b) < 0.0; ++i) b += period * (1 << std::min(i, 20));
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    if (g(m) < 0.0) a = m; else b = m;
  }
  return 0.5 * (a + b);
}

// ---------------------------------------------------------------------------
// Wire grid
// ---------------------------------------------------------------------------

// Comb of 2N+1 opaque wires of width `thickness`, one fringe period apart,
// spanning the lens width b: centers x_j = j*period - b/2 for j = 0..2N.
// When lens_width is 0 it defaults to 2*N*period, which centers the comb on
// the axis. With align_to_minima the whole comb is shifted by the offset
// that puts the center wire on its nearest computed intensity minimum.
struct WireGridSpec {
  double thickness = 127e-6;
  int count_half = 3;  // N; the comb has 2N+1 wires
  double lens_width = 0.0;
  bool align_to_minima = true;
};

inline void validate(const WireGridSpec& w) {
  if (!(w.thickness >= 0.0)) fail(Errc::validation_error, "wire thickness must be >= 0");
  if (w.count_half < 0) fail(Errc::validation_error, "wire count N must be >= 0");
  if (w.lens_width < 0.0) fail(Errc::validation_error, "lens width must be >= 0");
}

inline double resolved_lens_width(const WireGridSpec& w, const PhysicalParams& p,
                                  double separation) {
  if (w.lens_width > 0.0) return w.lens_width;
  const int n_spans = std::max(2 * w.count_half, 2);
  return n_spans * fringe_period(p, separation);
}

inline std::vector<double> wire_centers(const WireGridSpec& w,
                                        const PhysicalParams& p,
                                        double separation) {
  validate(w);
  if (w.thickness == 0.0) return {};
  const double period = fringe_period(p, separation);
  if (!(w.thickness < period)) {
    std::ostringstream os;
    os << "wire wider than fringe (d = " << w.thickness << " m, period = "
       << period << " m)";
    fail(Errc::validation_error, os.str());
  }
  const double b = resolved_lens_width(w, p, separation);
  const int count = 2 * w.count_half + 1;
  std::vector<double> centers(count);
  for (int j = 0; j < count; ++j) centers[j] = j * period - 0.5 * b;
  if (w.align_to_minima) {
    const double anchor = centers[w.count_half];
    const double shift = nearest_minimum(p, separation, anchor) - anchor;
    for (double& c : centers) c += shift;
  }
  return centers;
}

// Binary transmission sampled on a grid: 0 on the union of the closed wire
// supports [c - d/2, c + d/2], 1 elsewhere.
struct TransmissionMask {
  Grid1D grid;
  std::vector<double> t;
};

inline TransmissionMask wire_grid_mask(const WireGridSpec& w,
                                       const PhysicalParams& p,
                                       double separation, const Grid1D& g) {
  TransmissionMask m{g, std::vector<double>(g.n, 1.0)};
  const std::vector<double> centers = wire_centers(w, p, separation);
  if (centers.empty()) return m;  // d = 0: no wires, identity mask

  const double half = 0.5 * w.thickness;
  if (centers.front() - half < g.x_min || centers.back() + half > g.x_max) {
    std::ostringstream os;
    os << "wire comb [" << centers.front() - half << ", " << centers.back() + half
       << "] m exceeds the grid [" << g.x_min << ", " << g.x_max << "] m";
    fail(Errc::wires_outside_grid, os.str());
  }

  std::size_t least_cover = g.n;
  const double eps = 1e-9 * g.spacing;  // same edge guard as the slits
  for (double c : centers) {
    std::size_t cover = 0;
    for (std::size_t k = 0; k < g.n; ++k) {
      if (std::abs(g.position(k) - c) <= half + eps) {
        m.t[k] = 0.0;
        ++cover;
      }
    }
    least_cover = std::min(least_cover, cover);
  }
  if (least_cover < 4) {
    std::ostringstream os;
    os << "a wire of width " << w.thickness << " m covers only " << least_cover
       << " grid samples (need >= 4)";
    fail(Errc::wire_too_thin_for_grid, os.str());
  }
  return m;
}

inline WaveField apply_mask(const WaveField& f, const TransmissionMask& m) {
  if (!same_grid(f.grid, m.grid))
    fail(Errc::grid_mismatch, "mask and field live on different grids");
  WaveField out = f;
  for (std::size_t k = 0; k < out.amp.size(); ++k) out.amp[k] *= m.t[k];
  return out;
}

// ---------------------------------------------------------------------------
// Thin lens
// ---------------------------------------------------------------------------

// Quadratic phase plate with a hard aperture: psi -> psi * exp(i*alpha*x^2)
// for |x| <= aperture, 0 outside. For imaging a plane z1 upstream onto a
// plane z2 downstream, alpha = -(pi/lambda)*(1/z1 + 1/z2); the image is
// inverted and magnified by z2/z1.
struct LensSpec {
  double alpha = 0.0;
  double aperture = 0.0;  // half-width of the open region
};

inline LensSpec imaging_lens(const PhysicalParams& p, double aperture) {
  LensSpec L;
  L.alpha = -(std::numbers::pi / p.wavelength) * (1.0 / p.l1 + 1.0 / p.l2);
  L.aperture = aperture;
  return L;
}

inline WaveField apply_lens(const WaveField& f, const LensSpec& L) {
  if (!(L.aperture > 0.0)) fail(Errc::validation_error, "lens aperture must be positive");
  WaveField out = f;
  for (std::size_t k = 0; k < out.amp.size(); ++k) {
    const double x = out.grid.position(k);
    if (std::abs(x) > L.aperture) {
      out.amp[k] = cdouble{};
    } else {
      const double ph = L.alpha * x * x;
      out.amp[k] *= cdouble{std::cos(ph), std::sin(ph)};
    }
  }
  return out;
}

}  // namespace afshar
