#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "field.hpp"

namespace afshar {

// ---------------------------------------------------------------------------
// Which-way information
// ---------------------------------------------------------------------------

// The detector line is split at `boundary` into D1 (x < boundary) and
// D2 (x >= boundary). With the inverting lens, D1 is where the image of
// slit A (the t-slit, at +separation/2) lands.
struct DetectorRegions {
  double boundary = 0.0;
};

struct RegionPowers {
  double d1 = 0.0;
  double d2 = 0.0;
};

inline RegionPowers region_powers(const WaveField& f, const DetectorRegions& r) {
  RegionPowers p;
  for (std::size_t k = 0; k < f.amp.size(); ++k) {
    const double i = std::norm(f.amp[k]);
    if (f.grid.position(k) < r.boundary) p.d1 += i; else p.d2 += i;
  }
  p.d1 *= f.grid.spacing;
  p.d2 *= f.grid.spacing;
  return p;
}

// Fractions of the detected power landing in D1 and D2 (they sum to 1).
inline RegionPowers detector_probabilities(const WaveField& f,
                                           const DetectorRegions& r) {
  RegionPowers p = region_powers(f, r);
  const double tot = p.d1 + p.d2;
  if (!(tot > 0.0)) fail(Errc::no_detections, "no power reaches the detector");
  p.d1 /= tot;
  p.d2 /= tot;
  return p;
}

// Detector-imbalance distinguishability |p1 - p2| / (p1 + p2).
inline double distinguishability_simple(double p1, double p2) {
  if (p1 < 0.0 || p2 < 0.0)
    fail(Errc::out_of_range, "detector probabilities must be >= 0");
  const double tot = p1 + p2;
  if (!(tot > 0.0)) fail(Errc::no_detections, "both detector probabilities are zero");
  return std::abs(p1 - p2) / tot;
}

// Joint probabilities p[i][j] of landing in region i+1 having taken path j+1,
// conditioned on detection (the four entries sum to 1).
struct PathProbabilities {
  double p[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  bool conditioned = true;
};

inline PathProbabilities path_probabilities(const WaveField& path_a,
                                            const WaveField& path_b,
                                            const DetectorRegions& r) {
  if (!same_grid(path_a.grid, path_b.grid))
    fail(Errc::grid_mismatch, "path fields live on different grids");
  const RegionPowers pa = region_powers(path_a, r);
  const RegionPowers pb = region_powers(path_b, r);
  const double tot = pa.d1 + pa.d2 + pb.d1 + pb.d2;
  if (!(tot > 0.0)) fail(Errc::no_detections, "no power reaches the detector");
  PathProbabilities P;
  P.p[0][0] = pa.d1 / tot;
  P.p[1][0] = pa.d2 / tot;
  P.p[0][1] = pb.d1 / tot;
  P.p[1][1] = pb.d2 / tot;
  return P;
}

// Path-resolved distinguishability |P11 - P21| + |P12 - P22| on conditioned
// joint probabilities. For a single open path this equals the detector
// imbalance; with both paths open it measures how sharply each path maps to
// one region, so for perfect imaging it is 1 at any split.
inline double distinguishability_full(const PathProbabilities& P) {
  const double sum = P.p[0][0] + P.p[0][1] + P.p[1][0] + P.p[1][1];
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "joint path probabilities sum to " << sum << ", expected 1";
    fail(Errc::not_normalized, os.str());
  }
  return std::abs(P.p[0][0] - P.p[1][0]) + std::abs(P.p[0][1] - P.p[1][1]);
}

// ---------------------------------------------------------------------------
// Visibility
// ---------------------------------------------------------------------------

// Fringe visibility at a point where the two paths arrive with amplitudes a
// and b: as the relative phase is scanned, I ranges over (|a| +- |b|)^2, so
// V = (Imax - Imin)/(Imax + Imin) = 2|a||b| / (|a|^2 + |b|^2).
inline double visibility_closed_form(cdouble a, cdouble b) {
  const double ia = std::norm(a);
  const double ib = std::norm(b);
  const double tot = ia + ib;
  if (!(tot > 0.0))
    fail(Errc::dark_point, "no light at this point for any phase");
  return 2.0 * std::sqrt(ia) * std::sqrt(ib) / tot;
}

// Fringe visibility from an intensity-versus-phase scan. `intensity` is
// evaluated at n equally spaced phases over [0, 2*pi); the first Fourier
// harmonic is extracted exactly (the scan of a two-path point is a pure
// cosine, for which this is not a fit but an identity):
//
//   I(phi) = c0 + c1*cos(phi - phi0),  V = c1 / c0.
inline double visibility_sweep(const std::function<double(double)>& intensity,
                               int n_phases) {
  if (n_phases < 16) fail(Errc::out_of_range, "phase scan needs at least 16 samples");
  double c0 = 0.0, cs = 0.0, sn = 0.0;
  for (int k = 0; k < n_phases; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / n_phases;
    const double i = intensity(phi);
    if (!(i >= 0.0)) fail(Errc::out_of_range, "intensity must be >= 0");
    c0 += i;
    cs += i * std::cos(phi);
    sn += i * std::sin(phi);
  }
  c0 /= n_phases;
  const double c1 = 2.0 / n_phases * std::hypot(cs, sn);
  if (!(c0 > 0.0))
    fail(Errc::dark_point, "no light at this point for any phase");
  return c1 / c0;
}

// ---------------------------------------------------------------------------
// Duality
// ---------------------------------------------------------------------------

struct DualityContext {
  double t = 0.0;         // slit-A transmission probability
  double d = 0.0;         // wire thickness
  std::string setup;      // which bench produced the numbers
};

struct DualityResult {
  double distinguishability = 0.0;
  double visibility = 0.0;
  double sum_sq = 0.0;    // D^2 + V^2
  DualityContext context;
  double d_full = 0.0;    // path-resolved form, carried for reference
};

inline DualityResult duality(double d, double v, DualityContext ctx = {}) {
  const double slack = 1e-9;
  if (!(d >= 0.0 && d <= 1.0 + slack))
    fail(Errc::out_of_range, "distinguishability out of [0,1]");
  if (!(v >= 0.0 && v <= 1.0 + slack))
    fail(Errc::out_of_range, "visibility out of [0,1]");
  DualityResult r;
  r.distinguishability = d;
  r.visibility = v;
  r.sum_sq = d * d + v * v;
  r.context = std::move(ctx);
  return r;
}

}  // namespace afshar
