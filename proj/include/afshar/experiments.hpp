#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "analysis.hpp"
#include "elements.hpp"
#include "observables.hpp"
#include "propagator.hpp"

namespace afshar {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// One transverse grid: `points` samples over [-half_width, +half_width].
// half_width = 0 means "derive from the geometry" (see the *_grid functions).
struct GridSpec1D {
  double half_width = 0.0;
  std::size_t points = 0;
};

struct GridSettings {
  // The default source half-width is chosen so that with 8193 points every
  // default slit edge lands exactly on a sample (spacing 800 um / 8192; all
  // the default slit coordinates are multiples of 128 spacings). Rect-edge
  // quantization otherwise wobbles the observables at the 1e-3 level under
  // grid refinement.
  GridSpec1D source{0.4e-3, 8193};
  GridSpec1D interference{0.0, 16385};
  GridSpec1D detector{0.0, 4096};
  double detector_boundary = 0.0;
  int phase_samples = 128;
};

struct SweepSettings {
  std::vector<double> t_values;
  std::vector<double> d_values;
};

inline SweepSettings default_sweep() {
  SweepSettings s;
  for (int k = 0; k <= 20; ++k) s.t_values.push_back(0.05 * k);
  s.d_values = {0.0, 127e-6, 381e-6};
  return s;
}

struct ExperimentConfig {
  PhysicalParams physics;
  DoubleSlitSpec slits;
  WireGridSpec wires;
  double lens_alpha = 0.0;     // 0: derive the imaging value
  double lens_aperture = 0.0;  // 0: half the lens width b
  GridSettings grids;
  SweepSettings sweep = default_sweep();
  cdouble kernel_scale{1.0, 0.0};
};

inline double fringe_period(const ExperimentConfig& c) {
  return fringe_period(c.physics, c.slits.separation);
}

inline double magnification(const ExperimentConfig& c) {
  return c.physics.l2 / c.physics.l1;
}

inline double lens_width(const ExperimentConfig& c) {
  return resolved_lens_width(c.wires, c.physics, c.slits.separation);
}

inline LensSpec resolved_lens(const ExperimentConfig& c) {
  LensSpec L = imaging_lens(c.physics, 0.5 * lens_width(c));
  if (c.lens_alpha != 0.0) L.alpha = c.lens_alpha;
  if (c.lens_aperture > 0.0) L.aperture = c.lens_aperture;
  return L;
}

inline void validate(const ExperimentConfig& c) {
  if (!(c.physics.wavelength > 0.0))
    fail(Errc::validation_error, "wavelength must be positive");
  if (!(c.physics.l1 > 0.0 && c.physics.l2 > 0.0))
    fail(Errc::validation_error, "propagation distances must be positive");
  validate(c.slits);
  validate(c.wires);
  if (c.wires.thickness > 0.0 && !(c.wires.thickness < fringe_period(c))) {
    std::ostringstream os;
    os << "wire wider than fringe (d = " << c.wires.thickness
       << " m, period = " << fringe_period(c) << " m)";
    fail(Errc::validation_error, os.str());
  }
  if (c.lens_aperture < 0.0)
    fail(Errc::validation_error, "lens aperture must be >= 0");
  if (c.grids.source.points < 2 || c.grids.interference.points < 2 ||
      c.grids.detector.points < 2)
    fail(Errc::validation_error, "grids need at least 2 points");
  if (c.grids.phase_samples < 16)
    fail(Errc::validation_error, "phase_samples must be >= 16");
  if (!std::isfinite(c.grids.detector_boundary))
    fail(Errc::validation_error, "detector boundary must be finite");
  for (double t : c.sweep.t_values)
    if (!(t >= 0.0 && t <= 1.0)) fail(Errc::validation_error, "t out of [0,1]");
  for (double d : c.sweep.d_values) {
    if (!(d >= 0.0)) fail(Errc::validation_error, "wire thickness must be >= 0");
    if (d > 0.0 && !(d < fringe_period(c))) {
      std::ostringstream os;
      os << "wire wider than fringe (d = " << d << " m, period = "
         << fringe_period(c) << " m)";
      fail(Errc::validation_error, os.str());
    }
  }
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

inline Grid1D symmetric_grid(double half_width, std::size_t n) {
  return make_grid(-half_width, half_width, n);
}

inline Grid1D source_grid(const ExperimentConfig& c) {
  double h = c.grids.source.half_width;
  if (h <= 0.0) h = 3.0 * 0.5 * (c.slits.separation + c.slits.width);
  return symmetric_grid(h, c.grids.source.points);
}

// The interference plane (where the wire grid and the lens sit), l1 from the
// slits. With the lens in play the window only needs to cover the lens width
// plus a margin; without it, it must hold the whole free fringe field: the
// two-slit pattern is bounded by the single-slit envelope of half-width
// about lambda*l1/width around the slit projections.
inline Grid1D interference_grid(const ExperimentConfig& c, bool with_lens) {
  double h = c.grids.interference.half_width;
  if (h <= 0.0) {
    const double period = fringe_period(c);
    if (with_lens)
      h = 0.5 * lens_width(c) + 2.0 * period;
    else
      h = 0.5 * (c.slits.separation + c.slits.width) +
          c.physics.wavelength * c.physics.l1 / c.slits.width + 2.0 * period;
  }
  return symmetric_grid(h, c.grids.interference.points);
}

// The detector plane, l2 past the lens plane. With the lens, the slit images
// sit at -+ magnification*separation/2; the window covers them and the first
// few grating orders of the wire comb (spaced magnification*separation).
// Without the lens, it covers one central detector-plane fringe lobe.
inline Grid1D detector_grid(const ExperimentConfig& c, bool with_lens) {
  double h = c.grids.detector.half_width;
  if (h <= 0.0) {
    if (with_lens)
      h = 3.0 * magnification(c) * c.slits.separation;
    else
      h = 1.4 * c.physics.wavelength * (c.physics.l1 + c.physics.l2) /
          c.slits.separation;
  }
  return symmetric_grid(h, c.grids.detector.points);
}

// ---------------------------------------------------------------------------
// Per-path pipeline
// ---------------------------------------------------------------------------

// Complex weights giving the slit fields their configured transmissions and
// unit combined source power: slit A gets sqrt(t)*exp(i*(phase + extra)),
// slit B gets sqrt(1-t). `unit_power_*` are the source-plane powers of the
// unweighted aperture fields.
struct PathWeights {
  cdouble a;
  cdouble b;
};

inline PathWeights path_weights(const DoubleSlitSpec& s, double unit_power_a,
                                double unit_power_b, double extra_phase = 0.0) {
  const double t = s.transmission;
  const double tot = t * unit_power_a + (1.0 - t) * unit_power_b;
  if (!(tot > 0.0)) fail(Errc::zero_field, "both slits are dark");
  const double c = 1.0 / std::sqrt(tot);
  const double ph = s.phase + extra_phase;
  PathWeights w;
  w.a = std::sqrt(t) * c * cdouble{std::cos(ph), std::sin(ph)};
  w.b = cdouble{std::sqrt(1.0 - t) * c, 0.0};
  return w;
}

// Unit-amplitude per-path fields carried through the bench. Weights are not
// applied here: propagation is linear, so one pipeline pass per geometry
// serves every (t, phase) combination.
struct SetupFields {
  bool with_lens = false;
  double unit_power_a = 0.0;  // source-plane power of each aperture field
  double unit_power_b = 0.0;
  WaveField a_free, b_free;   // interference plane, before the mask
  WaveField a_int, b_int;     // interference plane, after the mask
  WaveField a_det, b_det;     // detector plane (empty when not requested)
  TransmissionMask mask;
  std::vector<double> wires;  // resolved wire centers (empty when d = 0)
};

inline SetupFields propagate_paths(const ExperimentConfig& c, bool with_lens,
                                   bool to_detector = true) {
  validate(c);
  SetupFields sf;
  sf.with_lens = with_lens;

  const Grid1D sg = source_grid(c);
  const WaveField ua = slit_aperture_field(sg, +0.5 * c.slits.separation, c.slits.width);
  const WaveField ub = slit_aperture_field(sg, -0.5 * c.slits.separation, c.slits.width);
  sf.unit_power_a = total_power(ua);
  sf.unit_power_b = total_power(ub);

  const Grid1D ig = interference_grid(c, with_lens);
  const KernelSpec hop1{c.physics.l1, c.physics.wavelength, c.kernel_scale};
  sf.a_free = propagate(ua, ig, hop1);
  sf.b_free = propagate(ub, ig, hop1);

  sf.wires = wire_centers(c.wires, c.physics, c.slits.separation);
  sf.mask = wire_grid_mask(c.wires, c.physics, c.slits.separation, ig);
  sf.a_int = apply_mask(sf.a_free, sf.mask);
  sf.b_int = apply_mask(sf.b_free, sf.mask);

  if (to_detector) {
    WaveField a_out = sf.a_int;
    WaveField b_out = sf.b_int;
    if (with_lens) {
      const LensSpec L = resolved_lens(c);
      a_out = apply_lens(a_out, L);
      b_out = apply_lens(b_out, L);
    }
    const Grid1D dg = detector_grid(c, with_lens);
    const KernelSpec hop2{c.physics.l2, c.physics.wavelength, c.kernel_scale};
    sf.a_det = propagate(a_out, dg, hop2);
    sf.b_det = propagate(b_out, dg, hop2);
  }
  return sf;
}

// ---------------------------------------------------------------------------
// Intensity profiles and peak labeling
// ---------------------------------------------------------------------------

// order 0: one of the two slit images (expected at -+ magnification*s/2;
// the lens inverts, so slit A images to negative x). order +-k: grating
// sidebands of the wire comb, offset by k image-spacings from the nearest
// image center.
struct LabeledPeak {
  double x = 0.0;
  double height = 0.0;
  int order = 0;
};

struct IntensityProfile {
  Grid1D grid;
  std::vector<double> intensity;
  std::vector<LabeledPeak> peaks;
};

inline IntensityProfile intensity_profile(const WaveField& f, double image_spacing) {
  IntensityProfile p;
  p.grid = f.grid;
  p.intensity.resize(f.amp.size());
  for (std::size_t k = 0; k < f.amp.size(); ++k) p.intensity[k] = std::norm(f.amp[k]);

  const double top = *std::max_element(p.intensity.begin(), p.intensity.end());
  const std::vector<Extremum> maxima =
      find_local_maxima(p.grid, p.intensity, 1e-9 * top);
  const double xa = -0.5 * image_spacing;
  const double xb = +0.5 * image_spacing;
  for (const Extremum& e : maxima) {
    const double main_x = (std::abs(e.x - xa) <= std::abs(e.x - xb)) ? xa : xb;
    LabeledPeak pk;
    pk.x = e.x;
    pk.height = e.value;
    pk.order = static_cast<int>(std::lround((e.x - main_x) / image_spacing));
    p.peaks.push_back(pk);
  }
  return p;
}

// Fraction of detected power outside the two image windows (half-width a
// quarter image spacing around each image center). Requires the profile to
// actually contain identifiable peaks somewhere in the windows.
inline double diffracted_fraction(const IntensityProfile& p, double image_spacing) {
  const double xa = -0.5 * image_spacing;
  const double xb = +0.5 * image_spacing;
  const double hw = 0.25 * image_spacing;

  bool any_main = false;
  for (const LabeledPeak& pk : p.peaks)
    if (pk.order == 0 &&
        (std::abs(pk.x - xa) <= hw || std::abs(pk.x - xb) <= hw))
      any_main = true;
  if (!any_main)
    fail(Errc::peaks_not_found, "no image peak inside either image window");

  double in = 0.0, tot = 0.0;
  for (std::size_t k = 0; k < p.intensity.size(); ++k) {
    const double x = p.grid.position(k);
    tot += p.intensity[k];
    if (std::abs(x - xa) <= hw || std::abs(x - xb) <= hw) in += p.intensity[k];
  }
  if (!(tot > 0.0)) fail(Errc::no_detections, "profile carries no power");
  return 1.0 - in / tot;
}

// Height of the wire-comb grating sidebands relative to the images. The
// comb period equals one fringe, which puts its diffraction orders exactly
// one image spacing apart, so the visible sidebands sit at +-1.5 and +-2.5
// image spacings from the axis (the +-0.5 positions coincide with the other
// image). Sampling narrow spots there, instead of everything outside the
// image windows, keeps the d-independent lens-aperture rings out of the
// reading.
inline double side_lobe_ratio(const IntensityProfile& p, double image_spacing) {
  const double hw_img = 0.25 * image_spacing;
  const double hw_spot = 0.125 * image_spacing;
  double inside = 0.0, spots = 0.0;
  for (std::size_t k = 0; k < p.intensity.size(); ++k) {
    const double x = p.grid.position(k);
    if (std::abs(std::abs(x) - 0.5 * image_spacing) <= hw_img)
      inside = std::max(inside, p.intensity[k]);
    else if (std::abs(std::abs(x) - 1.5 * image_spacing) <= hw_spot ||
             std::abs(std::abs(x) - 2.5 * image_spacing) <= hw_spot)
      spots = std::max(spots, p.intensity[k]);
  }
  if (!(inside > 0.0)) fail(Errc::peaks_not_found, "image windows are dark");
  return spots / inside;
}

// ---------------------------------------------------------------------------
// Bench runs
// ---------------------------------------------------------------------------

struct DistinguishabilityRun {
  WaveField path_a, path_b;   // weighted detector-plane fields
  PathProbabilities probabilities;
  double d_simple = 0.0;      // detector imbalance of the coherent total
  double d_full = 0.0;        // path-resolved form
  IntensityProfile profile;   // coherent detector intensity, peaks labeled
};

inline DistinguishabilityRun run_distinguishability(const ExperimentConfig& c) {
  const SetupFields sf = propagate_paths(c, true, true);
  const PathWeights w = path_weights(c.slits, sf.unit_power_a, sf.unit_power_b);
  DistinguishabilityRun r;
  r.path_a = scaled(sf.a_det, w.a);
  r.path_b = scaled(sf.b_det, w.b);
  const DetectorRegions regions{c.grids.detector_boundary};
  r.probabilities = path_probabilities(r.path_a, r.path_b, regions);
  r.d_full = distinguishability_full(r.probabilities);
  const WaveField tot = coherent_sum(r.path_a, r.path_b, 1.0, 1.0);
  const RegionPowers dp = detector_probabilities(tot, regions);
  r.d_simple = distinguishability_simple(dp.d1, dp.d2);
  r.profile = intensity_profile(tot, magnification(c) * c.slits.separation);
  return r;
}

// Per-sample fringe extremes of a two-path field as the relative phase is
// scanned: i_max = (|a|+|b|)^2, i_min = (|a|-|b|)^2. Samples dark for every
// phase are flagged instead of given a visibility.
struct EnvelopeProfile {
  Grid1D grid;
  std::vector<double> i_max, i_min, visibility;
  std::vector<char> dark;
};

inline EnvelopeProfile envelope_profile(const WaveField& a, const WaveField& b) {
  if (!same_grid(a.grid, b.grid))
    fail(Errc::grid_mismatch, "envelope of fields on different grids");
  EnvelopeProfile e;
  e.grid = a.grid;
  const std::size_t n = a.amp.size();
  e.i_max.resize(n);
  e.i_min.resize(n);
  e.visibility.resize(n);
  e.dark.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ma = std::abs(a.amp[k]);
    const double mb = std::abs(b.amp[k]);
    e.i_max[k] = (ma + mb) * (ma + mb);
    e.i_min[k] = (ma - mb) * (ma - mb);
    if (e.i_max[k] > 0.0) {
      e.visibility[k] = 2.0 * ma * mb / (ma * ma + mb * mb);
      e.dark[k] = 0;
    } else {
      e.visibility[k] = 0.0;
      e.dark[k] = 1;
    }
  }
  return e;
}

struct VisibilityRun {
  double visibility = 0.0;       // closed form at the reference point
  double reference_x = 0.0;
  std::size_t reference_index = 0;
  double visibility_no_grid = 0.0;  // same point, mask removed
  WaveField path_a_int, path_b_int;   // weighted, after the mask
  EnvelopeProfile interference;       // after the mask
  EnvelopeProfile interference_free;  // mask removed
  WaveField path_a_det, path_b_det;   // weighted detector fields, if requested
  EnvelopeProfile detector;           // empty grids when not requested
};

// The reference point is the global maximum of the no-grid pattern for a
// balanced, zero-phase source (overall scale does not move an argmax, so
// unit weights serve): a property of the geometry alone, so it stays put
// across a (t, d) sweep. For the symmetric default bench it is x = 0.
inline std::size_t reference_index(const SetupFields& sf) {
  const WaveField ref = coherent_sum(sf.a_free, sf.b_free, 1.0, 1.0);
  std::vector<double> i(ref.amp.size());
  for (std::size_t k = 0; k < i.size(); ++k) i[k] = std::norm(ref.amp[k]);
  return argmax_index(i);
}

inline VisibilityRun run_visibility(const ExperimentConfig& c,
                                    bool to_detector = false) {
  const SetupFields sf = propagate_paths(c, false, to_detector);
  const PathWeights w = path_weights(c.slits, sf.unit_power_a, sf.unit_power_b);
  VisibilityRun r;
  r.reference_index = reference_index(sf);
  r.reference_x = sf.a_free.grid.position(r.reference_index);
  r.path_a_int = scaled(sf.a_int, w.a);
  r.path_b_int = scaled(sf.b_int, w.b);
  r.visibility = visibility_closed_form(r.path_a_int.amp[r.reference_index],
                                        r.path_b_int.amp[r.reference_index]);
  r.visibility_no_grid = visibility_closed_form(
      w.a * sf.a_free.amp[r.reference_index],
      w.b * sf.b_free.amp[r.reference_index]);
  r.interference = envelope_profile(r.path_a_int, r.path_b_int);
  r.interference_free = envelope_profile(scaled(sf.a_free, w.a),
                                         scaled(sf.b_free, w.b));
  if (to_detector) {
    r.path_a_det = scaled(sf.a_det, w.a);
    r.path_b_det = scaled(sf.b_det, w.b);
    r.detector = envelope_profile(r.path_a_det, r.path_b_det);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Duality sweep
// ---------------------------------------------------------------------------

// D from the imaging bench (detector imbalance of the coherent total) and V
// from the open bench (closed form at the fixed reference point on the
// interference plane), for every (t, d) pair; d-major, t-minor ordering.
// The per-path fields are propagated once per d and recombined per t.
inline std::vector<DualityResult> sweep_duality(const ExperimentConfig& c) {
  validate(c);
  std::vector<DualityResult> out;
  out.reserve(c.sweep.d_values.size() * c.sweep.t_values.size());
  const DetectorRegions regions{c.grids.detector_boundary};

  for (double d : c.sweep.d_values) {
    ExperimentConfig cd = c;
    cd.wires.thickness = d;
    const SetupFields lensed = propagate_paths(cd, true, true);
    const SetupFields open = propagate_paths(cd, false, false);
    const std::size_t ref = reference_index(open);

    for (double t : c.sweep.t_values) {
      DoubleSlitSpec st = c.slits;
      st.transmission = t;
      const PathWeights w = path_weights(st, lensed.unit_power_a, lensed.unit_power_b);

      const WaveField tot = coherent_sum(lensed.a_det, lensed.b_det, w.a, w.b);
      const RegionPowers dp = detector_probabilities(tot, regions);
      const double D = distinguishability_simple(dp.d1, dp.d2);
      const PathProbabilities P = path_probabilities(
          scaled(lensed.a_det, w.a), scaled(lensed.b_det, w.b), regions);

      const double V = visibility_closed_form(w.a * open.a_int.amp[ref],
                                              w.b * open.b_int.amp[ref]);

      DualityResult r = duality(D, V, DualityContext{t, d, "bench"});
      r.d_full = distinguishability_full(P);
      out.push_back(r);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Flux through the wire grid
// ---------------------------------------------------------------------------

// Power just past the wire-grid plane divided by the same with the wires
// removed, for the configured source. Uses the open-bench window, which
// holds the whole central fringe field.
inline double flux_ratio(const ExperimentConfig& c) {
  validate(c);
  const SetupFields sf = propagate_paths(c, false, false);
  const PathWeights w = path_weights(c.slits, sf.unit_power_a, sf.unit_power_b);
  const WaveField masked = coherent_sum(sf.a_int, sf.b_int, w.a, w.b);
  const WaveField open = coherent_sum(sf.a_free, sf.b_free, w.a, w.b);
  const double p_open = total_power(open);
  if (!(p_open > 0.0)) fail(Errc::zero_field, "no power reaches the wire grid");
  return total_power(masked) / p_open;
}

}  // namespace afshar
