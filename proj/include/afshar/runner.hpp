#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "version.hpp"

namespace afshar {

enum class Figure { fig3, fig4, fig5, custom };

inline Figure figure_from_name(const std::string& name) {
  if (name == "fig3") return Figure::fig3;
  if (name == "fig4") return Figure::fig4;
  if (name == "fig5") return Figure::fig5;
  if (name == "custom") return Figure::custom;
  fail(Errc::validation_error, "unknown figure '" + name + "' (fig3|fig4|fig5|custom)");
}

namespace detail {

inline std::string fmt_row(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return std::string(buf);
}

inline std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return std::string(buf);
}

class OutputSet {
 public:
  OutputSet(const std::filesystem::path& dir, const ExperimentConfig& cfg,
            const std::string& figure)
      : dir_(dir), cfg_(cfg), figure_(figure) {
    std::filesystem::create_directories(dir_);
  }

  std::ofstream open(const std::string& name, bool with_header = true) {
    const std::filesystem::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);  // '\n' endings on every platform
    if (!out) fail(Errc::validation_error, "cannot write " + p.string());
    if (with_header) {
      out << "# afshar-duality " << version_string << "\n";
      out << "# figure: " << figure_ << "\n";
      std::istringstream cfg_lines(describe(cfg_));
      std::string line;
      while (std::getline(cfg_lines, line)) out << "#   " << line << "\n";
    }
    written_.push_back((dir_ / name).string());
    return out;
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  std::filesystem::path dir_;
  const ExperimentConfig& cfg_;
  std::string figure_;
  std::vector<std::string> written_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// fig3: detector intensity profiles over the (t, d) grid
// ---------------------------------------------------------------------------

inline std::vector<std::string> run_fig3(const ExperimentConfig& cfg,
                                         const std::string& out_dir) {
  validate(cfg);
  detail::OutputSet out(out_dir, cfg, "fig3");
  const std::vector<double> ts = {0.0, 0.5, 1.0};

  std::ofstream csv = out.open("fig3.csv");
  csv << "d,t,x,intensity\n";
  std::ofstream sum = out.open("summary.txt");
  sum << "detector profiles for t in {0, 0.5, 1} x d values\n\n";

  for (double d : cfg.sweep.d_values) {
    ExperimentConfig cd = cfg;
    cd.wires.thickness = d;
    const SetupFields sf = propagate_paths(cd, true, true);
    for (double t : ts) {
      DoubleSlitSpec st = cfg.slits;
      st.transmission = t;
      const PathWeights w = path_weights(st, sf.unit_power_a, sf.unit_power_b);
      const WaveField tot = coherent_sum(sf.a_det, sf.b_det, w.a, w.b);
      for (std::size_t k = 0; k < tot.amp.size(); ++k) {
        csv << detail::fmt_row(d) << ',' << detail::fmt_row(t) << ','
            << detail::fmt_row(tot.grid.position(k)) << ','
            << detail::fmt_row(std::norm(tot.amp[k])) << "\n";
      }
      const DetectorRegions regions{cfg.grids.detector_boundary};
      const RegionPowers dp = detector_probabilities(tot, regions);
      const IntensityProfile prof =
          intensity_profile(tot, magnification(cd) * cd.slits.separation);
      sum << "d = " << detail::fmt_short(d) << ", t = " << detail::fmt_short(t)
          << ": P(D1) = " << detail::fmt_short(dp.d1)
          << ", P(D2) = " << detail::fmt_short(dp.d2) << ", diffracted fraction = "
          << detail::fmt_short(
                 diffracted_fraction(prof, magnification(cd) * cd.slits.separation))
          << "\n";
    }
  }

  std::ofstream plot = out.open("fig3.gnuplot", false);
  plot << "set datafile separator ','\n"
          "set terminal pngcairo size 1200,900\n"
          "set output 'fig3.png'\n"
          "set multiplot layout " << cfg.sweep.d_values.size() << ",3\n"
          "set xlabel 'x (mm)'\n"
          "set ylabel 'intensity'\n";
  for (double d : cfg.sweep.d_values) {
    for (double t : ts) {
      char dv[40], tv[40];
      std::snprintf(dv, sizeof dv, "%.17g", d);
      std::snprintf(tv, sizeof tv, "%.17g", t);
      plot << "set title 'd = " << detail::fmt_short(d) << " m, t = "
           << detail::fmt_short(t) << "'\n"
           << "plot 'fig3.csv' using (column(1)==" << dv << " && column(2)==" << tv
           << " ? column(3)*1e3 : 1/0):(column(4)) with lines notitle\n";
    }
  }
  plot << "unset multiplot\n";
  return out.written();
}

// ---------------------------------------------------------------------------
// fig4: fringe envelopes with and without the wire grid, plus phase traces
// ---------------------------------------------------------------------------

inline std::vector<std::string> run_fig4(const ExperimentConfig& cfg,
                                         const std::string& out_dir) {
  validate(cfg);
  detail::OutputSet out(out_dir, cfg, "fig4");
  const VisibilityRun r = run_visibility(cfg, true);
  const TransmissionMask mask = wire_grid_mask(
      cfg.wires, cfg.physics, cfg.slits.separation, interference_grid(cfg, false));

  std::ofstream csv = out.open("fig4.csv");
  csv << "plane,x,i_max,i_min,visibility,dark,mask\n";
  auto dump = [&csv](const std::string& plane, const EnvelopeProfile& e,
                     const std::vector<double>* mask_t) {
    for (std::size_t k = 0; k < e.i_max.size(); ++k) {
      csv << plane << ',' << detail::fmt_row(e.grid.position(k)) << ','
          << detail::fmt_row(e.i_max[k]) << ',' << detail::fmt_row(e.i_min[k])
          << ',' << detail::fmt_row(e.visibility[k]) << ','
          << int(e.dark[k]) << ',' << (mask_t ? detail::fmt_row((*mask_t)[k]) : "1")
          << "\n";
    }
  };
  dump("interference", r.interference, &mask.t);
  dump("interference_free", r.interference_free, nullptr);
  dump("detector", r.detector, nullptr);

  // Phase traces: intensity versus slit-A phase at the reference point and,
  // when wires are present, at a blocked sample (dark for every phase).
  std::ofstream ph = out.open("fig4_phase.csv");
  ph << "point,x,phi,intensity\n";
  const SetupFields sf = propagate_paths(cfg, false, false);
  auto trace = [&](const std::string& label, std::size_t k) {
    for (int i = 0; i < cfg.grids.phase_samples; ++i) {
      const double phi = 2.0 * std::numbers::pi * i / cfg.grids.phase_samples;
      DoubleSlitSpec st = cfg.slits;
      st.phase = phi;
      const PathWeights w = path_weights(st, sf.unit_power_a, sf.unit_power_b);
      const double inten = std::norm(w.a * sf.a_int.amp[k] + w.b * sf.b_int.amp[k]);
      ph << label << ',' << detail::fmt_row(sf.a_int.grid.position(k)) << ','
         << detail::fmt_row(phi) << ',' << detail::fmt_row(inten) << "\n";
    }
  };
  trace("reference", r.reference_index);
  if (!sf.wires.empty()) {
    // middle wire's center sample
    const double cx = sf.wires[sf.wires.size() / 2];
    std::size_t k_wire = 0;
    double best = 1e300;
    for (std::size_t k = 0; k < mask.grid.n; ++k) {
      const double dist = std::abs(mask.grid.position(k) - cx);
      if (dist < best) { best = dist; k_wire = k; }
    }
    trace("wire", k_wire);
  }

  std::ofstream sum = out.open("summary.txt");
  sum << "visibility at reference x = " << detail::fmt_short(r.reference_x)
      << ": " << detail::fmt_short(r.visibility) << "\n"
      << "visibility there without the grid: "
      << detail::fmt_short(r.visibility_no_grid) << "\n"
      << "blocked interference samples: "
      << std::count(r.interference.dark.begin(), r.interference.dark.end(), char(1))
      << " of " << r.interference.dark.size() << "\n"
      << "flux ratio through the grid: " << detail::fmt_short(flux_ratio(cfg)) << "\n";

  std::ofstream plot = out.open("fig4.gnuplot", false);
  plot << "set datafile separator ','\n"
          "set terminal pngcairo size 1200,800\n"
          "set output 'fig4.png'\n"
          "set multiplot layout 2,1\n"
          "set xlabel 'x (mm)'\n"
          "set ylabel 'intensity'\n"
          "set title 'interference plane envelope (with wires)'\n"
          "plot 'fig4.csv' using (strcol(1) eq 'interference' ? column(2)*1e3 : 1/0):(column(3)) "
          "with lines title 'I_{max}', \\\n"
          "     'fig4.csv' using (strcol(1) eq 'interference' ? column(2)*1e3 : 1/0):(column(4)) "
          "with lines title 'I_{min}'\n"
          "set title 'detector plane envelope'\n"
          "plot 'fig4.csv' using (strcol(1) eq 'detector' ? column(2)*1e3 : 1/0):(column(3)) "
          "with lines title 'I_{max}', \\\n"
          "     'fig4.csv' using (strcol(1) eq 'detector' ? column(2)*1e3 : 1/0):(column(4)) "
          "with lines title 'I_{min}'\n"
          "unset multiplot\n";
  return out.written();
}

// ---------------------------------------------------------------------------
// fig5: the duality sweep
// ---------------------------------------------------------------------------

inline std::vector<std::string> run_fig5(const ExperimentConfig& cfg,
                                         const std::string& out_dir) {
  validate(cfg);
  detail::OutputSet out(out_dir, cfg, "fig5");
  const std::vector<DualityResult> rows = sweep_duality(cfg);

  std::ofstream csv = out.open("fig5.csv");
  csv << "d,t,distinguishability,visibility,sum_sq,d_full\n";
  double worst = 0.0;
  for (const DualityResult& r : rows) {
    csv << detail::fmt_row(r.context.d) << ',' << detail::fmt_row(r.context.t) << ','
        << detail::fmt_row(r.distinguishability) << ','
        << detail::fmt_row(r.visibility) << ',' << detail::fmt_row(r.sum_sq) << ','
        << detail::fmt_row(r.d_full) << "\n";
    worst = std::max(worst, r.sum_sq);
  }

  std::ofstream sum = out.open("summary.txt");
  sum << rows.size() << " sweep points, max D^2 + V^2 = " << detail::fmt_short(worst)
      << "\n";

  std::ofstream plot = out.open("fig5.gnuplot", false);
  plot << "set datafile separator ','\n"
          "set terminal pngcairo size 900,600\n"
          "set output 'fig5.png'\n"
          "set xlabel 't'\n"
          "set ylabel 'D^2 + V^2'\n"
          "set yrange [0:1.1]\n"
          "plot 1 with lines dashtype 2 title 'bound', \\\n";
  for (std::size_t i = 0; i < cfg.sweep.d_values.size(); ++i) {
    char dv[40];
    std::snprintf(dv, sizeof dv, "%.17g", cfg.sweep.d_values[i]);
    plot << "     'fig5.csv' using (column(1)==" << dv
         << " ? column(2) : 1/0):(column(5)) with linespoints title 'd = "
         << detail::fmt_short(cfg.sweep.d_values[i]) << " m'";
    plot << (i + 1 < cfg.sweep.d_values.size() ? ", \\\n" : "\n");
  }
  return out.written();
}

// ---------------------------------------------------------------------------
// custom: one full (t, d) point with per-path detail
// ---------------------------------------------------------------------------

inline std::vector<std::string> run_custom(const ExperimentConfig& cfg,
                                           const std::string& out_dir) {
  validate(cfg);
  detail::OutputSet out(out_dir, cfg, "custom");
  const DistinguishabilityRun dr = run_distinguishability(cfg);
  const VisibilityRun vr = run_visibility(cfg, false);

  std::ofstream det = out.open("custom_detector.csv");
  det << "x,i_path_a,i_path_b,i_total\n";
  for (std::size_t k = 0; k < dr.path_a.amp.size(); ++k) {
    const cdouble tot = dr.path_a.amp[k] + dr.path_b.amp[k];
    det << detail::fmt_row(dr.path_a.grid.position(k)) << ','
        << detail::fmt_row(std::norm(dr.path_a.amp[k])) << ','
        << detail::fmt_row(std::norm(dr.path_b.amp[k])) << ','
        << detail::fmt_row(std::norm(tot)) << "\n";
  }

  std::ofstream inter = out.open("custom_interference.csv");
  inter << "x,i_max,i_min,visibility,dark\n";
  const EnvelopeProfile& e = vr.interference;
  for (std::size_t k = 0; k < e.i_max.size(); ++k) {
    inter << detail::fmt_row(e.grid.position(k)) << ','
          << detail::fmt_row(e.i_max[k]) << ',' << detail::fmt_row(e.i_min[k]) << ','
          << detail::fmt_row(e.visibility[k]) << ',' << int(e.dark[k]) << "\n";
  }

  std::ofstream peaks = out.open("custom_peaks.csv");
  peaks << "x,height,order\n";
  for (const LabeledPeak& p : dr.profile.peaks)
    peaks << detail::fmt_row(p.x) << ',' << detail::fmt_row(p.height) << ','
          << p.order << "\n";

  std::ofstream sum = out.open("summary.txt");
  sum << "D (detector imbalance) = " << detail::fmt_short(dr.d_simple) << "\n"
      << "D (path resolved) = " << detail::fmt_row(dr.d_full) << "\n"
      << "V (reference point) = " << detail::fmt_short(vr.visibility) << "\n"
      << "D^2 + V^2 = "
      << detail::fmt_short(dr.d_simple * dr.d_simple + vr.visibility * vr.visibility)
      << "\n"
      << "joint path probabilities (rows D1,D2; columns path A,B):\n"
      << "  " << detail::fmt_short(dr.probabilities.p[0][0]) << "  "
      << detail::fmt_short(dr.probabilities.p[0][1]) << "\n"
      << "  " << detail::fmt_short(dr.probabilities.p[1][0]) << "  "
      << detail::fmt_short(dr.probabilities.p[1][1]) << "\n";
  return out.written();
}

inline std::vector<std::string> run_figure(const ExperimentConfig& cfg, Figure fig,
                                           const std::string& out_dir) {
  switch (fig) {
    case Figure::fig3: return run_fig3(cfg, out_dir);
    case Figure::fig4: return run_fig4(cfg, out_dir);
    case Figure::fig5: return run_fig5(cfg, out_dir);
    case Figure::custom: return run_custom(cfg, out_dir);
  }
  fail(Errc::validation_error, "unhandled figure");
}

}  // namespace afshar
