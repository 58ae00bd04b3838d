#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace afshar {

// INI-style configuration:
//
//   [physics]  wavelength, l1, l2
//   [slits]    t, phase, width, separation
//   [grid]     source_points, source_halfwidth, interference_points,
//              interference_halfwidth, detector_points, detector_halfwidth,
//              detector_boundary, phase_samples
//   [wires]    d, n, b, align_to_minima
//   [lens]     alpha, aperture
//   [sweep]    t_values, d_values
//
// Every key is optional; omitted keys keep their defaults (0 means "derive
// from the geometry" for the halfwidths, lens values and wire b). Lists are
// comma separated and accept start:step:stop ranges, e.g. 0:0.05:1.
// '#' or ';' starts a comment. Unknown sections or keys are rejected.

namespace detail {

inline const std::map<std::string, std::set<std::string>>& config_schema() {
  static const std::map<std::string, std::set<std::string>> schema = {
      {"physics", {"wavelength", "l1", "l2"}},
      {"slits", {"t", "phase", "width", "separation"}},
      {"grid",
       {"source_points", "source_halfwidth", "interference_points",
        "interference_halfwidth", "detector_points", "detector_halfwidth",
        "detector_boundary", "phase_samples"}},
      {"wires", {"d", "n", "b", "align_to_minima"}},
      {"lens", {"alpha", "aperture"}},
      {"sweep", {"t_values", "d_values"}},
  };
  return schema;
}

struct ParsePos {
  std::string source;
  int line = 0;
  int col = 0;
};

[[noreturn]] inline void parse_fail(const ParsePos& pos, const std::string& msg) {
  std::ostringstream os;
  os << pos.source << ":" << pos.line << ":" << pos.col << ": " << msg;
  fail(Errc::parse_error, os.str());
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& s, const ParsePos& pos) {
  const std::string v = trim(s);
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || p != last)
    parse_fail(pos, "expected a number, got '" + v + "'");
  return out;
}

inline long long parse_integer(const std::string& s, const ParsePos& pos) {
  const std::string v = trim(s);
  long long out = 0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || p != last)
    parse_fail(pos, "expected an integer, got '" + v + "'");
  return out;
}

inline bool parse_bool(const std::string& s, const ParsePos& pos) {
  const std::string v = trim(s);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  parse_fail(pos, "expected true/false/1/0, got '" + v + "'");
}

// Comma-separated doubles; an item of the form a:step:b expands to the
// inclusive arithmetic range.
inline std::vector<double> parse_list(const std::string& s, const ParsePos& pos) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) parse_fail(pos, "empty list item");
    const std::size_t c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_double(item, pos));
      continue;
    }
    const std::size_t c2 = item.find(':', c1 + 1);
    if (c2 == std::string::npos)
      parse_fail(pos, "range must be start:step:stop, got '" + item + "'");
    const double a = parse_double(item.substr(0, c1), pos);
    const double step = parse_double(item.substr(c1 + 1, c2 - c1 - 1), pos);
    const double b = parse_double(item.substr(c2 + 1), pos);
    if (!(step > 0.0)) parse_fail(pos, "range step must be positive");
    if (b < a) parse_fail(pos, "range stop is below its start");
    const double eps = step * 1e-9;
    for (int k = 0;; ++k) {
      const double v = a + k * step;
      if (v > b + eps) break;
      out.push_back(std::min(v, b));
    }
  }
  if (out.empty()) parse_fail(pos, "list is empty");
  return out;
}

inline std::size_t parse_points(const std::string& s, const ParsePos& pos) {
  const long long v = parse_integer(s, pos);
  if (v < 2) parse_fail(pos, "point counts must be >= 2");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in, const std::string& source_name) {
  using namespace detail;
  ExperimentConfig cfg;
  std::string section;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find_first_of("#;");
    std::string body = (hash == std::string::npos) ? line : line.substr(0, hash);
    const std::string content = trim(body);
    if (content.empty()) continue;
    const int col = static_cast<int>(body.find_first_not_of(" \t\r")) + 1;
    ParsePos pos{source_name, line_no, col};

    if (content.front() == '[') {
      if (content.back() != ']') parse_fail(pos, "unterminated section header");
      section = trim(content.substr(1, content.size() - 2));
      if (config_schema().find(section) == config_schema().end())
        parse_fail(pos, "unknown section [" + section + "]");
      continue;
    }

    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) parse_fail(pos, "expected key = value");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) parse_fail(pos, "empty key");
    if (value.empty()) parse_fail(pos, "empty value for '" + key + "'");
    if (section.empty()) parse_fail(pos, "key '" + key + "' appears before any section");
    const std::set<std::string>& keys = config_schema().at(section);
    if (keys.find(key) == keys.end())
      parse_fail(pos, "unknown key '" + key + "' in section [" + section + "]");

    if (section == "physics") {
      if (key == "wavelength") cfg.physics.wavelength = parse_double(value, pos);
      else if (key == "l1") cfg.physics.l1 = parse_double(value, pos);
      else cfg.physics.l2 = parse_double(value, pos);
    } else if (section == "slits") {
      if (key == "t") cfg.slits.transmission = parse_double(value, pos);
      else if (key == "phase") cfg.slits.phase = parse_double(value, pos);
      else if (key == "width") cfg.slits.width = parse_double(value, pos);
      else cfg.slits.separation = parse_double(value, pos);
    } else if (section == "grid") {
      if (key == "source_points") cfg.grids.source.points = parse_points(value, pos);
      else if (key == "source_halfwidth") cfg.grids.source.half_width = parse_double(value, pos);
      else if (key == "interference_points") cfg.grids.interference.points = parse_points(value, pos);
      else if (key == "interference_halfwidth") cfg.grids.interference.half_width = parse_double(value, pos);
      else if (key == "detector_points") cfg.grids.detector.points = parse_points(value, pos);
      else if (key == "detector_halfwidth") cfg.grids.detector.half_width = parse_double(value, pos);
      else if (key == "detector_boundary") cfg.grids.detector_boundary = parse_double(value, pos);
      else cfg.grids.phase_samples = static_cast<int>(parse_integer(value, pos));
    } else if (section == "wires") {
      if (key == "d") cfg.wires.thickness = parse_double(value, pos);
      else if (key == "n") cfg.wires.count_half = static_cast<int>(parse_integer(value, pos));
      else if (key == "b") cfg.wires.lens_width = parse_double(value, pos);
      else cfg.wires.align_to_minima = parse_bool(value, pos);
    } else if (section == "lens") {
      if (key == "alpha") cfg.lens_alpha = parse_double(value, pos);
      else cfg.lens_aperture = parse_double(value, pos);
    } else {  // sweep
      if (key == "t_values") cfg.sweep.t_values = parse_list(value, pos);
      else cfg.sweep.d_values = parse_list(value, pos);
    }
  }

  validate(cfg);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, path + ": cannot open config file");
  return parse_config(in, path);
}

// Canonical one-value-per-line rendering of the resolved configuration.
// Deterministic, so output files that embed it are byte-stable.
inline std::string describe(const ExperimentConfig& c) {
  auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "wavelength = " << num(c.physics.wavelength) << "\n"
     << "l1 = " << num(c.physics.l1) << "\n"
     << "l2 = " << num(c.physics.l2) << "\n"
     << "slit t = " << num(c.slits.transmission) << "\n"
     << "slit phase = " << num(c.slits.phase) << "\n"
     << "slit width = " << num(c.slits.width) << "\n"
     << "slit separation = " << num(c.slits.separation) << "\n"
     << "fringe period = " << num(fringe_period(c)) << "\n"
     << "magnification = " << num(magnification(c)) << "\n"
     << "wire d = " << num(c.wires.thickness) << "\n"
     << "wire n = " << c.wires.count_half << "\n"
     << "lens width b = " << num(lens_width(c)) << "\n"
     << "align_to_minima = " << (c.wires.align_to_minima ? "true" : "false") << "\n"
     << "lens alpha = " << num(resolved_lens(c).alpha) << "\n"
     << "lens aperture = " << num(resolved_lens(c).aperture) << "\n"
     << "source grid = " << c.grids.source.points << " over +-"
     << num(source_grid(c).half_extent()) << "\n"
     << "interference grid = " << c.grids.interference.points << " over +-"
     << num(interference_grid(c, true).half_extent()) << " (lens) / +-"
     << num(interference_grid(c, false).half_extent()) << " (open)\n"
     << "detector grid = " << c.grids.detector.points << " over +-"
     << num(detector_grid(c, true).half_extent()) << " (lens) / +-"
     << num(detector_grid(c, false).half_extent()) << " (open)\n"
     << "detector boundary = " << num(c.grids.detector_boundary) << "\n"
     << "phase samples = " << c.grids.phase_samples << "\n";
  return os.str();
}

}  // namespace afshar
