// Command-line driver for the pole-free solution y(x, T) of the fourth-order
// ODE  x = T y - [ y^3/6 + (y_x^2 + 2 y y_xx)/24 + y_xxxx/240 ].
//
// Modes
//   asym      leading law y ~ (1/2) z0(x,T) |x|^{1/3} plus the cubic root z0
//   ode       collocation BVP solve on [-L, L]; per-node or sampled rows
//   rh        steepest-descent (residual jump problem) evaluation per point
//   compare   all three engines side by side with absolute differences and
//             fitted decay slopes of the differences
//   reg-scan  sign scan of r^{-7/2} Re g(z0 + r e^{i phi}) over (phi, r)
//
// Contract
//   - Inputs come from flags or from a strict JSON config file (--config);
//     flags override the file. Unknown keys are errors naming the key.
//   - x = 0 is accepted only in ode mode (the asymptotic engines scale by
//     powers of |x|).
//   - Output (CSV, JSON, or SVG) is assembled in memory and written once, so
//     reruns with the same configuration are byte-identical regardless of
//     --jobs. Floating-point fields use 17 significant digits.
//   - Every run records the full effective configuration (defaults included)
//     in the output metadata header.
//   - Failures exit nonzero after printing a one-line JSON error record to
//     stdout; exit code 2 marks configuration errors, 1 engine errors.
//   - PI2_LOG=1|2 enables progress logging on stderr.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pi2/asymptotics.hpp"
#include "pi2/diag.hpp"
#include "pi2/fmt.hpp"
#include "pi2/lax.hpp"
#include "pi2/ode.hpp"
#include "pi2/rh_contour.hpp"
#include "pi2/rh_solve.hpp"

namespace {

using nlohmann::ordered_json;
using pi2::fmt17;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Configuration.

struct RunConfig {
  std::string mode;
  std::vector<double> x_values;
  std::string x_range;  // "lo:hi:count"; expanded into x_values by validate()
  std::vector<double> T_values{0.0};
  double ode_window = 20.0;   // BVP half-width L
  double ode_density = 16.0;  // BVP mesh nodes per unit x
  double newton_tol = 1e-10;
  int rh_order = 2;      // Neumann truncation order
  bool rh_dense = false; // dense solve of the jump system
  double rh_delta = 1.0; // disk radius around z0
  int jobs = 1;
  std::string format = "csv";  // csv | json | svg
  std::string output;          // empty = stdout
};

std::vector<double> parse_x_range(const std::string& spec) {
  const auto bad = [&](const std::string& why) {
    return ConfigError("bad x-range \"" + spec + "\": " + why +
                       " (expected lo:hi:count)");
  };
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw bad("needs exactly two ':'");
  double lo = 0.0, hi = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    throw bad("not numeric");
  }
  if (count < 1 || count > 1000000) throw bad("count out of range [1, 1e6]");
  if (count == 1 && lo != hi) throw bad("count 1 needs lo == hi");
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i)
    xs[static_cast<std::size_t>(i)] =
        count == 1 ? lo
                   : lo + static_cast<double>(i) * (hi - lo) /
                              static_cast<double>(count - 1);
  return xs;
}

std::vector<double> number_list(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();  // throws type_error otherwise
}

void apply_json_config(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " +
                      std::string(e.what()));
  }
  if (!j.is_object())
    throw ConfigError("config file " + path + ": top level must be an object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const nlohmann::json& v = item.value();
    try {
      if (key == "mode") {
        cfg.mode = v.get<std::string>();
      } else if (key == "x") {
        cfg.x_values = number_list(v);
      } else if (key == "x_range") {
        cfg.x_range = v.get<std::string>();
      } else if (key == "T") {
        cfg.T_values = number_list(v);
      } else if (key == "ode_window") {
        cfg.ode_window = v.get<double>();
      } else if (key == "ode_density") {
        cfg.ode_density = v.get<double>();
      } else if (key == "newton_tol") {
        cfg.newton_tol = v.get<double>();
      } else if (key == "rh_order") {
        cfg.rh_order = v.get<int>();
      } else if (key == "rh_dense") {
        cfg.rh_dense = v.get<bool>();
      } else if (key == "rh_delta") {
        cfg.rh_delta = v.get<double>();
      } else if (key == "jobs") {
        cfg.jobs = v.get<int>();
      } else if (key == "format") {
        cfg.format = v.get<std::string>();
      } else if (key == "output") {
        cfg.output = v.get<std::string>();
      } else {
        throw ConfigError("config file " + path + ": unknown key \"" + key +
                          "\"");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file " + path + ", key \"" + key +
                        "\": " + std::string(e.what()));
    }
  }
}

bool is_one_of(const std::string& s, std::initializer_list<const char*> opts) {
  for (const char* o : opts)
    if (s == o) return true;
  return false;
}

// Expands x_range, then checks every cross-field invariant. Throws
// ConfigError with the offending key in the message.
void validate(RunConfig& cfg) {
  if (cfg.mode.empty())
    throw ConfigError("mode is required (--mode or config key \"mode\")");
  if (!is_one_of(cfg.mode, {"asym", "ode", "rh", "compare", "reg-scan"}))
    throw ConfigError("unknown mode \"" + cfg.mode +
                      "\" (expected asym|ode|rh|compare|reg-scan)");
  if (!is_one_of(cfg.format, {"csv", "json", "svg"}))
    throw ConfigError("unknown format \"" + cfg.format +
                      "\" (expected csv|json|svg)");
  if (!cfg.x_range.empty()) {
    if (!cfg.x_values.empty())
      throw ConfigError("give either x or x_range, not both");
    cfg.x_values = parse_x_range(cfg.x_range);
  }
  if (cfg.T_values.empty()) throw ConfigError("T must list at least one value");
  for (double T : cfg.T_values)
    if (!std::isfinite(T)) throw ConfigError("T values must be finite");
  for (double x : cfg.x_values)
    if (!std::isfinite(x)) throw ConfigError("x values must be finite");
  if (cfg.jobs < 1 || cfg.jobs > 256)
    throw ConfigError("jobs out of range [1, 256]");
  if (cfg.rh_order < 1 || cfg.rh_order > 12)
    throw ConfigError("rh_order out of range [1, 12]");
  if (!(cfg.rh_delta > 0.0) || cfg.rh_delta > 2.0)
    throw ConfigError("rh_delta out of range (0, 2]");
  if (!(cfg.ode_window > 0.0) || cfg.ode_window > 200.0)
    throw ConfigError("ode_window out of range (0, 200]");
  if (!(cfg.ode_density >= 2.0) || cfg.ode_density > 512.0)
    throw ConfigError("ode_density out of range [2, 512]");
  if (!(cfg.newton_tol > 0.0))
    throw ConfigError("newton_tol must be positive");

  if (cfg.mode != "ode") {
    for (double x : cfg.x_values)
      if (x == 0.0)
        throw ConfigError(
            "x = 0 is allowed only in ode mode (the asymptotic engines scale "
            "by powers of |x|)");
  }
  if (cfg.mode == "ode") {
    for (double x : cfg.x_values)
      if (std::abs(x) > cfg.ode_window)
        throw ConfigError("ode sample x=" + fmt17(x) +
                          " lies outside the window [-L, L], L=" +
                          fmt17(cfg.ode_window));
  } else if (cfg.mode == "reg-scan") {
    if (cfg.x_values.size() != 1)
      throw ConfigError("reg-scan needs exactly one x");
    if (cfg.T_values.size() != 1)
      throw ConfigError("reg-scan needs exactly one T");
  } else if (cfg.x_values.empty()) {
    throw ConfigError("mode " + cfg.mode +
                      " needs at least one x (--x or --x-range)");
  }
  if (cfg.mode == "rh" && cfg.format == "svg")
    throw ConfigError("svg output is not available for mode rh");
}

std::string join17(const std::vector<double>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ',';
    s += fmt17(vs[i]);
  }
  return s;
}

// Effective configuration, defaults included, in a fixed key order. Used
// verbatim for CSV/SVG metadata; the JSON writer keeps native types. jobs
// and output are deliberately absent: they do not affect the computed
// values, so the same inputs give byte-identical bytes at any thread count
// and whatever the destination path.
std::vector<std::pair<std::string, std::string>> config_kv(
    const RunConfig& c) {
  return {{"mode", c.mode},
          {"x", join17(c.x_values)},
          {"x_range", c.x_range},
          {"T", join17(c.T_values)},
          {"ode_window", fmt17(c.ode_window)},
          {"ode_density", fmt17(c.ode_density)},
          {"newton_tol", fmt17(c.newton_tol)},
          {"rh_order", std::to_string(c.rh_order)},
          {"rh_dense", c.rh_dense ? "true" : "false"},
          {"rh_delta", fmt17(c.rh_delta)},
          {"format", c.format}};
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["mode"] = c.mode;
  j["x"] = c.x_values;
  j["x_range"] = c.x_range;
  j["T"] = c.T_values;
  j["ode_window"] = c.ode_window;
  j["ode_density"] = c.ode_density;
  j["newton_tol"] = c.newton_tol;
  j["rh_order"] = c.rh_order;
  j["rh_dense"] = c.rh_dense;
  j["rh_delta"] = c.rh_delta;
  j["format"] = c.format;
  return j;
}

// ---------------------------------------------------------------------------
// Tabular results. Missing cells (engine out of domain) stay empty in CSV and
// null in JSON. "breaks" are comment lines placed before a given row (used
// for per-T blocks in ode mode); "notes" trail the rows (fitted slopes,
// scan summaries).

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::pair<std::size_t, std::string>> breaks;
  std::vector<std::string> notes;
};

std::string to_csv(const RunConfig& cfg, const Table& t) {
  std::ostringstream os;
  for (const auto& [k, v] : config_kv(cfg)) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    os << (i ? "," : "") << t.columns[i];
  os << '\n';
  std::size_t brk = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    while (brk < t.breaks.size() && t.breaks[brk].first == r)
      os << "# " << t.breaks[brk++].second << '\n';
    const auto& row = t.rows[r];
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << fmt17(*row[i]);
    }
    os << '\n';
  }
  while (brk < t.breaks.size()) os << "# " << t.breaks[brk++].second << '\n';
  for (const auto& n : t.notes) os << "# " << n << '\n';
  return os.str();
}

std::string to_json_table(const RunConfig& cfg, const Table& t) {
  ordered_json j;
  j["config"] = config_json(cfg);
  j["columns"] = t.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row)
      r.push_back(cell ? ordered_json(*cell) : ordered_json(nullptr));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  if (!t.breaks.empty()) {
    ordered_json bs = ordered_json::array();
    for (const auto& [r, text] : t.breaks)
      bs.push_back(ordered_json{{"row", r}, {"text", text}});
    j["breaks"] = std::move(bs);
  }
  j["notes"] = t.notes;
  return j.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// Minimal self-contained SVG writers (white background, framed plot area,
// tick labels; no external resources). Coordinates use two decimals so the
// output is byte-stable.

std::string svg2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string svg_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

constexpr double kSvgW = 800.0, kSvgH = 500.0, kSvgM = 70.0;

void svg_header(std::ostringstream& os, const RunConfig& cfg) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSvgW
     << "\" height=\"" << kSvgH << "\" viewBox=\"0 0 " << kSvgW << ' '
     << kSvgH << "\">\n";
  os << "<!--";
  for (const auto& [k, v] : config_kv(cfg)) os << ' ' << k << '=' << v << ';';
  os << " -->\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kSvgW << "\" height=\"" << kSvgH
     << "\" fill=\"#ffffff\"/>\n";
}

void svg_frame(std::ostringstream& os) {
  os << "<rect x=\"" << kSvgM << "\" y=\"" << kSvgM << "\" width=\""
     << kSvgW - 2 * kSvgM << "\" height=\"" << kSvgH - 2 * kSvgM
     << "\" fill=\"none\" stroke=\"#000000\"/>\n";
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;  // (x, y), finite only
};

std::string svg_profile(const RunConfig& cfg, const std::vector<Series>& ss,
                        const std::string& xlabel,
                        const std::string& ylabel) {
  static const char* kColors[] = {"#1b1b1b", "#c0392b", "#2474b5",
                                  "#2e8b57", "#8e44ad", "#b8860b"};
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const auto& s : ss)
    for (const auto& [x, y] : s.pts) {
      if (!any) {
        xmin = xmax = x;
        ymin = ymax = y;
        any = true;
      }
      xmin = std::min(xmin, x), xmax = std::max(xmax, x);
      ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    }
  if (!any) xmin = ymin = 0, xmax = ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double xpad = 0.05 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
  xmin -= xpad, xmax += xpad, ymin -= ypad, ymax += ypad;
  const double W = kSvgW - 2 * kSvgM, H = kSvgH - 2 * kSvgM;
  const auto X = [&](double x) { return kSvgM + (x - xmin) / (xmax - xmin) * W; };
  const auto Y = [&](double y) { return kSvgM + (ymax - y) / (ymax - ymin) * H; };

  std::ostringstream os;
  svg_header(os, cfg);
  for (int i = 0; i <= 4; ++i) {
    const double tx = xmin + i * (xmax - xmin) / 4;
    const double ty = ymin + i * (ymax - ymin) / 4;
    os << "<line x1=\"" << svg2(X(tx)) << "\" y1=\"" << kSvgM << "\" x2=\""
       << svg2(X(tx)) << "\" y2=\"" << kSvgH - kSvgM
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<line x1=\"" << kSvgM << "\" y1=\"" << svg2(Y(ty)) << "\" x2=\""
       << kSvgW - kSvgM << "\" y2=\"" << svg2(Y(ty))
       << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << svg2(X(tx)) << "\" y=\"" << kSvgH - kSvgM + 18
       << "\" font-family=\"monospace\" font-size=\"11\" "
          "text-anchor=\"middle\">"
       << svg_g(tx) << "</text>\n";
    os << "<text x=\"" << kSvgM - 6 << "\" y=\"" << svg2(Y(ty) + 4)
       << "\" font-family=\"monospace\" font-size=\"11\" "
          "text-anchor=\"end\">"
       << svg_g(ty) << "</text>\n";
  }
  svg_frame(os);
  for (std::size_t si = 0; si < ss.size(); ++si) {
    const char* color = kColors[si % (sizeof kColors / sizeof *kColors)];
    auto pts = ss[si].pts;
    std::sort(pts.begin(), pts.end());
    if (!pts.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << color
         << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < pts.size(); ++i)
        os << (i ? " " : "") << svg2(X(pts[i].first)) << ','
           << svg2(Y(pts[i].second));
      os << "\"/>\n";
      for (const auto& [x, y] : pts)
        os << "<circle cx=\"" << svg2(X(x)) << "\" cy=\"" << svg2(Y(y))
           << "\" r=\"2\" fill=\"" << color << "\"/>\n";
    }
    const double ly = kSvgM + 16 + 16 * static_cast<double>(si);
    os << "<line x1=\"" << kSvgW - kSvgM - 150 << "\" y1=\"" << svg2(ly - 4)
       << "\" x2=\"" << kSvgW - kSvgM - 130 << "\" y2=\"" << svg2(ly - 4)
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kSvgW - kSvgM - 124 << "\" y=\"" << svg2(ly)
       << "\" font-family=\"monospace\" font-size=\"11\">" << ss[si].label
       << "</text>\n";
  }
  os << "<text x=\"" << kSvgW / 2 << "\" y=\"" << kSvgH - 24
     << "\" font-family=\"monospace\" font-size=\"12\" "
        "text-anchor=\"middle\">"
     << xlabel << "</text>\n";
  os << "<text x=\"18\" y=\"" << kSvgH / 2
     << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 18 "
     << kSvgH / 2 << ")\">" << ylabel << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

// Sign map of r^{-7/2} Re g over (angle, radius): shaded cells mark the
// region where Re g > 0. Radius is drawn on a log scale.
std::string svg_heatmap(const RunConfig& cfg, const std::vector<double>& angles,
                        const std::vector<double>& radii,
                        const std::vector<std::vector<double>>& values) {
  const double W = kSvgW - 2 * kSvgM, H = kSvgH - 2 * kSvgM;
  const double a_lo = angles.front(), a_hi = angles.back();
  const double l_lo = std::log(radii.front()), l_hi = std::log(radii.back());
  const auto X = [&](double a) { return kSvgM + (a - a_lo) / (a_hi - a_lo) * W; };
  const auto Y = [&](double lr) { return kSvgM + (l_hi - lr) / (l_hi - l_lo) * H; };
  const auto edge = [](const std::vector<double>& g, std::size_t i,
                       bool log_scale) {
    // Cell edge between sample i-1 and i (clamped at the ends).
    const auto v = [&](std::size_t k) {
      return log_scale ? std::log(g[k]) : g[k];
    };
    if (i == 0) return v(0);
    if (i == g.size()) return v(g.size() - 1);
    return 0.5 * (v(i - 1) + v(i));
  };

  std::ostringstream os;
  svg_header(os, cfg);
  for (std::size_t ia = 0; ia < angles.size(); ++ia) {
    const double x0 = X(edge(angles, ia, false));
    const double x1 = X(edge(angles, ia + 1, false));
    for (std::size_t ir = 0; ir < radii.size(); ++ir) {
      if (!(values[ia][ir] > 0.0)) continue;
      const double y1 = Y(edge(radii, ir, true));
      const double y0 = Y(edge(radii, ir + 1, true));
      os << "<rect x=\"" << svg2(x0) << "\" y=\"" << svg2(y0) << "\" width=\""
         << svg2(x1 - x0) << "\" height=\"" << svg2(y1 - y0)
         << "\" fill=\"#b0b0b0\"/>\n";
    }
  }
  svg_frame(os);
  const double pi = 3.14159265358979323846;
  const double aticks[] = {0.0, pi / 4, pi / 2, 3 * pi / 4, pi};
  const char* alabels[] = {"0", "pi/4", "pi/2", "3pi/4", "pi"};
  for (int i = 0; i < 5; ++i) {
    os << "<line x1=\"" << svg2(X(aticks[i])) << "\" y1=\"" << kSvgH - kSvgM
       << "\" x2=\"" << svg2(X(aticks[i])) << "\" y2=\""
       << kSvgH - kSvgM + 5 << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << svg2(X(aticks[i])) << "\" y=\"" << kSvgH - kSvgM + 18
       << "\" font-family=\"monospace\" font-size=\"11\" "
          "text-anchor=\"middle\">"
       << alabels[i] << "</text>\n";
  }
  const double rticks[] = {0.25, 1.0, 4.0, 16.0, 40.0};
  for (double r : rticks) {
    if (r < radii.front() || r > radii.back()) continue;
    os << "<line x1=\"" << kSvgM - 5 << "\" y1=\"" << svg2(Y(std::log(r)))
       << "\" x2=\"" << kSvgM << "\" y2=\"" << svg2(Y(std::log(r)))
       << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << kSvgM - 8 << "\" y=\"" << svg2(Y(std::log(r)) + 4)
       << "\" font-family=\"monospace\" font-size=\"11\" "
          "text-anchor=\"end\">"
       << svg_g(r) << "</text>\n";
  }
  os << "<text x=\"" << kSvgW / 2 << "\" y=\"" << kSvgH - 24
     << "\" font-family=\"monospace\" font-size=\"12\" "
        "text-anchor=\"middle\">arg(zeta - z0)</text>\n";
  os << "<text x=\"18\" y=\"" << kSvgH / 2
     << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 18 "
     << kSvgH / 2 << ")\">r (log scale)</text>\n";
  os << "<text x=\"" << kSvgM << "\" y=\"" << kSvgM - 10
     << "\" font-family=\"monospace\" font-size=\"12\">shaded: "
        "r^(-7/2) Re g &gt; 0</text>\n";
  os << "</svg>\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Shared helpers.

void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t nt =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t)
    workers.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(i);
    });
  for (auto& w : workers) w.join();
}

pi2::BVPConfig make_bvp_config(const RunConfig& cfg) {
  pi2::BVPConfig b;
  b.L = cfg.ode_window;
  b.mesh_density = cfg.ode_density;
  b.newton_tol = cfg.newton_tol;
  return b;
}

pi2::SolveConfig make_rh_config(const RunConfig& cfg) {
  pi2::SolveConfig s;
  s.neumann_order = cfg.rh_order;
  s.dense = cfg.rh_dense;
  s.delta = cfg.rh_delta;
  return s;
}

struct EngineError : std::runtime_error {
  EngineError(const std::string& what, double x, double T)
      : std::runtime_error(what), x(x), T(T) {}
  double x, T;
};

// Least-squares slope of log(d) against log|x| over points with d > 0.
// Returns a note fragment: either the slope or an explicit marker.
std::string slope_note(const std::vector<std::pair<double, double>>& pts) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [ax, d] : pts)
    if (ax > 0.0 && d > 0.0 && std::isfinite(d)) usable.emplace_back(ax, d);
  if (usable.empty()) return "no overlap (n=0)";
  if (usable.size() < 2)
    return "insufficient points (n=" + std::to_string(usable.size()) + ")";
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [ax, d] : usable) {
    const double lx = std::log(ax), ly = std::log(d);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double n = static_cast<double>(usable.size());
  const double den = n * sxx - sx * sx;
  if (!(std::abs(den) > 1e-12 * n * sxx))
    return "degenerate abscissa (n=" + std::to_string(usable.size()) + ")";
  const double slope = (n * sxy - sx * sy) / den;
  return std::string(svg_g(slope)) + " (n=" + std::to_string(usable.size()) +
         ")";
}

// ---------------------------------------------------------------------------
// Modes.

Table run_asym(const RunConfig& cfg) {
  Table t;
  t.columns = {"x", "T", "z0", "y"};
  for (double T : cfg.T_values)
    for (double x : cfg.x_values) {
      const pi2::GFunction G = pi2::solve_z0(x, T);
      t.rows.push_back({x, T, G.z0, pi2::y_leading(x, T)});
    }
  return t;
}

Table run_ode(const RunConfig& cfg) {
  const std::vector<pi2::SolutionGrid> grids =
      pi2::continuation_in_T(make_bvp_config(cfg), cfg.T_values);
  Table t;
  t.columns = {"x", "y", "y_x", "y_xx", "y_xxx", "residual"};
  for (const pi2::SolutionGrid& grid : grids) {
    t.breaks.emplace_back(t.rows.size(),
                          "T=" + fmt17(grid.T) + " residual_norm=" +
                              fmt17(grid.residual_norm) + " L=" +
                              fmt17(grid.boundary_L));
    if (cfg.x_values.empty()) {
      for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        const pi2::Jet4& j = grid.jets[i];
        t.rows.push_back({grid.nodes[i], j.y, j.y_x, j.y_xx, j.y_xxx,
                          std::abs(pi2::pi2_residual(j))});
      }
    } else {
      for (double x : cfg.x_values) {
        const pi2::Jet4 j = pi2::jet_at(grid, x);
        t.rows.push_back(
            {x, j.y, j.y_x, j.y_xx, j.y_xxx, std::abs(pi2::pi2_residual(j))});
      }
    }
  }
  return t;
}

struct RHPoint {
  std::vector<std::optional<double>> row;
  std::string record;  // one JSON object per point
  std::string error;
  double x = 0.0, T = 0.0;
};

std::vector<RHPoint> eval_rh_points(const RunConfig& cfg) {
  std::vector<std::pair<double, double>> points;  // (T, x), input order
  for (double T : cfg.T_values)
    for (double x : cfg.x_values) points.emplace_back(T, x);
  std::vector<RHPoint> out(points.size());
  const pi2::SolveConfig scfg = make_rh_config(cfg);
  parallel_for(points.size(), cfg.jobs, [&](std::size_t i) {
    const auto [T, x] = points[i];
    out[i].x = x;
    out[i].T = T;
    try {
      const pi2::ContourSet C = pi2::build_contour(x, T, cfg.rh_delta);
      const pi2::RMoments m = pi2::solve_R(x, T, scfg);
      const double y = pi2::extract_y(m, C.G);
      out[i].row = {x, T, y, m.est_error, m.max_jump_deviation};
      out[i].record = pi2::rh_report_json(C, m, y);
      pi2::log_line(2, "rh x=" + fmt17(x) + " T=" + fmt17(T) +
                           " y=" + fmt17(y));
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  for (const RHPoint& p : out)
    if (!p.error.empty()) throw EngineError(p.error, p.x, p.T);
  return out;
}

Table run_rh(const RunConfig& cfg, std::vector<std::string>* records) {
  Table t;
  t.columns = {"x", "T", "y", "est_error", "max_jump_deviation"};
  for (RHPoint& p : eval_rh_points(cfg)) {
    t.rows.push_back(std::move(p.row));
    if (records) records->push_back(std::move(p.record));
  }
  return t;
}

Table run_compare(const RunConfig& cfg) {
  const double L = cfg.ode_window;
  bool need_ode = false;
  for (double x : cfg.x_values) need_ode = need_ode || std::abs(x) <= L;

  std::vector<pi2::SolutionGrid> grids;
  if (need_ode) grids = pi2::continuation_in_T(make_bvp_config(cfg), cfg.T_values);

  struct Pt {
    double T, x;
    std::size_t ti;
  };
  std::vector<Pt> points;
  for (std::size_t ti = 0; ti < cfg.T_values.size(); ++ti)
    for (double x : cfg.x_values) points.push_back({cfg.T_values[ti], x, ti});

  std::vector<std::vector<std::optional<double>>> rows(points.size());
  std::vector<std::string> errors(points.size());
  const pi2::SolveConfig scfg = make_rh_config(cfg);
  parallel_for(points.size(), cfg.jobs, [&](std::size_t i) {
    const auto [T, x, ti] = points[i];
    try {
      const double y_asym = pi2::y_leading(x, T);
      std::optional<double> y_ode, y_rh;
      if (std::abs(x) <= L) y_ode = pi2::jet_at(grids[ti], x).y;
      if (std::abs(x) >= 10.0) {
        const pi2::RMoments m = pi2::solve_R(x, T, scfg);
        y_rh = pi2::extract_y(m, pi2::solve_z0(x, T));
      }
      const auto diff = [](const std::optional<double>& a,
                           const std::optional<double>& b)
          -> std::optional<double> {
        if (a && b) return std::abs(*a - *b);
        return std::nullopt;
      };
      rows[i] = {x,
                 T,
                 y_asym,
                 y_ode,
                 y_rh,
                 diff(y_ode, y_rh),
                 diff(y_rh, y_asym),
                 diff(y_ode, y_asym)};
      pi2::log_line(2, "compare x=" + fmt17(x) + " T=" + fmt17(T) + " done");
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!errors[i].empty())
      throw EngineError(errors[i], points[i].x, points[i].T);

  Table t;
  t.columns = {"x",      "T",    "y_asym",   "y_ode",
               "y_rh",   "d_ode_rh", "d_rh_asym", "d_ode_asym"};
  t.rows = std::move(rows);

  // Fitted decay slopes of each difference column against |x|, per T.
  const char* dcols[] = {"d_ode_rh", "d_rh_asym", "d_ode_asym"};
  for (std::size_t ti = 0; ti < cfg.T_values.size(); ++ti)
    for (int c = 0; c < 3; ++c) {
      std::vector<std::pair<double, double>> pts;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].ti != ti) continue;
        const auto& cell = t.rows[i][static_cast<std::size_t>(5 + c)];
        if (cell) pts.emplace_back(std::abs(points[i].x), *cell);
      }
      t.notes.push_back("T=" + fmt17(cfg.T_values[ti]) + " slope " + dcols[c] +
                        " vs |x|: " + slope_note(pts));
    }
  return t;
}

struct RegScanData {
  Table table;
  std::vector<double> angles, radii;
  std::vector<std::vector<double>> values;  // [angle][radius]
};

RegScanData run_reg_scan(const RunConfig& cfg) {
  const double x = cfg.x_values.front();
  const double T = cfg.T_values.front();
  const pi2::GFunction G = pi2::solve_z0(x, T);
  const double pi = 3.14159265358979323846;

  RegScanData d;
  constexpr int kAngles = 141, kRadii = 48;
  for (int k = 0; k < kAngles; ++k)
    d.angles.push_back(static_cast<double>(k) * pi /
                       static_cast<double>(kAngles - 1));
  for (int j = 0; j < kRadii; ++j)
    d.radii.push_back(0.25 * std::pow(40.0 / 0.25,
                                      static_cast<double>(j) /
                                          static_cast<double>(kRadii - 1)));

  // r^{-7/2} Re g(z0 + r e^{i phi}) = c1 cos(7phi/2) + c2 cos(5phi/2)/r
  //                                   + c3 cos(3phi/2)/r^2.
  d.table.columns = {"angle", "radius", "value"};
  d.values.assign(d.angles.size(), std::vector<double>(d.radii.size()));
  for (std::size_t ia = 0; ia < d.angles.size(); ++ia) {
    const double phi = d.angles[ia];
    const double A = G.c1 * std::cos(3.5 * phi);
    const double B = G.c2 * std::cos(2.5 * phi);
    const double C = G.c3 * std::cos(1.5 * phi);
    for (std::size_t ir = 0; ir < d.radii.size(); ++ir) {
      const double r = d.radii[ir];
      const double v = A + B / r + C / (r * r);
      d.values[ia][ir] = v;
      d.table.rows.push_back({phi, r, v});
    }
  }

  const pi2::ReGBoundsReport rep = pi2::re_g_scan(G);
  d.table.notes.push_back("min_phi0=" + fmt17(rep.min_phi0));
  d.table.notes.push_back("leg_max=" + fmt17(rep.leg_max));
  d.table.notes.push_back("eps0=" + fmt17(rep.eps0));
  d.table.notes.push_back("c_lower=" + fmt17(rep.c_lower));
  return d;
}

// ---------------------------------------------------------------------------
// Output assembly and entry point.

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out)
      throw ConfigError("cannot open output file \"" + cfg.output +
                        "\" for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
      throw ConfigError("failed writing output file \"" + cfg.output + "\"");
  }
  pi2::log_line(1, "wrote " + std::to_string(text.size()) + " bytes to " +
                       (cfg.output.empty() ? std::string("stdout")
                                           : cfg.output));
}

// One polyline series per T for a (x, y-ish) table column.
std::vector<Series> series_by_T(const RunConfig& cfg, const Table& t,
                                std::size_t xcol,
                                const std::vector<std::size_t>& ycols,
                                std::size_t Tcol, bool has_Tcol) {
  std::vector<Series> ss;
  for (std::size_t ti = 0; ti < cfg.T_values.size(); ++ti) {
    const double T = cfg.T_values[ti];
    for (std::size_t yc : ycols) {
      Series s;
      s.label = t.columns[yc];
      if (cfg.T_values.size() > 1) s.label += " T=" + std::string(svg_g(T));
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        if (has_Tcol && (!row[Tcol] || *row[Tcol] != T)) continue;
        if (!has_Tcol) {
          // ode mode: rows come in per-T blocks of equal length.
          const std::size_t block = t.rows.size() / cfg.T_values.size();
          if (r / block != ti) continue;
        }
        if (row[xcol] && row[yc] && std::isfinite(*row[xcol]) &&
            std::isfinite(*row[yc]))
          s.pts.emplace_back(*row[xcol], *row[yc]);
      }
      ss.push_back(std::move(s));
    }
  }
  return ss;
}

int run(const RunConfig& cfg) {
  pi2::log_line(1, "mode=" + cfg.mode + " points=" +
                       std::to_string(cfg.x_values.size() *
                                      cfg.T_values.size()) +
                       " jobs=" + std::to_string(cfg.jobs));
  std::string text;
  if (cfg.mode == "asym") {
    const Table t = run_asym(cfg);
    if (cfg.format == "csv") text = to_csv(cfg, t);
    else if (cfg.format == "json") text = to_json_table(cfg, t);
    else
      text = svg_profile(cfg, series_by_T(cfg, t, 0, {3}, 1, true), "x",
                         "y (leading law)");
  } else if (cfg.mode == "ode") {
    const Table t = run_ode(cfg);
    if (cfg.format == "csv") text = to_csv(cfg, t);
    else if (cfg.format == "json") text = to_json_table(cfg, t);
    else
      text = svg_profile(cfg, series_by_T(cfg, t, 0, {1}, 0, false), "x", "y");
  } else if (cfg.mode == "rh") {
    std::vector<std::string> records;
    const Table t = run_rh(cfg, &records);
    if (cfg.format == "csv") {
      text = to_csv(cfg, t);
    } else {
      ordered_json j;
      j["config"] = config_json(cfg);
      ordered_json rs = ordered_json::array();
      for (const std::string& r : records) rs.push_back(ordered_json::parse(r));
      j["records"] = std::move(rs);
      text = j.dump(1) + "\n";
    }
  } else if (cfg.mode == "compare") {
    const Table t = run_compare(cfg);
    if (cfg.format == "csv") text = to_csv(cfg, t);
    else if (cfg.format == "json") text = to_json_table(cfg, t);
    else
      text = svg_profile(cfg, series_by_T(cfg, t, 0, {2, 3, 4}, 1, true), "x",
                         "y");
  } else {  // reg-scan
    const RegScanData d = run_reg_scan(cfg);
    if (cfg.format == "csv") text = to_csv(cfg, d.table);
    else if (cfg.format == "json") text = to_json_table(cfg, d.table);
    else text = svg_heatmap(cfg, d.angles, d.radii, d.values);
  }
  write_output(cfg, text);
  return 0;
}

void emit_error_record(const std::string& kind, const std::string& message,
                       const std::optional<double>& x = std::nullopt,
                       const std::optional<double>& T = std::nullopt) {
  ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (x) j["error"]["x"] = *x;
  if (T) j["error"]["T"] = *T;
  const std::string line = j.dump() + "\n";
  std::fwrite(line.data(), 1, line.size(), stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pi2_cli: pole-free solution of the fourth-order ODE\n"
      "  x = T y - [ y^3/6 + (y_x^2 + 2 y y_xx)/24 + y_xxxx/240 ]\n"
      "by leading asymptotics (asym), a collocation BVP (ode), a\n"
      "steepest-descent jump problem (rh), cross-engine comparison\n"
      "(compare), or a phase-sign scan (reg-scan)."};

  std::string mode, x_range, format, output, config_path;
  std::vector<double> xs, Ts;
  double ode_window = 0, ode_density = 0, newton_tol = 0, rh_delta = 0;
  int rh_order = 0, jobs = 0;
  bool rh_dense = false;

  app.add_option("--mode", mode, "asym | ode | rh | compare | reg-scan");
  app.add_option("--x", xs, "sample point(s) x (repeatable)");
  app.add_option("--x-range", x_range, "equispaced grid lo:hi:count");
  app.add_option("--T", Ts, "parameter value(s) T (repeatable; default 0)");
  app.add_option("--ode-window", ode_window, "BVP half-width L (default 20)");
  app.add_option("--ode-density", ode_density,
                 "BVP mesh nodes per unit x (default 16)");
  app.add_option("--newton-tol", newton_tol,
                 "BVP Newton residual target (default 1e-10)");
  app.add_option("--rh-order", rh_order,
                 "Neumann truncation order 1..12 (default 2)");
  app.add_flag("--rh-dense", rh_dense,
               "solve the jump system densely instead of by Neumann iteration");
  app.add_option("--rh-delta", rh_delta, "disk radius in (0, 2] (default 1)");
  app.add_option("--jobs", jobs, "worker threads for independent points");
  app.add_option("--config", config_path,
                 "JSON config file; explicit flags override it");
  app.add_option("--output,-o", output, "output path (default stdout)");
  app.add_option("--format", format, "csv | json | svg (default csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_json_config(cfg, config_path);
    if (app.count("--mode")) cfg.mode = mode;
    if (app.count("--x")) cfg.x_values = xs;
    if (app.count("--x-range")) cfg.x_range = x_range;
    if (app.count("--T")) cfg.T_values = Ts;
    if (app.count("--ode-window")) cfg.ode_window = ode_window;
    if (app.count("--ode-density")) cfg.ode_density = ode_density;
    if (app.count("--newton-tol")) cfg.newton_tol = newton_tol;
    if (app.count("--rh-order")) cfg.rh_order = rh_order;
    if (app.count("--rh-dense")) cfg.rh_dense = true;
    if (app.count("--rh-delta")) cfg.rh_delta = rh_delta;
    if (app.count("--jobs")) cfg.jobs = jobs;
    if (app.count("--format")) cfg.format = format;
    if (app.count("--output")) cfg.output = output;
    validate(cfg);
  } catch (const ConfigError& e) {
    emit_error_record("config", e.what());
    return 2;
  }

  try {
    return run(cfg);
  } catch (const ConfigError& e) {
    emit_error_record("config", e.what());
    return 2;
  } catch (const EngineError& e) {
    emit_error_record("engine", e.what(), e.x, e.T);
    return 1;
  } catch (const pi2::SolveFailure& e) {
    emit_error_record("engine", std::string(e.what()) + " (best residual " +
                                    fmt17(e.best_residual) + " after " +
                                    std::to_string(e.iterations) +
                                    " iterations)");
    return 1;
  } catch (const std::exception& e) {
    emit_error_record("engine", e.what());
    return 1;
  }
}
