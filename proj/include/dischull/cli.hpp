#pragma once

// Command-line front end. Subcommands:
//   verify    reproduce every registered constant by its independent routes
//   compute   one (config, quantity, method) triple
//   converge  hull-oracle convergence table over a K range
//   widths    width w(v) on a (theta, phi) grid
// Exit codes: 0 success, 1 verification or computation failure, 2 usage or
// domain error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "dischull/metrics.hpp"

namespace dischull::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

enum class Format { Table, Json, Csv };

inline constexpr double verify_tolerance = 1e-9;

struct RunSpec {
  std::string command;
  std::string config;
  std::string quantity;
  std::string method;
  std::optional<double> tol;
  std::optional<int> k;
  std::string k_range = "128:4096";
  std::string format;
  std::string out;
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline double parse_real(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DomainError("invalid " + what + " '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw DomainError("invalid " + what + " '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

}  // namespace detail

/// example1 | example2 | example3 | oloid | roller | delta:<d> | cylinder:<l>:<r>,
/// optionally followed by *<scale>.
inline BodyConfig parse_config(const std::string& text) {
  std::string name = text;
  double scale = 1.0;
  if (const auto star = text.find('*'); star != std::string::npos) {
    name = text.substr(0, star);
    scale = detail::parse_real(text.substr(star + 1), "scale");
  }
  const auto parts = detail::split(name, ':');
  BodyConfig cfg;
  if (name == "example1") {
    cfg = BodyConfig::example1();
  } else if (name == "example2") {
    cfg = BodyConfig::example2();
  } else if (name == "example3") {
    cfg = BodyConfig::example3();
  } else if (name == "oloid") {
    cfg = BodyConfig::oloid();
  } else if (name == "roller") {
    cfg = BodyConfig::roller();
  } else if (parts.size() == 2 && parts[0] == "delta") {
    cfg = BodyConfig::delta_family(detail::parse_real(parts[1], "delta"));
  } else if (parts.size() == 3 && parts[0] == "cylinder") {
    cfg = BodyConfig::cylinder(detail::parse_real(parts[1], "cylinder length"),
                               detail::parse_real(parts[2], "cylinder radius"));
  } else {
    throw DomainError("unknown config '" + text +
                      "' (expected example1, example2, example3, oloid, roller, delta:<d>, cylinder:<l>:<r>)");
  }
  return scale == 1.0 ? cfg : cfg.scaled(scale);
}

/// "lo:hi" -> lo, 2 lo, 4 lo, ... up to hi.
inline std::vector<int> parse_k_range(const std::string& text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 2) throw DomainError("K range must be lo:hi, got '" + text + "'");
  int lo = 0, hi = 0;
  try {
    std::size_t a = 0, b = 0;
    lo = std::stoi(parts[0], &a);
    hi = std::stoi(parts[1], &b);
    if (a != parts[0].size() || b != parts[1].size()) throw DomainError("");
  } catch (const std::exception&) {
    throw DomainError("K range must be lo:hi with integers, got '" + text + "'");
  }
  if (lo < 6 || hi < lo || hi > (1 << 20)) throw DomainError("K range needs 6 <= lo <= hi <= 1048576");
  std::vector<int> ks;
  for (long k = lo; k <= hi; k *= 2) ks.push_back(static_cast<int>(k));
  return ks;
}

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw DomainError("unknown format '" + s + "'");
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string render_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string l;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      l += cells[c];
      if (c + 1 < cells.size()) l += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    out += l + "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

inline std::string render_csv(const std::vector<std::string>& header,
                              const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out += ',';
      out += cells[c];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

inline std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json optional_number(std::optional<double> v) { return v && std::isfinite(*v) ? Json(*v) : Json(nullptr); }

// ---------------------------------------------------------------------------
// compute

inline Json report_json(const MetricsReport& r, double wall_time) {
  Json j;
  j["config"] = r.config.name();
  j["quantity"] = std::string(to_string(r.quantity));
  j["method"] = std::string(to_string(r.method));
  j["value"] = r.value;
  j["error_estimate"] = r.error_estimate;
  j["evaluations"] = r.evaluations;
  j["wall_time"] = wall_time;
  j["note"] = r.note;
  return j;
}

inline quad::QuadOptions options_from(const RunSpec& s) {
  quad::QuadOptions o;
  if (s.tol) {
    o.abs_tol = *s.tol;
    o.rel_tol = *s.tol;
  }
  return o;
}

inline std::string run_compute(const RunSpec& s, Format f) {
  const BodyConfig cfg = parse_config(s.config);
  const Quantity q = parse_quantity(s.quantity);
  const Method m = parse_method(s.method);
  const auto t0 = std::chrono::steady_clock::now();
  const MetricsReport r = compute(cfg, q, m, options_from(s), s.k.value_or(default_hull_k));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (f == Format::Json) return render_json(report_json(r, wall));
  const std::vector<std::string> header{"config", "quantity", "method", "value", "error_estimate",
                                        "evaluations", "wall_time", "note"};
  const bool table = f == Format::Table;
  auto num = [table](double v) { return table ? fmt10(v) : fmt17(v); };
  const std::vector<std::string> row{r.config.name(), std::string(to_string(r.quantity)),
                                     std::string(to_string(r.method)), num(r.value), num(r.error_estimate),
                                     std::to_string(r.evaluations), num(wall), r.note};
  return table ? render_table(header, {row}) : render_csv(header, {row});
}

// ---------------------------------------------------------------------------
// verify

struct VerifyRow {
  std::string constant;
  std::string config;
  Quantity quantity = Quantity::VL;
  std::string method;
  std::optional<double> closed;
  std::optional<double> value;
  std::optional<double> error_estimate;
  std::optional<double> delta;
  std::string status;  // pass | fail | error | info
  std::string note;
  // Informational rows: the hull-oracle value the support integral is set against.
  std::optional<double> reference_value;
  std::optional<double> reference_error;
};

inline std::vector<VerifyRow> verify_rows(const quad::QuadOptions& o, int K) {
  std::vector<VerifyRow> rows;
  auto run = [&](const ClosedFormEntry& e, const BodyConfig& cfg, Method m, Ex2Route route, std::string note) {
    VerifyRow row;
    row.constant = e.tag;
    row.config = e.config;
    row.quantity = e.quantity;
    row.method = std::string(to_string(m));
    row.note = std::move(note);
    try {
      row.closed = e.evaluate();
      const MetricsReport r = compute(cfg, e.quantity, m, o, K, route);
      row.value = r.value;
      row.error_estimate = r.error_estimate;
      row.delta = std::abs(r.value - *row.closed);
      row.status = *row.delta <= verify_tolerance ? "pass" : "fail";
    } catch (const std::exception& ex) {
      row.status = "error";
      row.note = ex.what();
    }
    rows.push_back(std::move(row));
  };

  for (const ClosedFormEntry& e : closed_form_registry()) {
    const BodyConfig cfg = parse_config(e.config);
    const bool ex2 = cfg.kind == BodyKind::Example2;
    if (e.quantity == Quantity::MW) {
      if (ex2) {
        run(e, cfg, Method::Indirect, Ex2Route::Graph, "graph");
        run(e, cfg, Method::Indirect, Ex2Route::Parametric, "parametric");
      } else {
        run(e, cfg, Method::Indirect, Ex2Route::Graph, "");
      }
      run(e, cfg, Method::DirectOctant, Ex2Route::Graph, "");
      run(e, cfg, Method::SupportIntegral, Ex2Route::Graph, "");
    } else if (ex2) {
      run(e, cfg, Method::Quadrature, Ex2Route::Graph, "graph");
      run(e, cfg, Method::Quadrature, Ex2Route::Parametric, "parametric");
    } else {
      std::string note = e.tag == "AR3" ? "closed form: Vogt" : "";
      run(e, cfg, Method::Quadrature, Ex2Route::Graph, note);
    }
  }

  for (const std::string name : {"oloid", "roller"}) {
    VerifyRow row;
    row.constant = "MW_" + name;
    row.config = name;
    row.quantity = Quantity::MW;
    row.method = std::string(to_string(Method::SupportIntegral));
    row.status = "info";
    try {
      const BodyConfig cfg = parse_config(name);
      const MetricsReport s = mw_support(cfg, o);
      const MetricsReport h = hull_oracle(cfg, Quantity::MW, K);
      row.value = s.value;
      row.error_estimate = s.error_estimate;
      row.reference_value = h.value;
      row.reference_error = h.error_estimate;
      row.delta = std::abs(s.value - h.value);
      row.note = "no closed form; hull " + h.note;
    } catch (const std::exception& ex) {
      row.status = "error";
      row.note = ex.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json verify_json(const std::vector<VerifyRow>& rows) {
  Json arr = Json::array();
  for (const VerifyRow& r : rows) {
    Json j;
    j["constant"] = r.constant;
    j["config"] = r.config;
    j["quantity"] = std::string(to_string(r.quantity));
    j["method"] = r.method;
    j["closed"] = optional_number(r.closed);
    j["value"] = optional_number(r.value);
    j["error_estimate"] = optional_number(r.error_estimate);
    j["delta"] = optional_number(r.delta);
    j["status"] = r.status;
    j["note"] = r.note;
    if (r.reference_value) {
      j["hull_value"] = optional_number(r.reference_value);
      j["hull_error"] = optional_number(r.reference_error);
    }
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::string render_verify(const std::vector<VerifyRow>& rows, Format f) {
  if (f == Format::Json) return render_json(verify_json(rows));
  const bool table = f == Format::Table;
  auto num = [table](const std::optional<double>& v) {
    if (!v) return std::string(table ? "N/A" : "");
    return table ? fmt10(*v) : fmt17(*v);
  };
  std::vector<std::vector<std::string>> cells;
  for (const VerifyRow& r : rows) {
    std::string value = num(r.value);
    std::string note = r.note;
    if (table && r.status == "info" && r.value) {
      value += " +- " + fmt10(r.error_estimate.value_or(0.0));
      note = "hull=" + fmt10(*r.reference_value) + " +- " + fmt10(r.reference_error.value_or(0.0)) + "; " + note;
    }
    if (!table && r.reference_value)
      note = "hull=" + fmt17(*r.reference_value) + " +- " + fmt17(r.reference_error.value_or(0.0));
    cells.push_back({r.constant, r.config, std::string(to_string(r.quantity)), r.method, num(r.closed), value,
                     num(r.error_estimate), num(r.delta), r.status, note});
  }
  const std::vector<std::string> header{"constant", "config", "quantity", "method", "closed",
                                        "value",    "error_estimate", "delta", "status", "note"};
  return table ? render_table(header, cells) : render_csv(header, cells);
}

// ---------------------------------------------------------------------------
// converge

struct ConvergeRow {
  int K = 0;
  double vl = 0, ar = 0, mw = 0;
  double vl_deficit = 0, ar_deficit = 0, mw_deficit = 0;
  std::optional<double> order_estimate;  // volume deficit order against the previous row
};

/// Truth for deficits: the closed form where one exists, else the
/// quadrature (VL, AR) or support-integral (MW) value.
inline double reference_value(const BodyConfig& cfg, Quantity q, const quad::QuadOptions& o) {
  try {
    return closed_form(cfg, q).value;
  } catch (const NoClosedForm&) {
    return q == Quantity::MW ? mw_support(cfg, o).value : compute(cfg, q, Method::Quadrature, o).value;
  }
}

inline std::vector<ConvergeRow> converge_rows(const std::string& config, const std::vector<int>& ks,
                                              const quad::QuadOptions& o) {
  const bool cube = config == "cube";
  BodyConfig cfg;
  double ref_vl = 1.0, ref_ar = 6.0, ref_mw = 1.5;
  if (!cube) {
    cfg = parse_config(config);
    ref_vl = reference_value(cfg, Quantity::VL, o);
    ref_ar = reference_value(cfg, Quantity::AR, o);
    ref_mw = reference_value(cfg, Quantity::MW, o);
  }
  std::vector<ConvergeRow> rows;
  for (int K : ks) {
    ConvergeRow r;
    r.K = K;
    if (cube) {
      const Polytope p = convex_hull_3d(cube_fixture());
      r.vl = poly_volume(p);
      r.ar = poly_area(p);
      r.mw = poly_mean_width(p);
    } else {
      const HullMetrics h = hull_metrics(cfg, K);
      r.vl = h.vl;
      r.ar = h.ar;
      r.mw = h.mw;
    }
    r.vl_deficit = ref_vl - r.vl;
    r.ar_deficit = ref_ar - r.ar;
    r.mw_deficit = ref_mw - r.mw;
    if (!rows.empty() && rows.back().vl_deficit > 0.0 && r.vl_deficit > 0.0)
      r.order_estimate = std::log2(rows.back().vl_deficit / r.vl_deficit) / std::log2(double(K) / rows.back().K);
    rows.push_back(r);
  }
  return rows;
}

inline std::string render_converge(const std::vector<ConvergeRow>& rows, Format f) {
  const std::vector<std::string> header{"K",          "vl",         "ar",         "mw",
                                        "vl_deficit", "ar_deficit", "mw_deficit", "order_estimate"};
  if (f == Format::Json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["K"] = r.K;
      j["vl"] = r.vl;
      j["ar"] = r.ar;
      j["mw"] = r.mw;
      j["vl_deficit"] = r.vl_deficit;
      j["ar_deficit"] = r.ar_deficit;
      j["mw_deficit"] = r.mw_deficit;
      j["order_estimate"] = optional_number(r.order_estimate);
      arr.push_back(std::move(j));
    }
    return render_json(arr);
  }
  const bool table = f == Format::Table;
  auto num = [table](double v) { return table ? fmt10(v) : fmt17(v); };
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    cells.push_back({std::to_string(r.K), num(r.vl), num(r.ar), num(r.mw), num(r.vl_deficit), num(r.ar_deficit),
                     num(r.mw_deficit), r.order_estimate ? num(*r.order_estimate) : std::string()});
  return table ? render_table(header, cells) : render_csv(header, cells);
}

// ---------------------------------------------------------------------------
// widths

inline constexpr int default_width_rows = 40;

struct WidthSample {
  double theta, phi, width;
};

/// phi_j = j pi / n for j = 0..n, theta_i = 2 pi i / (2n) for i = 0..2n-1.
inline std::vector<WidthSample> width_grid(const BodyConfig& cfg, int n) {
  if (n < 2) throw DomainError("width grid needs at least 2 polar rows");
  constexpr double pi = std::numbers::pi;
  std::vector<WidthSample> out;
  for (int j = 0; j <= n; ++j) {
    const double phi = pi * j / n;
    for (int i = 0; i < 2 * n; ++i) {
      const double theta = 2.0 * pi * i / (2 * n);
      out.push_back({theta, phi, width(cfg, spherical(theta, phi))});
    }
  }
  return out;
}

/// sin(phi)-weighted mean of the grid widths; approximates MW.
inline double weighted_mean_width(const std::vector<WidthSample>& grid) {
  double num = 0.0, den = 0.0;
  for (const auto& s : grid) {
    num += s.width * std::sin(s.phi);
    den += std::sin(s.phi);
  }
  return num / den;
}

inline std::string render_widths(const std::vector<WidthSample>& grid, Format f) {
  if (f == Format::Json) {
    Json arr = Json::array();
    for (const auto& s : grid) arr.push_back(Json{{"theta", s.theta}, {"phi", s.phi}, {"width", s.width}});
    return render_json(arr);
  }
  const bool table = f == Format::Table;
  auto num = [table](double v) { return table ? fmt10(v) : fmt17(v); };
  std::vector<std::vector<std::string>> cells;
  for (const auto& s : grid) cells.push_back({num(s.theta), num(s.phi), num(s.width)});
  const std::vector<std::string> header{"theta", "phi", "width"};
  return table ? render_table(header, cells) : render_csv(header, cells);
}

// ---------------------------------------------------------------------------
// Entry point

namespace detail {

inline std::string error_type(const std::exception& e) {
  if (dynamic_cast<const NoClosedForm*>(&e)) return "NoClosedForm";
  if (dynamic_cast<const UnsupportedMethod*>(&e)) return "UnsupportedMethod";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const QuadratureError*>(&e)) return "QuadratureError";
  if (dynamic_cast<const DegenerateInput*>(&e)) return "DegenerateInput";
  return "Error";
}

inline int error_exit_code(const std::exception& e) {
  if (dynamic_cast<const QuadratureError*>(&e) || dynamic_cast<const DegenerateInput*>(&e)) return kFailure;
  return kUsage;
}

inline bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open output file '" << path << "'\n";
    return false;
  }
  file << text;
  return static_cast<bool>(file);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume, surface area and mean width of convex hulls of two disks", "dischull"};
  app.require_subcommand(1, 1);
  RunSpec spec;

  const std::vector<std::string> quantities{"vl", "ar", "mw"};
  const std::vector<std::string> methods{"closed", "quad", "indirect", "direct", "support", "hull"};
  const std::vector<std::string> formats{"table", "json", "csv"};

  auto add_tol = [&](CLI::App* s) {
    s->add_option("--tol", spec.tol, "Absolute and relative quadrature tolerance")->check(CLI::PositiveNumber);
  };
  auto add_k = [&](CLI::App* s, const std::string& help) {
    s->add_option("--k", spec.k, help)->check(CLI::Range(2, 1 << 20));
  };
  auto add_output = [&](CLI::App* s) {
    s->add_option("--format", spec.format, "Output format")->check(CLI::IsMember(formats));
    s->add_option("--out", spec.out, "Write output to this file instead of stdout");
  };

  CLI::App* verify = app.add_subcommand("verify", "Reproduce the registered constants by every applicable route");
  add_tol(verify);
  add_k(verify, "Points per circle for the hull oracle (default 4096)");
  add_output(verify);

  CLI::App* comp = app.add_subcommand("compute", "Compute one quantity by one method");
  comp->add_option("--config", spec.config, "Configuration name")->required();
  comp->add_option("--quantity", spec.quantity, "Quantity")->required()->check(CLI::IsMember(quantities));
  comp->add_option("--method", spec.method, "Method")->required()->check(CLI::IsMember(methods));
  add_tol(comp);
  add_k(comp, "Points per circle for the hull oracle (default 4096)");
  add_output(comp);

  CLI::App* conv = app.add_subcommand("converge", "Hull-oracle convergence over a doubling K range");
  conv->add_option("--config", spec.config, "Configuration name, or 'cube' for the fixture")->required();
  conv->add_option("--method", spec.method, "Must be hull")->check(CLI::IsMember(methods));
  conv->add_option("--k-range", spec.k_range, "lo:hi, doubling from lo (default 128:4096)");
  add_tol(conv);
  add_output(conv);

  CLI::App* wid = app.add_subcommand("widths", "Width w(v) on a (theta, phi) grid");
  wid->add_option("--config", spec.config, "Configuration name")->required();
  add_k(wid, "Number of polar steps n; the grid is (n + 1) x 2n (default 40)");
  add_output(wid);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  spec.command = sub->get_name();
  const bool data_command = spec.command == "converge" || spec.command == "widths";
  const Format format = parse_format(spec.format.empty() ? (data_command ? "csv" : "table") : spec.format);

  try {
    std::string text;
    int code = kOk;
    if (spec.command == "verify") {
      const auto rows = verify_rows(options_from(spec), spec.k.value_or(default_hull_k));
      text = render_verify(rows, format);
      for (const auto& r : rows)
        if (r.status == "fail" || r.status == "error") code = kFailure;
    } else if (spec.command == "compute") {
      text = run_compute(spec, format);
    } else if (spec.command == "converge") {
      if (!spec.method.empty() && spec.method != "hull")
        throw UnsupportedMethod("converge runs the hull oracle only (--method hull)");
      text = render_converge(converge_rows(spec.config, parse_k_range(spec.k_range), options_from(spec)), format);
    } else {
      text = render_widths(width_grid(parse_config(spec.config), spec.k.value_or(default_width_rows)), format);
    }
    if (!detail::emit(text, spec.out, out, err)) return kUsage;
    return code;
  } catch (const std::exception& e) {
    const std::string type = detail::error_type(e);
    if (format == Format::Json) {
      Json j;
      j["error"] = Json{{"type", type}, {"message", e.what()}};
      out << render_json(j);
    }
    err << "error (" << type << "): " << e.what() << "\n";
    return detail::error_exit_code(e);
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace dischull::cli
