#include "triad/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace triad {

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw ConfigError("unknown output format '" + text + "' (expected json|csv)");
}

void validate(const RunConfig& config) {
  if (config.c_values.empty()) throw ConfigError("the list of c values is empty");
  for (const double c : config.c_values)
    if (!std::isfinite(c)) throw ConfigError("c values must be finite");
  if (config.points < 1) throw ConfigError("point count must be at least 1");
  if (!(config.fd_step > 0.0)) throw ConfigError("finite-difference step must be positive");
  if (config.threads < 1) throw ConfigError("thread count must be at least 1");
  try {
    find_example(config.example);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string connection_label(double c) {
  if (c == 0.0) return "contact triad connection";
  if (c == -1.0) return "first modification (Levi-Civita + B1)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "triad family member c = %g", c);
  return buf;
}

int Report::failed_checks() const {
  int n = 0;
  for (const auto& r : results) n += !r.control && !r.pass;
  return n;
}

int Report::undetected_controls() const {
  int n = 0;
  for (const auto& [name, s] : by_check) n += s.control && !s.detected;
  return n;
}

namespace {

std::vector<std::string> names_with_prefix(std::initializer_list<const char*> prefixes) {
  std::vector<std::string> out;
  for (const auto& c : check_registry())
    for (const char* pre : prefixes)
      if (c.name.rfind(pre, 0) == 0 && !c.control) out.push_back(c.name);
  return out;
}

template <class F>
void guarded(std::vector<CheckResult>& out, const std::vector<std::string>& names, std::optional<double> c, F f) {
  std::vector<CheckResult> got;
  try {
    got = f();
  } catch (const std::exception& e) {
    got.clear();
    for (const auto& n : names) {
      CheckResult r = make_result(n, std::numeric_limits<double>::quiet_NaN());
      r.pass = false;
      r.error = e.what();
      got.push_back(r);
    }
  }
  for (auto& r : got) {
    r.c = c;
    out.push_back(std::move(r));
  }
}

std::mt19937_64 stream_rng(std::uint64_t seed, int point, int stream) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(point), std::uint32_t(stream)};
  return std::mt19937_64(seq);
}

std::vector<CheckResult> evaluate_point(const ExampleSpec& spec, const ContactTriad& t, const RunConfig& cfg,
                                        int idx, const Point& p) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng = stream_rng(cfg.seed, idx, 0);
  guarded(out, names_with_prefix({"lc.", "tmp1."}), std::nullopt, [&] { return check_lemma_suite(t, p, rng); });
  guarded(out, {"frame.orthonormal", "frame.structure_lc"}, std::nullopt, [&] { return check_frame(t, p); });
  guarded(out, {"scaling"}, std::nullopt,
          [&] { return std::vector<CheckResult>{check_scaling(t, 2.0, p, rng)}; });

  for (std::size_t ci = 0; ci < cfg.c_values.size(); ++ci) {
    const double c = cfg.c_values[ci];
    std::mt19937_64 crng = stream_rng(cfg.seed, idx, 1 + int(ci));
    guarded(out, names_with_prefix({"axiom"}), c,
            [&] { return check_axioms(triad_connection(t, c), c, p, crng); });
    std::vector<std::string> cr_names = {"cr.reeb"};
    if (c == 0.0) cr_names.push_back("cr.xi");
    guarded(out, cr_names, c, [&] {
      std::vector<CheckResult> cr = check_cr_form(triad_connection(t, c), p, crng);
      if (c != 0.0) cr.pop_back();
      return cr;
    });
    guarded(out, names_with_prefix({"family."}), c, [&] { return check_family(t, c, p, crng); });
    guarded(out, {"frame.cross_check_gamma", "frame.structure", "frame.skew_hermitian"}, c,
            [&] { return check_frame_family(t, c, p); });
    for (const auto& m : spec.maps)
      guarded(out, {"naturality." + m.label}, c,
              [&] { return std::vector<CheckResult>{check_naturality(t, m, c, p, crng)}; });
    if (cfg.negative_controls && c != 0.0)
      guarded(out, {"control.cr"}, c, [&] { return std::vector<CheckResult>{check_cr_control(t, c, p, crng)}; });
  }

  if (cfg.negative_controls) {
    std::mt19937_64 krng = stream_rng(cfg.seed, idx, 1 << 20);
    std::vector<std::string> names = {"control.wrong_c", "control.scaling"};
    if (spec.nonintegrable_xi) {
      names.push_back("control.b1_sign_flip");
      names.push_back("control.levi_civita");
    }
    guarded(out, names, std::nullopt, [&] { return check_controls(spec, t, p, krng); });
  }
  for (auto& r : out) {
    r.point_index = idx;
    r.point = p;
  }
  return out;
}

bool result_less(const CheckResult& a, const CheckResult& b) {
  if (a.name != b.name) return a.name < b.name;
  if (a.c.has_value() != b.c.has_value()) return !a.c.has_value();
  if (a.c && *a.c != *b.c) return *a.c < *b.c;
  return a.point_index < b.point_index;
}

}  // namespace

Report run_suite(const RunConfig& config) {
  validate(config);
  const ExampleSpec spec = find_example(config.example);
  const ContactTriad triad = spec.build(DiffEngine{config.mode, config.fd_step});

  Report report;
  report.config = config;
  report.dim = spec.dim;
  std::mt19937_64 sampler(config.seed);
  for (int i = 0; i < config.points; ++i) report.points.push_back(sample_point(spec, sampler));

  std::vector<std::vector<CheckResult>> per_point(config.points);
  const int workers = std::min(config.threads, config.points);
  if (workers <= 1) {
    for (int i = 0; i < config.points; ++i) per_point[i] = evaluate_point(spec, triad, config, i, report.points[i]);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < config.points; i += workers)
          per_point[i] = evaluate_point(spec, triad, config, i, report.points[i]);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& v : per_point)
    for (auto& r : v) report.results.push_back(std::move(r));
  std::sort(report.results.begin(), report.results.end(), result_less);

  for (const auto& r : report.results) {
    CheckSummary& s = report.by_check[r.name];
    s.tolerance = r.tolerance;
    s.control = r.control;
    ++s.count;
    s.passed += r.pass;
    s.errors += !r.error.empty();
    if (std::isnan(r.residual) || std::isnan(s.max_residual))
      s.max_residual = std::numeric_limits<double>::quiet_NaN();
    else
      s.max_residual = std::max(s.max_residual, r.residual);
  }
  for (auto& [name, s] : report.by_check) s.detected = s.control && s.max_residual >= kDetectionThreshold;
  return report;
}

namespace {

using nlohmann::json;

std::string real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

// nlohmann's object_t is a std::map, so keys come out sorted.
void write_canonical(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        write_canonical(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? real(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

json real_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

json to_json(const Report& r) {
  const RunConfig& cfg = r.config;
  json c_values = json::array();
  json connections = json::array();
  for (const double c : cfg.c_values) {
    c_values.push_back(c);
    connections.push_back({{"c", c}, {"label", connection_label(c)}});
  }
  json out;
  out["schema_version"] = kSchemaVersion;
  out["config"] = {{"example", cfg.example},  {"dim", r.dim},
                   {"c_values", c_values},    {"points", cfg.points},
                   {"seed", cfg.seed},        {"mode", std::string(to_string(cfg.mode))},
                   {"fd_step", cfg.fd_step},  {"negative_controls", cfg.negative_controls}};
  out["engine"] = {{"name", "triad"},
                   {"version", "0.1.0"},
                   {"mode", std::string(to_string(cfg.mode))},
                   {"fd_step", cfg.mode == DiffMode::forward ? json(nullptr) : json(cfg.fd_step)},
                   {"samples_per_check", kSamples},
                   {"detection_threshold", kDetectionThreshold}};
  out["connections"] = connections;
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(point_json(p));
  out["points"] = pts;

  json results = json::array();
  for (const auto& x : r.results) {
    json w = json::array();
    for (const auto& v : x.witness) w.push_back(point_json(v));
    results.push_back({{"name", x.name},
                       {"anchor", x.anchor},
                       {"c", x.c ? json(*x.c) : json(nullptr)},
                       {"point_index", x.point_index},
                       {"residual", real_or_null(x.residual)},
                       {"tolerance", x.tolerance},
                       {"pass", x.pass},
                       {"control", x.control},
                       {"witness", w},
                       {"error", x.error.empty() ? json(nullptr) : json(x.error)}});
  }
  out["results"] = results;

  json by_check = json::object();
  int passed = 0, errors = 0, controls = 0, detected = 0;
  for (const auto& [name, s] : r.by_check) {
    by_check[name] = {{"count", s.count},
                      {"passed", s.passed},
                      {"errors", s.errors},
                      {"max_residual", real_or_null(s.max_residual)},
                      {"tolerance", s.tolerance},
                      {"control", s.control},
                      {"detected", s.control ? json(s.detected) : json(nullptr)}};
    passed += s.passed;
    errors += s.errors;
    controls += s.control;
    detected += s.control && s.detected;
  }
  out["summary"] = {{"records", int(r.results.size())},
                    {"passed", passed},
                    {"failed", r.failed_checks()},
                    {"errors", errors},
                    {"controls", controls},
                    {"controls_detected", detected},
                    {"by_check", by_check},
                    {"exit_code", r.exit_code()}};
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (const char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string csv_point(const Point& p) {
  std::string s;
  for (int i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += real(p[i]);
  }
  return s;
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "name,c,point_index,residual,tolerance,pass,control,point,witness,error,anchor\n";
  for (const auto& x : r.results) {
    std::string witness;
    for (std::size_t i = 0; i < x.witness.size(); ++i) {
      if (i) witness += ';';
      witness += csv_point(x.witness[i]);
    }
    os << csv_field(x.name) << ',' << (x.c ? real(*x.c) : "") << ',' << x.point_index << ','
       << (std::isfinite(x.residual) ? real(x.residual) : "") << ',' << real(x.tolerance) << ','
       << (x.pass ? "true" : "false") << ',' << (x.control ? "true" : "false") << ',' << csv_point(x.point) << ','
       << csv_field(witness) << ',' << csv_field(x.error) << ',' << csv_field(x.anchor) << '\n';
  }
  return os.str();
}

}  // namespace

std::string emit_report(const Report& report, OutputFormat format) {
  if (format == OutputFormat::csv) return to_csv(report);
  std::string out;
  write_canonical(to_json(report), out);
  out += '\n';
  return out;
}

}  // namespace triad
