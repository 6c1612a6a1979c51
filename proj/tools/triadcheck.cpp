#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "triad/report.hpp"

using namespace triad;

namespace {

const char* scope_name(CheckScope s) {
  switch (s) {
    case CheckScope::per_point: return "per point";
    case CheckScope::per_c: return "per point and c";
    case CheckScope::per_map: return "per point, c and strict contactomorphism";
  }
  return "";
}

int list_examples() {
  for (const auto& s : catalog()) {
    std::printf("%-16s dim %d  %s\n", s.id.c_str(), s.dim, s.description.c_str());
    for (const auto& m : s.maps) std::printf("%18s map %s\n", "", m.label.c_str());
  }
  return 0;
}

int describe_check(const std::string& name) {
  const CheckInfo* c = find_check(name);
  if (!c) {
    std::fprintf(stderr, "unknown check '%s'\n", name.c_str());
    return 2;
  }
  std::printf("%s\n  anchor:    %s\n  meaning:   %s\n  tolerance: %.1e\n  scope:     %s\n", c->name.c_str(),
              c->anchor.c_str(), c->description.c_str(), c->tolerance, scope_name(c->scope));
  if (c->control) std::printf("  negative control: detected when the residual reaches %.0e\n", kDetectionThreshold);
  return 0;
}

std::filesystem::path output_path(const std::string& out, const RunConfig& cfg, const std::string& format) {
  if (!out.empty()) return out;
  const char* dir = std::getenv("TRIADCONN_OUTPUT_DIR");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / (cfg.example + "-seed" + std::to_string(cfg.seed) + "." + format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual checks for the contact triad connection on chart examples"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "ad";
  std::string format = "json";
  std::string out;
  auto* check = app.add_subcommand("check", "run the check battery on one example");
  check->add_option("--example", cfg.example, "example id (see list-examples)")->required();
  check->add_option("--c", cfg.c_values, "comma-separated c values")->delimiter(',')->allow_extra_args(false);
  check->add_option("--points", cfg.points, "number of sampled points");
  check->add_option("--seed", cfg.seed, "sampling seed");
  check->add_option("--mode", mode, "differentiation mode: ad or fd");
  check->add_option("--fd-step", cfg.fd_step, "finite-difference step");
  check->add_option("--threads", cfg.threads, "worker threads");
  check->add_option("--format", format, "json or csv");
  check->add_option("--out", out, "output file (default: $TRIADCONN_OUTPUT_DIR or stdout)");
  check->add_flag("--negative-controls", cfg.negative_controls, "also run the fault injections");

  app.add_subcommand("list-examples", "print the example catalog");
  std::string check_name;
  auto* describe = app.add_subcommand("describe-check", "print the identity a check evaluates");
  describe->add_option("name", check_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (app.got_subcommand("list-examples")) return list_examples();
  if (app.got_subcommand("describe-check")) return describe_check(check_name);

  try {
    cfg.mode = parse_diff_mode(mode);
    const OutputFormat fmt = parse_format(format);
    validate(cfg);
    const Report report = run_suite(cfg);
    const std::string bytes = emit_report(report, fmt);
    const std::filesystem::path path = output_path(out, cfg, format);
    if (path.empty()) {
      std::cout << bytes;
    } else {
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write " + path.string());
      f << bytes;
    }
    std::fprintf(stderr, "%zu records, %d failed, %d undetected controls -> exit %d\n", report.results.size(),
                 report.failed_checks(), report.undetected_controls(), report.exit_code());
    return report.exit_code();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
