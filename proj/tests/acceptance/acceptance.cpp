#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "triad/report.hpp"

using namespace triad;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double r, const std::string& at) {
    if (!(r <= value)) {
      value = r;
      where = at;
    }
  }
};

std::string fmt(const char* f, double a, const std::string& s = "") {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, s.c_str());
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs f(spec, triad, point, rng) at `points` seeded points of every catalog triad.
void for_catalog(int points, const std::function<void(const ExampleSpec&, const ContactTriad&, const Point&,
                                                      std::mt19937_64&)>& f) {
  for (const auto& spec : catalog()) {
    const ContactTriad t = spec.build({});
    std::mt19937_64 rng(2024);
    for (int i = 0; i < points; ++i) {
      const Point p = sample_point(spec, rng);
      f(spec, t, p, rng);
    }
  }
}

const double kCs[] = {-1.0, 0.0, 1.0};

Outcome existence() {
  const auto t0 = std::chrono::steady_clock::now();
  Worst w;
  for_catalog(20, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
    for (const auto& r : check_axioms(triad_connection(t, 0.0), 0.0, p, rng)) w.update(r.residual, s.id + " " + r.name);
  });
  const double secs = seconds_since(t0);
  return {w.value <= 1e-8 && secs < 10.0,
          fmt("max axiom residual %.3e (%s)", w.value, w.where) + fmt(", %.2f s", secs)};
}

Outcome family_axioms() {
  Worst w;
  for_catalog(10, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
    for (const double c : kCs)
      for (const auto& r : check_axioms(triad_connection(t, c), c, p, rng)) w.update(r.residual, s.id + " " + r.name);
  });
  return {w.value <= 1e-8, fmt("max residual over c in {-1,0,1} %.3e (%s)", w.value, w.where)};
}

Outcome uniqueness() {
  Worst w;
  for_catalog(10, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64&) {
    const MovingFrame f = build_unitary_frame(t, p);
    for (const double c : kCs) w.update(cross_check_gamma(t, c, f, p).max_abs, s.id);
  });
  return {w.value <= 1e-7, fmt("max Gamma discrepancy %.3e (%s)", w.value, w.where)};
}

Outcome explicit_formula() {
  Worst formula, torsion;
  for_catalog(10, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
    for (const auto& r : check_lemma_suite(t, p, rng)) {
      if (r.name == "tmp1.explicit_formula") formula.update(r.residual, s.id);
      if (r.name == "tmp1.torsion_nijenhuis") torsion.update(r.residual, s.id);
    }
  });
  return {formula.value <= 1e-12 && torsion.value <= 1e-7,
          fmt("|nabla^{lambda;-1} - (LC + B1)| %.3e", formula.value) +
              fmt(", |pi T - N/4| %.3e (%s)", torsion.value, torsion.where)};
}

std::map<std::string, Worst> family_worst() {
  std::map<std::string, Worst> w;
  for_catalog(10, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
    for (const double c : kCs)
      for (const auto& r : check_family(t, c, p, rng)) w[r.name].update(r.residual, s.id);
  });
  return w;
}

Outcome torsion_values(std::map<std::string, Worst>& fam) {
  const Worst& l = fam["family.torsion_lambda"];
  const Worst& x = fam["family.torsion_xi"];
  return {l.value <= 1e-8 && x.value <= 1e-7,
          fmt("lambda part %.3e", l.value) + fmt(", xi part %.3e (%s)", x.value, x.where)};
}

Outcome reeb_derivative(std::map<std::string, Worst>& fam) {
  const Worst& w = fam["family.reeb_derivative"];
  return {w.value <= 1e-7, fmt("max residual %.3e (%s)", w.value, w.where)};
}

Outcome cr_holomorphic() {
  Worst cr;
  double weakest_defect = INFINITY;
  std::string weakest;
  for (const auto& spec : catalog()) {
    const ContactTriad t = spec.build({});
    std::mt19937_64 rng(2024);
    double defect = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Point p = sample_point(spec, rng);
      for (const auto& r : check_cr_form(triad_connection(t, 0.0), p, rng)) cr.update(r.residual, spec.id + " " + r.name);
      defect = std::max(defect, check_cr_control(t, 1.0, p, rng).residual);
    }
    if (defect < weakest_defect) {
      weakest_defect = defect;
      weakest = spec.id;
    }
  }
  return {cr.value <= 1e-8 && weakest_defect >= kDetectionThreshold,
          fmt("c = 0 residual %.3e (%s)", cr.value, cr.where) +
              fmt(", smallest c = 1 defect %.3e (%s)", weakest_defect, weakest)};
}

Outcome scaling() {
  Worst literal, corrected;
  for (const char* id : {"r3-standard", "r3-perturbed-J"}) {
    const ExampleSpec spec = find_example(id);
    const ContactTriad t = spec.build({});
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10; ++i) {
      const Point p = sample_point(spec, rng);
      literal.update(check_scaling(t, 2.0, p, rng, ScalingForm::literal).residual, id);
      corrected.update(check_scaling(t, 2.0, p, rng, ScalingForm::corrected).residual, id);
    }
  }
  return {literal.value <= 1e-7, fmt("|nabla^{2 lambda;1} - nabla^{lambda;2}| %.3e (%s)", literal.value, literal.where) +
                                     fmt("; with the Reeb component rescaled by 1/2 the gap is %.3e", corrected.value)};
}

Outcome naturality() {
  Worst w;
  int maps = 0;
  for_catalog(10, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
    for (const auto& m : s.maps)
      for (const double c : kCs) {
        const CheckResult r = check_naturality(t, m, c, p, rng);
        w.update(std::isnan(r.residual) ? INFINITY : r.residual, s.id + " " + m.label);
        ++maps;
      }
  });
  return {w.value <= 1e-7, fmt("max residual %.3e (%s)", w.value, w.where) + fmt(" over %.0f evaluations", maps)};
}

Outcome lemma_suite() {
  Worst w;
  bool within = true;
  for_catalog(10, [&](const ExampleSpec& s, const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
    for (const auto& r : check_lemma_suite(t, p, rng)) {
      w.update(r.residual, s.id + " " + r.name);
      within = within && r.pass;
    }
  });
  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& spec : catalog()) {
    RunConfig cfg;
    cfg.example = spec.id;
    cfg.negative_controls = true;
    const Report r = run_suite(cfg);
    for (const auto& x : r.results) failures += !x.control && !x.pass;
  }
  const double secs = seconds_since(t0);
  return {within && w.value <= 1e-7 && secs < 60.0,
          fmt("max residual %.3e (%s)", w.value, w.where) +
              fmt(", full suite on the catalog %.2f s", secs) + fmt(", %.0f failing records", failures)};
}

Outcome discrimination() {
  const ExampleSpec spec = find_example("r5-perturbed-J");
  const ContactTriad t = spec.build({});
  std::mt19937_64 rng(2024);
  std::map<std::string, double> worst;
  double lc_axiom2 = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Point p = sample_point(spec, rng);
    for (const auto& r : check_controls(spec, t, p, rng)) {
      worst[r.name] = std::max(worst[r.name], r.residual);
      if (r.name == "control.levi_civita") lc_axiom2 = std::max(lc_axiom2, r.witness.back()[0]);
    }
  }
  const double b1 = worst["control.b1_sign_flip"], wc = worst["control.wrong_c"], lc = worst["control.levi_civita"];
  const bool ok = b1 >= 1e-3 && wc >= 1e-3 && lc >= 1e-3;
  return {ok, fmt("sign-flipped B1 %.3e", b1) + fmt(", wrong c %.3e", wc) +
                  fmt(", Levi-Civita J-linearity %.3e", lc) + fmt(" (its torsion-type residual is %.1e)", lc_axiom2)};
}

Outcome engines() {
  Worst w;
  for (const auto& spec : catalog()) {
    const ContactTriad ad = spec.build(DiffEngine{DiffMode::forward, 1e-4});
    const ContactTriad fd = spec.build(DiffEngine{DiffMode::central_difference, 1e-4});
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 10; ++i) {
      const Point p = sample_point(spec, rng);
      std::vector<std::pair<AffineConnection, AffineConnection>> pairs = {{levi_civita(ad), levi_civita(fd)}};
      for (const double c : kCs) pairs.emplace_back(triad_connection(ad, c), triad_connection(fd, c));
      for (const auto& [a, f] : pairs) {
        const LocalConnection la = a.at(p), lf = f.at(p);
        for (int u = 0; u < spec.dim; ++u)
          for (int v = 0; v < spec.dim; ++v) {
            const Point eu = Point::unit(spec.dim, u), ev = Point::unit(spec.dim, v);
            w.update(norm_inf(la.correction(eu, ev) - lf.correction(eu, ev)), spec.id + " " + a.label());
          }
      }
    }
  }
  return {w.value <= 1e-6, fmt("max coefficient gap %.3e (%s)", w.value, w.where)};
}

}  // namespace

int main() {
  std::map<std::string, Worst> fam = family_worst();
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"existence", existence},
      {"generalized family", family_axioms},
      {"uniqueness oracle", uniqueness},
      {"explicit formula", explicit_formula},
      {"torsion values", [&] { return torsion_values(fam); }},
      {"Reeb covariant derivative", [&] { return reeb_derivative(fam); }},
      {"CR-holomorphicity", cr_holomorphic},
      {"scaling law", scaling},
      {"naturality", naturality},
      {"Levi-Civita lemma suite", lemma_suite},
      {"suite discrimination", discrimination},
      {"engine cross-validation", engines},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %2d %-26s %s  %s\n", index++, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::printf("%d of 12 criteria pass\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
