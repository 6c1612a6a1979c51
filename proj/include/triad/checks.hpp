#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "triad/catalog.hpp"
#include "triad/connection.hpp"
#include "triad/frame.hpp"

namespace triad {

inline constexpr double kAlgebraicTol = 1e-8;
inline constexpr double kDerivativeTol = 1e-7;
/// A negative control counts as detected once some residual reaches this.
inline constexpr double kDetectionThreshold = 1e-3;

struct CheckResult {
  std::string name;
  std::string anchor;
  std::optional<double> c;
  int point_index = 0;
  Point point;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool control = false;  // negative control: expected to exceed kDetectionThreshold
  std::vector<Point> witness;
  std::string error;
};

enum class CheckScope { per_point, per_c, per_map };

struct CheckInfo {
  std::string name;
  std::string anchor;
  std::string description;
  double tolerance = kAlgebraicTol;
  CheckScope scope = CheckScope::per_point;
  bool control = false;
};

/// Every check the suite can emit, in registry order. Naturality results are
/// named "naturality.<map label>" and share the "naturality" entry.
const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(const std::string& name);

/// Builds a result from the registry entry for `name`.
CheckResult make_result(const std::string& name, double residual, std::vector<Point> witness = {});

/// Random draws per check and point.
inline constexpr int kSamples = 3;

/// The six defining axioms for `conn`, with (5) read as (5; c_target).
/// Names: axiom1.j_linear, axiom1.metric, axiom2.torsion_type, axiom3.reeb_torsion,
/// axiom4.reeb_geodesic, axiom5.reeb_j, axiom6.reeb_metric.
std::vector<CheckResult> check_axioms(const AffineConnection& conn, double c_target, const Point& p,
                                      std::mt19937_64& rng);

/// cr.reeb = |nabla_X lambda|, cr.xi = |nabla_Y lambda + J nabla_{JY} lambda|.
std::vector<CheckResult> check_cr_form(const AffineConnection& conn, const Point& p, std::mt19937_64& rng);

enum class ScalingForm {
  /// nabla^{a lambda;1}_u v = nabla^{lambda;a}_u v + (1 - 1/a) <nabla^{lambda;a}_{pi u} X_lambda, pi v> X_lambda
  corrected,
  /// nabla^{a lambda;1} = nabla^{lambda;a} as an equality of connections
  literal,
  /// the corrected form with nabla^{lambda;1} on the right (negative control)
  wrong_c,
};

/// Compares nabla^{a lambda;1} with the right side selected by `form` on random fields.
/// The two connections differ exactly in the Reeb component of nabla_Y Z for
/// Y, Z in xi: the metric of a lambda is not a constant multiple of the metric
/// of lambda, so <X, nabla_Y Z> = -<nabla_Y X, Z> rescales differently.
CheckResult check_scaling(const ContactTriad& triad, double a, const Point& p, std::mt19937_64& rng,
                          ScalingForm form = ScalingForm::corrected);

/// (phi^* nabla)_X Y against the connection of (Q, lambda, phi^* J) at p.
CheckResult check_naturality(const ContactTriad& triad, const StrictContactMap& phi, double c, const Point& p,
                             std::mt19937_64& rng);

/// Levi-Civita identities (lc.*) and the first modification (tmp1.*).
std::vector<CheckResult> check_lemma_suite(const ContactTriad& triad, const Point& p, std::mt19937_64& rng);

/// Properties of nabla^{lambda;c} for a given c (family.*).
std::vector<CheckResult> check_family(const ContactTriad& triad, double c, const Point& p, std::mt19937_64& rng);

/// frame.orthonormal and frame.structure_lc.
std::vector<CheckResult> check_frame(const ContactTriad& triad, const Point& p);
/// frame.cross_check_gamma, frame.structure, frame.skew_hermitian for one c.
std::vector<CheckResult> check_frame_family(const ContactTriad& triad, double c, const Point& p);

/// Fault injections. control.wrong_c and control.scaling always apply;
/// control.b1_sign_flip and control.levi_civita only discriminate when J is
/// not integrable on xi and are emitted only then.
std::vector<CheckResult> check_controls(const ExampleSpec& spec, const ContactTriad& triad, const Point& p,
                                        std::mt19937_64& rng);

/// The CR control: cr.xi of nabla^{lambda;c} for c != 0.
CheckResult check_cr_control(const ContactTriad& triad, double c, const Point& p, std::mt19937_64& rng);

}  // namespace triad
