#include "triad/checks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace triad {

namespace {

using Scope = CheckScope;

CheckInfo info(std::string name, std::string anchor, std::string description, double tol, Scope scope,
               bool control = false) {
  return {std::move(name), std::move(anchor), std::move(description), tol, scope, control};
}

}  // namespace

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> registry = {
      info("axiom1.j_linear", "pi nabla_X(JY) = J pi nabla_X Y for Y in xi",
           "xi-part of the connection commutes with J", kAlgebraicTol, Scope::per_c),
      info("axiom1.metric", "X<Y,Z> = <pi nabla_X Y, Z> + <Y, pi nabla_X Z> for Y, Z in xi",
           "xi-part of the connection preserves the metric on xi", kAlgebraicTol, Scope::per_c),
      info("axiom2.torsion_type", "T^pi(JY, Y) = 0 for Y in xi", "xi-torsion has no (1,1) part",
           kAlgebraicTol, Scope::per_c),
      info("axiom3.reeb_torsion", "T(X_lambda, Y) = 0 for all Y", "Reeb field is torsion-free against everything",
           kAlgebraicTol, Scope::per_c),
      info("axiom4.reeb_geodesic", "nabla_{X_lambda} X_lambda = 0 and nabla_Y X_lambda in xi",
           "Reeb orbits are geodesics and nabla X_lambda stays in xi", kAlgebraicTol, Scope::per_c),
      info("axiom5.reeb_j", "nabla_{JY} X_lambda + J nabla_Y X_lambda = c Y for Y in xi",
           "Reeb derivative condition with parameter c", kAlgebraicTol, Scope::per_c),
      info("axiom6.reeb_metric", "<nabla_Y X_lambda, Z> + <X_lambda, nabla_Y Z> = 0 for Y, Z in xi",
           "metric compatibility between xi and the Reeb line", kAlgebraicTol, Scope::per_c),
      info("cr.reeb", "nabla_{X_lambda} lambda = 0", "lambda is parallel along the Reeb field", kAlgebraicTol,
           Scope::per_c),
      info("cr.xi", "nabla_Y lambda + J nabla_{JY} lambda = 0 for Y in xi",
           "lambda is CR-holomorphic (run for c = 0)", kAlgebraicTol, Scope::per_c),
      info("family.metric", "X<Y,Z> = <nabla_X Y, Z> + <Y, nabla_X Z>",
           "the connection is metric for the triad metric", kAlgebraicTol, Scope::per_c),
      info("family.reeb_derivative", "nabla_Y X_lambda = -1/2 c JY + 1/2 (L_{X_lambda} J) JY for Y in xi",
           "closed form of the Reeb derivative", kDerivativeTol, Scope::per_c),
      info("family.torsion_lambda", "lambda(T(Y,Z)) = (1+c) dlambda(Y,Z) for Y, Z in xi",
           "Reeb component of the xi-torsion", kAlgebraicTol, Scope::per_c),
      info("family.torsion_xi", "pi T(Y,Z) = 1/4 (L_{JY} J) Z + 1/4 (L_Y J) JZ for Y, Z in xi",
           "xi component of the xi-torsion", kDerivativeTol, Scope::per_c),
      info("family.torsion_type", "T^pi(JY,Z) = T^pi(Y,JZ) and J T^pi(JY,Z) = T^pi(Y,Z) for Y, Z in xi",
           "real form of the (0,2) type of the xi-torsion", kAlgebraicTol, Scope::per_c),
      info("family.reeb_parallel_dlambda", "nabla_{X_lambda} dlambda = 0",
           "dlambda is parallel along the Reeb field", kAlgebraicTol, Scope::per_c),
      info("frame.cross_check_gamma", "closed-form Gamma^i_{k,j} = <nabla_{e_k} e_j, e_i> on entries with a 0 index",
           "frame coefficients derived from the axioms against the direct connection", kDerivativeTol,
           Scope::per_c),
      info("frame.structure", "d theta^j + Omega^j_k ^ theta^k = theta^j(T)",
           "first structure equation of the triad connection", kDerivativeTol, Scope::per_c),
      info("frame.skew_hermitian", "(Omega^i_j + i Omega^{n+i}_j)|_xi is skew-Hermitian",
           "complex-linear skew connection matrix on xi", kAlgebraicTol, Scope::per_c),
      info("naturality", "phi^* nabla of (lambda, J) = nabla of (lambda, phi^* J) for phi^* lambda = lambda",
           "pullback by a strict contactomorphism", kDerivativeTol, Scope::per_map),
      info("lc.metric_dlambda", "dlambda(JY,JZ) = dlambda(Y,Z), <Y,JZ> = -dlambda(Y,Z), <JY,JZ> = dlambda(Y,JZ)",
           "triad metric against dlambda", kAlgebraicTol, Scope::per_point),
      info("lc.reeb_lie_symmetric", "<(L_{X_lambda} J) Y, Z> = <Y, (L_{X_lambda} J) Z> for Y, Z in xi",
           "L_{X_lambda} J is symmetric", kAlgebraicTol, Scope::per_point),
      info("lc.reeb_geodesic", "nabla^LC_{X_lambda} X_lambda = 0 and nabla^LC_Z X_lambda in xi",
           "Reeb foliation is geodesic for Levi-Civita", kDerivativeTol, Scope::per_point),
      info("lc.nabla_j_nijenhuis",
           "2<(nabla^LC_X J) Y, Z> = <N(Y,Z), JX> - <JX,JY> lambda(Z) + <JX,JZ> lambda(Y)",
           "Levi-Civita derivative of J through the Nijenhuis tensor", kDerivativeTol, Scope::per_point),
      info("lc.nijenhuis_reeb", "N(X_lambda, Z) = -J (L_{X_lambda} J) Z for Z in xi",
           "Nijenhuis tensor against the Reeb field", kDerivativeTol, Scope::per_point),
      info("lc.nijenhuis_j", "J N(Y,JZ) = Pi N(Y,Z) and Pi N(Y,JZ) + Pi N(Z,JY) = 0 for Y, Z in xi",
           "J-relations of the Nijenhuis tensor", kDerivativeTol, Scope::per_point),
      info("lc.nabla_j_xi", "Pi (nabla^LC_{JY} J) X + J (nabla^LC_Y J) X = 0 for X, Y in xi",
           "vanishing combination of Levi-Civita derivatives of J", kDerivativeTol, Scope::per_point),
      info("lc.reeb_parallel_j", "nabla^LC_{X_lambda} J = 0", "J is Levi-Civita parallel along the Reeb field",
           kDerivativeTol, Scope::per_point),
      info("lc.reeb_derivative", "nabla^LC_Y X_lambda = 1/2 JY + 1/2 (L_{X_lambda} J) JY for Y in xi",
           "Levi-Civita derivative of the Reeb field", kDerivativeTol, Scope::per_point),
      info("lc.bracket_identity", "-P(Y,Z) + P(Z,Y) = 1/4 ([JY,JZ] - Pi[Y,Z] - J[JY,Z] - J[Y,JZ]) for Y, Z in xi",
           "antisymmetric part of P through brackets", kDerivativeTol, Scope::per_point),
      info("tmp1.explicit_formula", "nabla^{lambda;-1} = nabla^LC + B1",
           "c = -1 member equals the first modification", 1e-12, Scope::per_point),
      info("tmp1.j_linear", "pi nabla^tmp1_X (JY) = J pi nabla^tmp1_X Y for Y in xi",
           "first modification is J-linear on xi", kDerivativeTol, Scope::per_point),
      info("tmp1.p_skew", "<P(X,Y), Z> + <Y, P(X,Z)> = 0 for X, Y, Z in xi", "P is metric-skew on xi",
           kAlgebraicTol, Scope::per_point),
      info("tmp1.hermitian", "X<Y,Z> = <nabla^tmp1_X Y, Z> + <Y, nabla^tmp1_X Z> for Y, Z in xi",
           "first modification is metric on xi", kDerivativeTol, Scope::per_point),
      info("tmp1.reeb_metric", "<nabla^tmp1_Y X_lambda, Z> + <X_lambda, nabla^tmp1_Y Z> = 0 for Y, Z in xi",
           "first modification against the Reeb line", kDerivativeTol, Scope::per_point),
      info("tmp1.torsion_nijenhuis", "pi T^tmp1(Y,Z) = 1/4 pi N(Y,Z) and lambda(T^tmp1(Y,Z)) = 0 for Y, Z in xi",
           "torsion of the first modification", kDerivativeTol, Scope::per_point),
      info("scaling",
           "nabla^{2 lambda;1}_u v = nabla^{lambda;2}_u v + 1/2 <nabla^{lambda;2}_{pi u} X_lambda, pi v> X_lambda",
           "scaling law for a = 2 with the Reeb component of xi-derivatives rescaled", kDerivativeTol,
           Scope::per_point),
      info("scaling.literal", "nabla^{2 lambda;1} = nabla^{lambda;2}",
           "scaling law for a = 2 read as an equality of connections (does not hold; acceptance only)",
           kDerivativeTol, Scope::per_point),
      info("frame.orthonormal", "Gram(e) = I, theta(e) = I, e_{n+i} = J e_i",
           "unitary frame and dual coframe", 1e-9, Scope::per_point),
      info("frame.structure_lc", "d theta^j + Omega^j_k ^ theta^k = 0 for Levi-Civita",
           "first structure equation, torsion-free case", kDerivativeTol, Scope::per_point),
      info("control.wrong_c", "nabla^{lambda;1} against nabla_{JY} X_lambda + J nabla_Y X_lambda = 0",
           "negative control: wrong c in axiom 5", kAlgebraicTol, Scope::per_point, true),
      info("control.scaling", "nabla^{2 lambda;1} against the rescaled nabla^{lambda;1}",
           "negative control: scaling law with the wrong right side", kDerivativeTol, Scope::per_point, true),
      info("control.b1_sign_flip", "pi T = 1/4 pi N on xi with B1 negated",
           "negative control: sign-flipped B1 in the first modification", kDerivativeTol, Scope::per_point,
           true),
      info("control.levi_civita", "pi nabla^LC_X (JY) = J pi nabla^LC_X Y for Y in xi",
           "negative control: Levi-Civita against axiom 1 J-linearity (axiom 2 value in witness)",
           kAlgebraicTol, Scope::per_point, true),
      info("control.cr", "nabla_Y lambda + J nabla_{JY} lambda = 0 for c != 0",
           "negative control: CR-holomorphicity of lambda fails away from c = 0", kAlgebraicTol, Scope::per_c,
           true),
  };
  return registry;
}

const CheckInfo* find_check(const std::string& name) {
  std::string base = name;
  if (name.rfind("naturality.", 0) == 0) base = "naturality";
  for (const auto& c : check_registry())
    if (c.name == base) return &c;
  return nullptr;
}

CheckResult make_result(const std::string& name, double residual, std::vector<Point> witness) {
  const CheckInfo* ci = find_check(name);
  if (!ci) throw std::logic_error("unregistered check " + name);
  CheckResult r;
  r.name = name;
  r.anchor = ci->anchor;
  r.tolerance = ci->tolerance;
  r.control = ci->control;
  r.residual = residual;
  r.pass = residual <= ci->tolerance;
  r.witness = std::move(witness);
  return r;
}

namespace {

// Keeps the worst residual over several random draws together with its inputs.
struct Worst {
  double value = 0.0;
  std::vector<Point> witness;
  void update(double r, std::vector<Point> w) {
    if (!(r <= value)) {
      value = r;
      witness = std::move(w);
    }
  }
};

double vnorm(const PointGeometry& geo, const Point& v) { return std::sqrt(std::max(0.0, geo.inner(v, v))); }

double cnorm(const PointGeometry& geo, const Point& a) {
  return std::sqrt(std::max(0.0, bilinear(geo.metric_inv, a, a)));
}

Point xi_vector(const PointGeometry& geo, std::mt19937_64& rng) { return random_xi_vector(geo.lc, rng); }
Point tangent_vector(const PointGeometry& geo, std::mt19937_64& rng) { return random_tangent_vector(geo.lc, rng); }

Mat<double> random_matrix(int dim, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g;
  Mat<double> m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = scale * g(rng);
  return m;
}

// q -> v + M (q - p) + (q - p)_0^2 u: a non-constant field with value v at p.
VectorField random_field(const Point& v, const Point& p, std::mt19937_64& rng) {
  const int dim = v.size();
  const Mat<double> m = random_matrix(dim, rng, 0.5);
  const Point u = gaussian_vector(dim, rng) * 0.3;
  return VectorField::make<2>([v, p, m, u](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    const Vec<S> d = q - Vec<S>(p);
    return Vec<S>(v) + Mat<S>(m) * d + Vec<S>(u) * (d[0] * d[0]);
  });
}

// A xi-section with value v (in xi) at p.
VectorField random_xi_section(const ContactTriad& t, const Point& v, const Point& p, std::mt19937_64& rng) {
  return t.project(random_field(v, p, rng));
}

double metric_derivative(const ContactTriad& t, const Point& x, const VectorField& y, const VectorField& z,
                         const Point& p) {
  return t.engine().directional(
      [&](const auto& q) { return bilinear(t.local(q).metric, y(q), z(q)); }, p, x);
}

Mat<double> lie_j(const ContactTriad& t, const VectorField& v, const Point& p) {
  return lie_derivative_endo(t.engine(), v, t.j_field(), p);
}

// Axiom 1 J-linearity residual of a frozen connection.
double j_linearity(const ContactTriad& t, const LocalConnection& at, const Point& x, const VectorField& y) {
  const PointGeometry& geo = at.geometry();
  const Point a = geo.pi(at.nabla(x, t.apply_j(y)));
  const Point b = geo.j(geo.pi(at.nabla(x, y)));
  return vnorm(geo, a - b);
}

double xi_metric_defect(const ContactTriad& t, const LocalConnection& at, const Point& x, const VectorField& y,
                        const VectorField& z) {
  const PointGeometry& geo = at.geometry();
  const Point& p = at.point();
  const double lhs = metric_derivative(t, x, y, z, p);
  return std::abs(lhs - geo.inner(geo.pi(at.nabla(x, y)), z(p)) - geo.inner(y(p), geo.pi(at.nabla(x, z))));
}

}  // namespace

std::vector<CheckResult> check_axioms(const AffineConnection& conn, double c_target, const Point& p,
                                      std::mt19937_64& rng) {
  const ContactTriad& t = conn.triad();
  const LocalConnection at = conn.at(p);
  const PointGeometry& geo = at.geometry();
  const Point& reeb = geo.lc.reeb;
  const VectorField reeb_f = t.reeb_field();
  Worst a1j, a1m, a2, a3, a4, a5, a6;
  for (int s = 0; s < kSamples; ++s) {
    const Point x = tangent_vector(geo, rng);
    const Point y = xi_vector(geo, rng);
    const Point z = xi_vector(geo, rng);
    const VectorField yf = random_xi_section(t, y, p, rng);
    const VectorField zf = random_xi_section(t, z, p, rng);
    a1j.update(j_linearity(t, at, x, yf), {x, y});
    a1m.update(xi_metric_defect(t, at, x, yf, zf), {x, y, z});
    a2.update(vnorm(geo, geo.pi(at.torsion(geo.j(y), y))), {y});
    a3.update(vnorm(geo, at.torsion(reeb, x)), {x});
    const Point ny = at.nabla(y, reeb_f);
    a4.update(std::max(vnorm(geo, at.nabla(reeb, reeb_f)), std::abs(geo.lambda(ny))), {y});
    a5.update(vnorm(geo, at.nabla(geo.j(y), reeb_f) + geo.j(ny) - y * c_target), {y});
    a6.update(std::abs(geo.inner(ny, z) + geo.inner(reeb, at.nabla(y, zf))), {y, z});
  }
  return {
      make_result("axiom1.j_linear", a1j.value, a1j.witness),
      make_result("axiom1.metric", a1m.value, a1m.witness),
      make_result("axiom2.torsion_type", a2.value, a2.witness),
      make_result("axiom3.reeb_torsion", a3.value, a3.witness),
      make_result("axiom4.reeb_geodesic", a4.value, a4.witness),
      make_result("axiom5.reeb_j", a5.value, a5.witness),
      make_result("axiom6.reeb_metric", a6.value, a6.witness),
  };
}

namespace {

// |nabla_Y lambda + J nabla_{JY} lambda| with (J alpha)(v) = alpha(Jv), worst over draws.
Worst cr_xi_defect(const ContactTriad& t, const LocalConnection& at, std::mt19937_64& rng) {
  const PointGeometry& geo = at.geometry();
  Worst w;
  for (int s = 0; s < kSamples; ++s) {
    const Point y = xi_vector(geo, rng);
    const Point a = at.nabla_form(y, t.lambda());
    const Point b = at.nabla_form(geo.j(y), t.lambda());
    w.update(cnorm(geo, a + row_times(b, geo.lc.j)), {y});
  }
  return w;
}

}  // namespace

std::vector<CheckResult> check_cr_form(const AffineConnection& conn, const Point& p, std::mt19937_64& rng) {
  const ContactTriad& t = conn.triad();
  const LocalConnection at = conn.at(p);
  const PointGeometry& geo = at.geometry();
  const double reeb = cnorm(geo, at.nabla_form(geo.lc.reeb, t.lambda()));
  const Worst xi = cr_xi_defect(t, at, rng);
  return {make_result("cr.reeb", reeb), make_result("cr.xi", xi.value, xi.witness)};
}

CheckResult check_cr_control(const ContactTriad& triad, double c, const Point& p, std::mt19937_64& rng) {
  const Worst xi = cr_xi_defect(triad, triad_connection(triad, c).at(p), rng);
  return make_result("control.cr", xi.value, xi.witness);
}

CheckResult check_scaling(const ContactTriad& triad, double a, const Point& p, std::mt19937_64& rng,
                          ScalingForm form) {
  if (!(a > 0.0)) throw std::invalid_argument("scaling factor must be positive");
  const LocalConnection lhs = triad_connection(triad.scaled(a), 1.0).at(p);
  const LocalConnection rhs = triad_connection(triad, form == ScalingForm::wrong_c ? 1.0 : a).at(p);
  const PointGeometry& geo = rhs.geometry();
  const VectorField reeb_f = triad.reeb_field();
  Worst w;
  for (int s = 0; s < kSamples; ++s) {
    const Point x = tangent_vector(geo, rng);
    const Point y = tangent_vector(geo, rng);
    const VectorField yf = random_field(y, p, rng);
    Point expected = rhs.nabla(x, yf);
    if (form != ScalingForm::literal)
      expected += geo.lc.reeb * ((1.0 - 1.0 / a) * geo.inner(rhs.nabla(geo.pi(x), reeb_f), geo.pi(y)));
    w.update(vnorm(geo, lhs.nabla(x, yf) - expected), {x, y});
  }
  const char* name = form == ScalingForm::corrected ? "scaling" : form == ScalingForm::literal ? "scaling.literal"
                                                                                              : "control.scaling";
  return make_result(name, w.value, w.witness);
}

CheckResult check_naturality(const ContactTriad& triad, const StrictContactMap& phi, double c, const Point& p,
                             std::mt19937_64& rng) {
  const std::string name = "naturality." + phi.label;
  const double strict = strictness_residual(triad, phi, p);
  if (!(strict <= 1e-9)) {
    CheckResult r = make_result(name, std::numeric_limits<double>::quiet_NaN());
    r.pass = false;
    r.error = "map is not strict at this point: |phi^* lambda - lambda| = " + std::to_string(strict);
    return r;
  }
  const ContactTriad pulled = pullback_triad(triad, phi);
  const Point q = phi.forward(p);
  const Mat<double> dphi = phi.differential(p);
  const Mat<double> dinv = inverse(dphi);
  const LocalConnection at_q = triad_connection(triad, c).at(q);
  const LocalConnection at_p = triad_connection(pulled, c).at(p);
  const PointGeometry& geo = at_p.geometry();
  const DiffEngine& engine = triad.engine();
  Worst w;
  for (int s = 0; s < kSamples; ++s) {
    const Point x = tangent_vector(geo, rng);
    const Point y = tangent_vector(geo, rng);
    const VectorField yf = random_field(y, p, rng);
    // d/dt of (phi_* Y)(phi(p + t x)) = dphi(p + t x) Y(p + t x)
    const Point pushed =
        engine.directional([&phi, &yf](const auto& r) { return phi.differential(r) * yf(r); }, p, x);
    const Point lhs = dinv * (pushed + at_q.correction(dphi * x, dphi * y));
    w.update(vnorm(geo, lhs - at_p.nabla(x, yf)), {x, y});
  }
  return make_result(name, w.value, w.witness);
}

std::vector<CheckResult> check_lemma_suite(const ContactTriad& t, const Point& p, std::mt19937_64& rng) {
  const AffineConnection lc_conn = levi_civita(t);
  const LocalConnection lc = lc_conn.at(p);
  const LocalConnection tmp1 = triad_connection(t, -1.0).at(p);
  const PointGeometry& geo = lc.geometry();
  const LocalContact<double>& l = geo.lc;
  const Point& reeb = l.reeb;
  const VectorField reeb_f = t.reeb_field();
  const DiffEngine& engine = t.engine();
  const Mat<double> lj = lie_j(t, reeb_f, p);
  const EndoField j_f = t.j_field();

  Worst metric_dl, lie_sym, geod, nab_n, n_reeb, n_j, nab_xi, reeb_der, bracket;
  Worst explicit_formula, t_jlin, p_skew, t_herm, t_reeb, t_tors;
  for (int s = 0; s < kSamples; ++s) {
    const Point u = tangent_vector(geo, rng);
    const Point v = tangent_vector(geo, rng);
    const Point w = tangent_vector(geo, rng);
    const Point x = xi_vector(geo, rng);
    const Point y = xi_vector(geo, rng);
    const Point z = xi_vector(geo, rng);
    const VectorField yf = random_xi_section(t, y, p, rng);
    const VectorField zf = random_xi_section(t, z, p, rng);
    const VectorField jyf = t.apply_j(yf);
    const VectorField jzf = t.apply_j(zf);

    {
      const Mat<double>& dl = l.dlambda;
      const double r1 = std::abs(bilinear(dl, geo.j(u), geo.j(v)) - bilinear(dl, u, v));
      const double r2 = std::abs(geo.inner(u, geo.j(v)) + bilinear(dl, u, v));
      const double r3 = std::abs(geo.inner(geo.j(u), geo.j(v)) - bilinear(dl, u, geo.j(v)));
      const double r4 = std::abs(geo.inner(geo.j(u), v) + geo.inner(u, geo.j(v)));
      metric_dl.update(std::max({r1, r2, r3, r4}), {u, v});
    }
    lie_sym.update(std::abs(geo.inner(lj * y, z) - geo.inner(y, lj * z)), {y, z});
    geod.update(std::max(vnorm(geo, lc.nabla(reeb, reeb_f)), std::abs(geo.lambda(lc.nabla(u, reeb_f)))), {u});
    {
      const double lhs = 2.0 * geo.inner(lc.nabla_endo(u, j_f) * v, w);
      const double rhs = geo.inner(nijenhuis(t, v, w, p), geo.j(u)) -
                         geo.inner(geo.j(u), geo.j(v)) * geo.lambda(w) + geo.inner(geo.j(u), geo.j(w)) * geo.lambda(v);
      nab_n.update(std::abs(lhs - rhs), {u, v, w});
    }
    n_reeb.update(vnorm(geo, nijenhuis(t, reeb, z, p) + geo.j(lj * z)), {z});
    {
      const Point a = geo.j(nijenhuis(t, y, geo.j(z), p)) - geo.pi(nijenhuis(t, y, z, p));
      const Point b = geo.pi(nijenhuis(t, y, geo.j(z), p) + nijenhuis(t, z, geo.j(y), p));
      n_j.update(std::max(vnorm(geo, a), vnorm(geo, b)), {y, z});
    }
    nab_xi.update(vnorm(geo, geo.pi(lc.nabla_endo(geo.j(y), j_f) * x) + geo.j(lc.nabla_endo(y, j_f) * x)), {x, y});
    reeb_der.update(vnorm(geo, lc.nabla(y, reeb_f) - geo.j(y) * 0.5 - lj * geo.j(y) * 0.5), {y});
    {
      const Point lhs = tensor_P(geo, z, y) - tensor_P(geo, y, z);
      const Point brackets = lie_bracket(engine, jyf, jzf, p) - geo.pi(lie_bracket(engine, yf, zf, p)) -
                             geo.j(lie_bracket(engine, jyf, zf, p)) - geo.j(lie_bracket(engine, yf, jzf, p));
      bracket.update(vnorm(geo, lhs - brackets * 0.25), {y, z});
    }
    explicit_formula.update(norm_inf(tmp1.correction(u, v) - lc.correction(u, v) - tensor_B1(geo, u, v)), {u, v});
    t_jlin.update(j_linearity(t, tmp1, u, yf), {u, y});
    p_skew.update(std::abs(geo.inner(tensor_P(geo, x, y), z) + geo.inner(y, tensor_P(geo, x, z))), {x, y, z});
    t_herm.update(xi_metric_defect(t, tmp1, u, yf, zf), {u, y, z});
    t_reeb.update(std::abs(geo.inner(tmp1.nabla(y, reeb_f), z) + geo.inner(reeb, tmp1.nabla(y, zf))), {y, z});
    {
      const Point tt = tmp1.torsion(y, z);
      const Point n = nijenhuis(t, y, z, p);
      const double r = std::max({vnorm(geo, geo.pi(tt) - geo.pi(n) * 0.25), std::abs(geo.lambda(tt)),
                                 vnorm(geo, tmp1.torsion(reeb, y))});
      t_tors.update(r, {y, z});
    }
  }
  return {
      make_result("lc.metric_dlambda", metric_dl.value, metric_dl.witness),
      make_result("lc.reeb_lie_symmetric", lie_sym.value, lie_sym.witness),
      make_result("lc.reeb_geodesic", geod.value, geod.witness),
      make_result("lc.nabla_j_nijenhuis", nab_n.value, nab_n.witness),
      make_result("lc.nijenhuis_reeb", n_reeb.value, n_reeb.witness),
      make_result("lc.nijenhuis_j", n_j.value, n_j.witness),
      make_result("lc.nabla_j_xi", nab_xi.value, nab_xi.witness),
      make_result("lc.reeb_parallel_j", norm_inf(lc.nabla_endo(reeb, j_f))),
      make_result("lc.reeb_derivative", reeb_der.value, reeb_der.witness),
      make_result("lc.bracket_identity", bracket.value, bracket.witness),
      make_result("tmp1.explicit_formula", explicit_formula.value, explicit_formula.witness),
      make_result("tmp1.j_linear", t_jlin.value, t_jlin.witness),
      make_result("tmp1.p_skew", p_skew.value, p_skew.witness),
      make_result("tmp1.hermitian", t_herm.value, t_herm.witness),
      make_result("tmp1.reeb_metric", t_reeb.value, t_reeb.witness),
      make_result("tmp1.torsion_nijenhuis", t_tors.value, t_tors.witness),
  };
}

std::vector<CheckResult> check_family(const ContactTriad& t, double c, const Point& p, std::mt19937_64& rng) {
  const AffineConnection conn = triad_connection(t, c);
  const LocalConnection at = conn.at(p);
  const PointGeometry& geo = at.geometry();
  const VectorField reeb_f = t.reeb_field();
  const Mat<double> lj = lie_j(t, reeb_f, p);
  Worst metric, reeb_der, tors_l, tors_x, tors_type;
  for (int s = 0; s < kSamples; ++s) {
    const Point x = tangent_vector(geo, rng);
    const Point u = tangent_vector(geo, rng);
    const Point v = tangent_vector(geo, rng);
    const VectorField uf = random_field(u, p, rng);
    const VectorField vf = random_field(v, p, rng);
    metric.update(std::abs(metric_derivative(t, x, uf, vf, p) - geo.inner(at.nabla(x, uf), v) -
                           geo.inner(u, at.nabla(x, vf))),
                  {x, u, v});

    const Point y = xi_vector(geo, rng);
    const Point z = xi_vector(geo, rng);
    const Point jy = geo.j(y);
    reeb_der.update(vnorm(geo, at.nabla(y, reeb_f) + jy * (0.5 * c) - lj * jy * 0.5), {y});

    const Point tyz = at.torsion(y, z);
    tors_l.update(std::abs(geo.lambda(tyz) - (1.0 + c) * bilinear(geo.lc.dlambda, y, z)), {y, z});

    const VectorField yf = random_xi_section(t, y, p, rng);
    const Point expected = (lie_j(t, t.apply_j(yf), p) * z + lie_j(t, yf, p) * geo.j(z)) * 0.25;
    tors_x.update(vnorm(geo, geo.pi(tyz) - expected), {y, z});

    const Point a = geo.pi(at.torsion(jy, z));
    const Point b = geo.pi(at.torsion(y, geo.j(z)));
    tors_type.update(std::max(vnorm(geo, a - b), vnorm(geo, geo.j(a) - geo.pi(tyz))), {y, z});
  }
  const double dl = norm_inf(at.nabla_two_form(geo.lc.reeb, t.dlambda_field()));
  return {
      make_result("family.metric", metric.value, metric.witness),
      make_result("family.reeb_derivative", reeb_der.value, reeb_der.witness),
      make_result("family.torsion_lambda", tors_l.value, tors_l.witness),
      make_result("family.torsion_xi", tors_x.value, tors_x.witness),
      make_result("family.torsion_type", tors_type.value, tors_type.witness),
      make_result("family.reeb_parallel_dlambda", dl),
  };
}

std::vector<CheckResult> check_frame(const ContactTriad& t, const Point& p) {
  const MovingFrame f = build_unitary_frame(t, p);
  const LocalContact<double> lc = t.local(p);
  const Mat<double> e = f.frame_at(p);
  const int dim = t.dim();
  double r = std::max(norm_inf(e.transpose() * lc.metric * e - Mat<double>::identity(dim)),
                      norm_inf(f.coframe_at(p) * e - Mat<double>::identity(dim)));
  for (int i = 1; i <= t.n(); ++i) r = std::max(r, norm_inf(e.col(t.n() + i) - lc.j * e.col(i)));
  return {
      make_result("frame.orthonormal", r),
      make_result("frame.structure_lc", structure_equation_residual(levi_civita(t), f, p, true)),
  };
}

std::vector<CheckResult> check_frame_family(const ContactTriad& t, double c, const Point& p) {
  const MovingFrame f = build_unitary_frame(t, p);
  const AffineConnection conn = triad_connection(t, c);
  const ConnectionMatrix cm = connection_one_forms(conn, f, p);
  const GammaDiscrepancy g = cross_check_gamma(t, c, f, p);
  CheckResult gamma = make_result("frame.cross_check_gamma", g.max_abs,
                                  {Point{double(g.i), double(g.k), double(g.j)}});
  return {
      gamma,
      make_result("frame.structure", structure_equation_residual(conn, f, p)),
      make_result("frame.skew_hermitian", skew_hermitian_check(cm)),
  };
}

std::vector<CheckResult> check_controls(const ExampleSpec& spec, const ContactTriad& t, const Point& p,
                                        std::mt19937_64& rng) {
  std::vector<CheckResult> out;
  {
    CheckResult r = check_axioms(triad_connection(t, 1.0), 0.0, p, rng)[5];
    r.name = "control.wrong_c";
    CheckResult fixed = make_result(r.name, r.residual, r.witness);
    out.push_back(fixed);
  }
  out.push_back(check_scaling(t, 2.0, p, rng, ScalingForm::wrong_c));
  if (spec.nonintegrable_xi) {
    const LocalConnection flipped = triad_connection(t, -1.0).with_b1_scale(-1.0).at(p);
    const PointGeometry& geo = flipped.geometry();
    Worst w;
    for (int s = 0; s < kSamples; ++s) {
      const Point y = xi_vector(geo, rng);
      const Point z = xi_vector(geo, rng);
      const Point n = nijenhuis(t, y, z, p);
      w.update(vnorm(geo, geo.pi(flipped.torsion(y, z)) - geo.pi(n) * 0.25), {y, z});
    }
    out.push_back(make_result("control.b1_sign_flip", w.value, w.witness));

    const std::vector<CheckResult> lc = check_axioms(levi_civita(t), 0.0, p, rng);
    std::vector<Point> witness = lc[0].witness;
    witness.push_back(Point{lc[2].residual});  // axiom 2 residual of Levi-Civita
    out.push_back(make_result("control.levi_civita", lc[0].residual, witness));
  }
  return out;
}

}  // namespace triad
