#include "triad/frame.hpp"

#include <cmath>
#include <numeric>

namespace triad {

MovingFrame::MovingFrame(ContactTriad triad, std::vector<int> seeds)
    : triad_(std::move(triad)), seeds_(std::move(seeds)) {
  if (static_cast<int>(seeds_.size()) != triad_.n()) throw FrameError("need exactly n seed fields");
}

VectorField MovingFrame::field(int i) const {
  return VectorField::make<1>([f = *this, i](const auto& q) { return f.frame_at(q).col(i); });
}

OneForm MovingFrame::coform(int i) const {
  return OneForm::make<1>([f = *this, i](const auto& q) { return f.coframe_at(q).row(i); });
}

MovingFrame build_unitary_frame(const ContactTriad& triad, const Point& p, std::vector<int> order,
                                double min_norm) {
  const int dim = triad.dim();
  const int n = triad.n();
  if (order.empty()) {
    order.resize(dim);
    std::iota(order.begin(), order.end(), 0);
  }
  const LocalContact<double> lc = triad.local(p);
  std::vector<Point> basis;  // E_1, JE_1, E_2, ...
  std::vector<int> seeds;
  for (const int s : order) {
    if (static_cast<int>(seeds.size()) == n) break;
    if (s < 0 || s >= dim) throw FrameError("seed index out of range");
    Point v = lc.pi * Point::unit(dim, s);
    for (const Point& e : basis) v -= e * bilinear(lc.metric, e, v);
    const double norm = std::sqrt(bilinear(lc.metric, v, v));
    if (norm < min_norm) continue;
    v = v / norm;
    basis.push_back(v);
    basis.push_back(lc.j * v);
    seeds.push_back(s);
  }
  if (static_cast<int>(seeds.size()) < n) throw FrameError("seed fields are rank deficient on xi at this point");
  return MovingFrame(triad, std::move(seeds));
}

Point ConnectionMatrix::omega(int i, int j) const {
  Point out(dim);
  for (int m = 0; m < dim; ++m) out += coframe.row(m) * gamma[i](m, j);
  return out;
}

ConnectionMatrix connection_one_forms(const AffineConnection& conn, const MovingFrame& frame, const Point& p) {
  const int dim = frame.dim();
  const LocalConnection at = conn.at(p);
  const PointGeometry& geo = at.geometry();
  const Mat<double> f = frame.frame_at(p);
  ConnectionMatrix out;
  out.dim = dim;
  out.gamma.assign(dim, Mat<double>(dim, dim));
  out.coframe = inverse(f);
  const DiffEngine& engine = conn.engine();
  for (int k = 0; k < dim; ++k) {
    const Point ek = f.col(k);
    const Mat<double> df = engine.directional([&frame](const auto& q) { return frame.frame_at(q); }, p, ek);
    for (int j = 0; j < dim; ++j) {
      const Point v = df.col(j) + at.correction(ek, f.col(j));
      for (int i = 0; i < dim; ++i) out.gamma[i](k, j) = geo.inner(v, f.col(i));
    }
  }
  return out;
}

double structure_equation_residual(const AffineConnection& conn, const MovingFrame& frame, const Point& p,
                                   bool zero_torsion) {
  const int dim = frame.dim();
  const ConnectionMatrix cm = connection_one_forms(conn, frame, p);
  const LocalConnection at = conn.at(p);
  const DiffEngine& engine = conn.engine();
  std::vector<Mat<double>> dtheta(dim);  // dtheta[a](j, b) = d_a theta^j_b
  for (int a = 0; a < dim; ++a)
    dtheta[a] = engine.partial([&frame](const auto& q) { return frame.coframe_at(q); }, p, a);
  std::vector<Mat<double>> omega_at(dim, Mat<double>(dim, dim));  // omega_at[j](k, a) = Omega^j_k(d_a)
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) omega_at[j].set_row(k, cm.omega(j, k));
  double worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      const Point t = zero_torsion ? Point(dim) : at.torsion(Point::unit(dim, a), Point::unit(dim, b));
      const Point theta_t = cm.coframe * t;
      for (int j = 0; j < dim; ++j) {
        double r = dtheta[a](j, b) - dtheta[b](j, a) - theta_t[j];
        for (int k = 0; k < dim; ++k)
          r += omega_at[j](k, a) * cm.coframe(k, b) - omega_at[j](k, b) * cm.coframe(k, a);
        worst = std::max(worst, std::abs(r));
      }
    }
  return worst;
}

int GammaTable::derived_count() const {
  int count = 0;
  for (const auto& m : derived)
    for (int k = 0; k < dim; ++k)
      for (int j = 0; j < dim; ++j) count += m(k, j) != 0.0;
  return count;
}

GammaTable gamma_from_axioms(const ContactTriad& triad, double c, const MovingFrame& frame, const Point& p) {
  const int dim = triad.dim();
  const int n = triad.n();
  const DiffEngine& engine = triad.engine();
  const LocalContact<double> lc = triad.local(p);
  const Mat<double> f = frame.frame_at(p);
  const Mat<double> lj = lie_derivative_endo(engine, triad.reeb_field(), triad.j_field(), p);
  const VectorField reeb = triad.reeb_field();
  auto inner = [&lc](const Point& u, const Point& v) { return bilinear(lc.metric, u, v); };
  auto e = [&f](int a) { return f.col(a); };

  GammaTable g;
  g.dim = dim;
  g.value.assign(dim, Mat<double>(dim, dim));
  g.derived.assign(dim, Mat<double>(dim, dim));
  auto set = [&g](int i, int k, int j, double v) {
    g.value[i](k, j) = v;
    g.derived[i](k, j) = 1.0;
  };

  // nabla_{X} X = 0 and lambda(nabla_Y X) = 0
  for (int a = 0; a < dim; ++a) set(a, 0, 0, 0.0);
  for (int k = 1; k < dim; ++k) set(0, k, 0, 0.0);

  // Omega_0 on xi
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Point ej = e(1 + j), jej = e(1 + n + j);
      const Point ek = e(1 + k), jek = e(1 + n + k);
      const double delta = j == k ? 1.0 : 0.0;
      set(1 + k, 1 + j, 0, 0.5 * inner(lj * jej, ek));
      set(1 + n + k, 1 + j, 0, -0.5 * c * delta + 0.5 * inner(lj * jej, jek));
      set(1 + k, 1 + n + j, 0, 0.5 * c * delta - 0.5 * inner(lj * ej, ek));
      set(1 + n + k, 1 + n + j, 0, -0.5 * inner(lj * jej, ek));
    }

  // Reeb column from T(X, e_b) = 0: Gamma^a_{0,b} = Gamma^a_{b,0} - <[e_b, X], e_a>
  for (int b = 1; b < dim; ++b) {
    const Point br = lie_bracket(engine, frame.field(b), reeb, p);
    for (int a = 1; a < dim; ++a) set(a, 0, b, g.value[a](b, 0) - inner(br, e(a)));
    set(0, 0, b, 0.0);
  }

  // metric compatibility against X
  for (int j = 1; j < dim; ++j)
    for (int k = 1; k < dim; ++k) set(0, j, k, -g.value[k](j, 0));
  return g;
}

GammaDiscrepancy cross_check_gamma(const ContactTriad& triad, double c, const MovingFrame& frame, const Point& p) {
  const GammaTable axioms = gamma_from_axioms(triad, c, frame, p);
  const ConnectionMatrix direct = connection_one_forms(triad_connection(triad, c), frame, p);
  GammaDiscrepancy out;
  for (int i = 0; i < axioms.dim; ++i)
    for (int k = 0; k < axioms.dim; ++k)
      for (int j = 0; j < axioms.dim; ++j) {
        if (!axioms.is_derived(i, k, j)) continue;
        const double d = std::abs(axioms(i, k, j) - direct(i, k, j));
        if (d > out.max_abs) out = {d, i, k, j};
      }
  return out;
}

double skew_hermitian_check(const ConnectionMatrix& g) {
  const int n = (g.dim - 1) / 2;
  double worst = 0.0;
  for (int m = 1; m < g.dim; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const int ei = 1 + i, ej = 1 + j, fi = 1 + n + i, fj = 1 + n + j;
        worst = std::max({worst, std::abs(g(fi, m, fj) - g(ei, m, ej)), std::abs(g(ei, m, fj) + g(fi, m, ej)),
                          std::abs(g(ei, m, ej) + g(ej, m, ei)), std::abs(g(fi, m, ej) - g(fj, m, ei))});
      }
  return worst;
}

double skew_hermitian_check(const AffineConnection& conn, const MovingFrame& frame, const Point& p) {
  return skew_hermitian_check(connection_one_forms(conn, frame, p));
}

}  // namespace triad
