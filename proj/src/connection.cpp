#include "triad/connection.hpp"

#include <cstdio>

namespace triad {

PointGeometry PointGeometry::compute(const ContactTriad& triad, const Point& p) {
  const int dim = triad.dim();
  const DiffEngine& engine = triad.engine();
  PointGeometry geo;
  geo.p = p;
  geo.lc = triad.local(p);
  geo.metric_inv = inverse(geo.lc.metric);
  geo.dmetric.resize(dim);
  geo.dj.resize(dim);
  for (int i = 0; i < dim; ++i) {
    if (engine.mode == DiffMode::forward) {
      Vec<D1> q(dim);
      for (int a = 0; a < dim; ++a) q[a] = D1(p[a], a == i ? 1.0 : 0.0);
      const LocalContact<D1> lq = triad.local(q);
      geo.dmetric[i] = detail::tangent(lq.metric);
      geo.dj[i] = detail::tangent(lq.j);
    } else {
      const double h = engine.step;
      const Point e = Point::unit(dim, i) * h;
      const LocalContact<double> lp = triad.local(p + e);
      const LocalContact<double> lm = triad.local(p - e);
      geo.dmetric[i] = (lp.metric - lm.metric) * (0.5 / h);
      geo.dj[i] = (lp.j - lm.j) * (0.5 / h);
    }
  }
  geo.christoffel.assign(dim, Mat<double>(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      Point lowered(dim);  // Gamma_{l,ij}
      for (int l = 0; l < dim; ++l)
        lowered[l] = 0.5 * (geo.dmetric[i](j, l) + geo.dmetric[j](i, l) - geo.dmetric[l](i, j));
      const Point raised = geo.metric_inv * lowered;
      for (int k = 0; k < dim; ++k) {
        geo.christoffel[k](i, j) = raised[k];
        geo.christoffel[k](j, i) = raised[k];
      }
    }
  return geo;
}

Point PointGeometry::christoffel_apply(const Point& x, const Point& y) const {
  const int dim = this->dim();
  Point out(dim);
  for (int k = 0; k < dim; ++k) out[k] = bilinear(christoffel[k], x, y);
  return out;
}

Mat<double> PointGeometry::christoffel_matrix(const Point& x) const {
  const int dim = this->dim();
  Mat<double> m(dim, dim);
  for (int k = 0; k < dim; ++k) m.set_row(k, row_times(x, christoffel[k]));
  return m;
}

Mat<double> PointGeometry::dj_along(const Point& x) const {
  const int dim = this->dim();
  Mat<double> m(dim, dim);
  for (int i = 0; i < dim; ++i) m += dj[i] * x[i];
  return m;
}

Mat<double> PointGeometry::nabla_lc_j(const Point& x) const {
  const Mat<double> g = christoffel_matrix(x);
  return dj_along(x) + g * lc.j - lc.j * g;
}

Point tensor_P(const PointGeometry& geo, const Point& x, const Point& y) {
  const Point a = geo.nabla_lc_j(geo.j(y)) * x;
  const Point b = geo.j(geo.nabla_lc_j(y) * x);
  const Point c = geo.j(geo.nabla_lc_j(x) * y);
  return (a + b + c * 2.0) * 0.25;
}

Point tensor_B1(const PointGeometry& geo, const Point& z1, const Point& z2) {
  return geo.j(geo.nabla_lc_j(geo.pi(z1)) * geo.pi(z2)) * -0.5;
}

Point tensor_B2(const PointGeometry& geo, double c, const Point& z1, const Point& z2) {
  const Point& r = geo.lc.reeb;
  const Point v = geo.j(z1) * -geo.inner(z2, r) - geo.j(z2) * geo.inner(z1, r) + r * geo.inner(geo.j(z1), z2);
  return v * (0.5 * (1.0 + c));
}

LocalConnection::LocalConnection(std::shared_ptr<const PointGeometry> geo, ConnectionKind kind, double c,
                                 double b1_scale, DiffEngine engine)
    : geo_(std::move(geo)), kind_(kind), c_(c), b1_scale_(b1_scale), engine_(engine) {}

Point LocalConnection::correction(const Point& x, const Point& y) const {
  Point out = geo_->christoffel_apply(x, y);
  if (kind_ == ConnectionKind::triad) {
    if (b1_scale_ != 0.0) out += tensor_B1(*geo_, x, y) * b1_scale_;
    out += tensor_B2(*geo_, c_, x, y);
  }
  return out;
}

namespace {

Mat<double> correction_matrix(const LocalConnection& lc, const Point& x) {
  const int dim = x.size();
  Mat<double> m(dim, dim);
  for (int j = 0; j < dim; ++j) m.set_col(j, lc.correction(x, Point::unit(dim, j)));
  return m;
}

}  // namespace

Point LocalConnection::nabla(const Point& x, const VectorField& y) const {
  return field_derivative(engine_, y, point(), x) + correction(x, y(point()));
}

Point LocalConnection::nabla(const VectorField& x, const VectorField& y) const { return nabla(x(point()), y); }

Mat<double> LocalConnection::nabla_endo(const Point& x, const EndoField& a) const {
  const Mat<double> da = engine_.directional([&a](const auto& q) { return a(q); }, point(), x);
  const Mat<double> c = correction_matrix(*this, x);
  const Mat<double> ap = a(point());
  return da + c * ap - ap * c;
}

Point LocalConnection::nabla_form(const Point& x, const OneForm& alpha) const {
  const Point da = engine_.directional([&alpha](const auto& q) { return alpha(q); }, point(), x);
  return da - row_times(alpha(point()), correction_matrix(*this, x));
}

Mat<double> LocalConnection::nabla_two_form(const Point& x, const TwoForm& w) const {
  const Mat<double> dw = engine_.directional([&w](const auto& q) { return w(q); }, point(), x);
  const Mat<double> c = correction_matrix(*this, x);
  const Mat<double> wp = w(point());
  return dw - c.transpose() * wp - wp * c;
}

Point LocalConnection::torsion(const VectorField& x, const VectorField& y) const {
  return nabla(x, y) - nabla(y, x) - lie_bracket(engine_, x, y, point());
}

Point LocalConnection::torsion(const Point& x, const Point& y) const {
  return torsion(constant_field(x), constant_field(y));
}

std::vector<Mat<double>> LocalConnection::coefficient_table() const {
  const int dim = geo_->dim();
  std::vector<Mat<double>> table(dim, Mat<double>(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const Point v = correction(Point::unit(dim, i), Point::unit(dim, j));
      for (int k = 0; k < dim; ++k) table[k](i, j) = v[k];
    }
  return table;
}

AffineConnection::AffineConnection(ContactTriad triad, Kind kind, double c)
    : triad_(std::move(triad)), kind_(kind), c_(c) {}

AffineConnection AffineConnection::levi_civita(ContactTriad triad) {
  return AffineConnection(std::move(triad), Kind::levi_civita, 0.0);
}

AffineConnection AffineConnection::triad_family(ContactTriad triad, double c) {
  return AffineConnection(std::move(triad), Kind::triad, c);
}

AffineConnection AffineConnection::with_b1_scale(double scale) const {
  AffineConnection out = *this;
  out.b1_scale_ = scale;
  return out;
}

std::string AffineConnection::label() const {
  if (kind_ == Kind::levi_civita) return "levi-civita";
  char buf[64];
  std::snprintf(buf, sizeof buf, "triad(%g)", c_);
  std::string s = c_ == -1.0 ? "tmp1" : buf;
  if (b1_scale_ != 1.0) {
    std::snprintf(buf, sizeof buf, "[b1x%g]", b1_scale_);
    s += buf;
  }
  return s;
}

LocalConnection AffineConnection::at(const Point& p) const {
  return LocalConnection(std::make_shared<const PointGeometry>(PointGeometry::compute(triad_, p)), kind_, c_,
                         b1_scale_, triad_.engine());
}

Point AffineConnection::covariant(const VectorField& x, const VectorField& y, const Point& p) const {
  return at(p).nabla(x, y);
}

AffineConnection levi_civita(const ContactTriad& triad) { return AffineConnection::levi_civita(triad); }

AffineConnection triad_connection(const ContactTriad& triad, double c) {
  return AffineConnection::triad_family(triad, c);
}

Mat<double> covariant_derivative_endo(const AffineConnection& conn, const EndoField& a, const Point& x,
                                      const Point& p) {
  return conn.at(p).nabla_endo(x, a);
}

Point covariant_derivative_form(const AffineConnection& conn, const OneForm& alpha, const Point& x,
                                const Point& p) {
  return conn.at(p).nabla_form(x, alpha);
}

Mat<double> covariant_derivative_two_form(const AffineConnection& conn, const TwoForm& w, const Point& x,
                                          const Point& p) {
  return conn.at(p).nabla_two_form(x, w);
}

Point tensor_P(const ContactTriad& triad, const Point& x, const Point& y, const Point& p) {
  return tensor_P(PointGeometry::compute(triad, p), x, y);
}

Point tensor_B1(const ContactTriad& triad, const Point& z1, const Point& z2, const Point& p) {
  return tensor_B1(PointGeometry::compute(triad, p), z1, z2);
}

Point tensor_B2(const ContactTriad& triad, double c, const Point& z1, const Point& z2, const Point& p) {
  return tensor_B2(PointGeometry::compute(triad, p), c, z1, z2);
}

Point torsion(const AffineConnection& conn, const Point& x, const Point& y, const Point& p) {
  return conn.at(p).torsion(x, y);
}

Point nijenhuis(const ContactTriad& triad, const VectorField& x, const VectorField& y, const Point& p) {
  const DiffEngine& e = triad.engine();
  const VectorField jx = triad.apply_j(x);
  const VectorField jy = triad.apply_j(y);
  const Mat<double> j = triad.local(p).j;
  return lie_bracket(e, jx, jy, p) - lie_bracket(e, x, y, p) - j * lie_bracket(e, x, jy, p) -
         j * lie_bracket(e, jx, y, p);
}

VectorField adapted_extension(const ContactTriad& triad, const Point& v, const Point& p) {
  const double a = dot(triad.lambda_at(p), v);
  const Point v_xi = v - triad.reeb_at(p) * a;
  const VectorField xi_part = triad.project(constant_field(v_xi));
  const VectorField reeb = triad.reeb_field();
  return VectorField::make<1>([xi_part, reeb, a](const auto& q) { return xi_part(q) + reeb(q) * a; });
}

Point nijenhuis(const ContactTriad& triad, const Point& x, const Point& y, const Point& p) {
  return nijenhuis(triad, adapted_extension(triad, x, p), adapted_extension(triad, y, p), p);
}

}  // namespace triad
