#include "triad/contact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace triad {

ContactTriad::ContactTriad(int dim, OneForm lambda, EndoField j_source, DiffEngine engine)
    : dim_(dim), lambda_(std::move(lambda)), j_source_(std::move(j_source)), engine_(engine) {
  if (dim < 3 || dim > kMaxDim || dim % 2 == 0)
    throw TriadError("contact triad dimension must be odd, between 3 and " + std::to_string(kMaxDim));
  if (!lambda_ || lambda_.max_level() < 2)
    throw TriadError("contact form must be differentiable to second order");
  if (!j_source_ || j_source_.max_level() < 1)
    throw TriadError("J must be differentiable to first order");
}

ContactTriad ContactTriad::with_engine(DiffEngine engine) const {
  ContactTriad t = *this;
  t.engine_ = engine;
  return t;
}

ContactTriad ContactTriad::with_j(EndoField j_source) const {
  return ContactTriad(dim_, lambda_, std::move(j_source), engine_);
}

ContactTriad ContactTriad::scaled(double a) const {
  OneForm base = lambda_;
  OneForm scaled = OneForm::make<2>([base, a](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return base(q) * S(a);
  });
  return ContactTriad(dim_, std::move(scaled), j_source_, engine_);
}

VectorField ContactTriad::reeb_field() const {
  return VectorField::make<1>([t = *this](const auto& q) { return t.reeb_at(q); });
}

EndoField ContactTriad::j_field() const {
  return EndoField::make<1>([t = *this](const auto& q) { return t.local(q).j; });
}

EndoField ContactTriad::pi_field() const {
  return EndoField::make<1>([t = *this](const auto& q) { return t.local(q).pi; });
}

TwoForm ContactTriad::dlambda_field() const {
  return TwoForm::make<1>([t = *this](const auto& q) { return t.dlambda_at(q); });
}

VectorField ContactTriad::project(const VectorField& y) const {
  return VectorField::make<1>([t = *this, y](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    const Vec<S> l = t.lambda_at(q);
    const Vec<S> yq = y(q);
    return yq - t.reeb_at(q) * dot(l, yq);
  });
}

VectorField ContactTriad::apply_j(const VectorField& y) const {
  return VectorField::make<1>([t = *this, y](const auto& q) { return t.local(q).j * y(q); });
}

double verify_contact_condition(const ContactTriad& triad, const Point& p) {
  const int dim = triad.dim();
  const Point a = triad.lambda_at(p);
  const Mat<double> w = triad.dlambda_at(p);
  double factorial = 1.0;
  for (int k = 2; k <= triad.n(); ++k) factorial *= k;
  // lambda ^ w^n = n! * sum_k (-1)^k a_k Pf(w without row/column k) dx^1..dx^dim
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) {
    if (a[k] == 0.0) continue;
    Mat<double> minor(dim - 1, dim - 1);
    for (int i = 0, r = 0; i < dim; ++i) {
      if (i == k) continue;
      for (int j = 0, c = 0; j < dim; ++j) {
        if (j == k) continue;
        minor(r, c++) = w(i, j);
      }
      ++r;
    }
    acc += ((k % 2 == 0) ? 1.0 : -1.0) * a[k] * pfaffian(minor);
  }
  return factorial * acc;
}

Point reeb_vector_field(const ContactTriad& triad, const Point& p) { return triad.reeb_at(p); }

Point project_xi(const ContactTriad& triad, const Point& v, const Point& p) {
  return v - triad.reeb_at(p) * dot(triad.lambda_at(p), v);
}

Mat<double> extend_J(const ContactTriad& triad, const Point& p, double tol) {
  const LocalContact<double> lc = triad.local(p);
  const double residual = norm_inf(lc.j * lc.j + lc.pi);
  if (!(residual <= tol))
    throw TriadError("J^2 + Pi residual " + std::to_string(residual) + " exceeds tolerance");
  return lc.j;
}

double triad_metric(const ContactTriad& triad, const Point& u, const Point& v, const Point& p) {
  const LocalContact<double> lc = triad.local(p);
  return dot(lc.lambda, u) * dot(lc.lambda, v) +
         bilinear(lc.dlambda, lc.pi * u, lc.j * (lc.pi * v));
}

Point gaussian_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Point v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

Point random_xi_vector(const LocalContact<double>& lc, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    const Point y = lc.pi * gaussian_vector(lc.lambda.size(), rng);
    const double nrm = std::sqrt(bilinear(lc.metric, y, y));
    if (nrm > 1e-6) return y / nrm;
  }
  throw TriadError("could not draw a nonzero xi vector");
}

Point random_tangent_vector(const LocalContact<double>& lc, std::mt19937_64& rng) {
  const Point y = gaussian_vector(lc.lambda.size(), rng);
  return y / std::sqrt(bilinear(lc.metric, y, y));
}

CompatibilityResidual verify_compatibility(const ContactTriad& triad, const Point& p,
                                           std::mt19937_64& rng, int samples) {
  const LocalContact<double> lc = triad.local(p);
  CompatibilityResidual out;
  out.min_positivity = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Point y = lc.pi * gaussian_vector(triad.dim(), rng);
    const Point z = lc.pi * gaussian_vector(triad.dim(), rng);
    const double lhs = bilinear(lc.dlambda, lc.j * y, lc.j * z);
    out.invariance = std::max(out.invariance, std::abs(lhs - bilinear(lc.dlambda, y, z)));
    const double pos = bilinear(lc.dlambda, y, lc.j * y);
    const double scaled = pos == 0.0 ? 0.0 : (pos / std::abs(pos));
    out.min_positivity = std::min(out.min_positivity, scaled);
  }
  return out;
}

}  // namespace triad
