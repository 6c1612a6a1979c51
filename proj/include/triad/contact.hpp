#pragma once

#include <random>
#include <stdexcept>
#include <utility>

#include "triad/calculus.hpp"
#include "triad/diff_engine.hpp"
#include "triad/field.hpp"
#include "triad/linalg.hpp"

namespace triad {

/// Raised when a triad fails one of its defining conditions at a point.
class TriadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pointwise data of a contact triad at one (possibly dual) point.
template <class S>
struct LocalContact {
  Vec<S> lambda;     // covector components
  Mat<S> dlambda;    // dlambda(u, v) = u^T dlambda v
  Vec<S> reeb;       // X_lambda
  Mat<S> pi;         // idempotent onto xi along X_lambda
  Mat<S> j;          // J extended by J X_lambda = 0
  Mat<S> metric;     // lambda (x) lambda + dlambda(pi ., J pi .)
};

/// Reeb vector of `lambda` at q: the solution of
/// (dlambda^T + lambda lambda^T) X = lambda, which is equivalent to
/// lambda(X) = 1 and dlambda(X, .) = 0 whenever lambda is contact.
template <class S>
Vec<S> reeb_from(const Vec<S>& lambda, const Mat<S>& dlambda) {
  Mat<S> m = dlambda.transpose() + Mat<S>::outer(lambda, lambda);
  try {
    return LU<S>(m, 1e-12).solve(lambda);
  } catch (const SingularMatrixError&) {
    throw TriadError("Reeb system is singular: lambda is not contact at this point");
  }
}

/// A J on xi given by its action on a xi-frame, assembled into a chart
/// endomorphism that annihilates the direction transverse to xi.
///
/// `frame` holds 2n columns spanning ker(lambda); `action` has column a equal
/// to the frame coefficients of J(frame_a). The transverse column is the
/// Euclidean dual of lambda, which is never in ker(lambda).
template <class S>
Mat<S> j_from_xi_frame(const Vec<S>& lambda, const Mat<S>& frame, const Mat<S>& action) {
  const int dim = lambda.size();
  const int m = frame.cols();
  Mat<S> f(dim, dim);
  f.set_col(0, lambda);
  for (int a = 0; a < m; ++a) f.set_col(a + 1, frame.col(a));
  Mat<S> jd(dim, dim);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) jd(b + 1, a + 1) = action(b, a);
  return f * jd * inverse(f);
}

/// A contact triad (Q, lambda, J) on a single chart.
///
/// `j_source` prescribes J through its action on xi; the stored endomorphism
/// is replaced by Pi A Pi, so only the restriction to xi matters and the
/// extension satisfies J X_lambda = 0.
class ContactTriad {
 public:
  ContactTriad(int dim, OneForm lambda, EndoField j_source, DiffEngine engine = {});

  int dim() const { return dim_; }
  int n() const { return (dim_ - 1) / 2; }
  const OneForm& lambda() const { return lambda_; }
  const EndoField& j_source() const { return j_source_; }
  const DiffEngine& engine() const { return engine_; }

  ContactTriad with_engine(DiffEngine engine) const;
  ContactTriad with_j(EndoField j_source) const;
  /// The triad (Q, a lambda, J).
  ContactTriad scaled(double a) const;

  template <EngineScalar S>
  Vec<S> lambda_at(const Vec<S>& q) const {
    return lambda_(q);
  }

  template <EngineScalar S>
  Mat<S> dlambda_at(const Vec<S>& q) const {
    return exterior_derivative(engine_, lambda_, q);
  }

  template <EngineScalar S>
  Vec<S> reeb_at(const Vec<S>& q) const {
    return reeb_from(lambda_at(q), dlambda_at(q));
  }

  template <EngineScalar S>
  LocalContact<S> local(const Vec<S>& q) const {
    LocalContact<S> lc;
    lc.lambda = lambda_at(q);
    lc.dlambda = dlambda_at(q);
    lc.reeb = reeb_from(lc.lambda, lc.dlambda);
    lc.pi = Mat<S>::identity(dim_) - Mat<S>::outer(lc.reeb, lc.lambda);
    lc.j = lc.pi * j_source_(q) * lc.pi;
    lc.metric = Mat<S>::outer(lc.lambda, lc.lambda) + lc.pi.transpose() * lc.dlambda * lc.j;
    return lc;
  }

  // Field views for use with brackets and covariant derivatives.
  VectorField reeb_field() const;
  EndoField j_field() const;
  EndoField pi_field() const;
  TwoForm dlambda_field() const;
  /// q -> Pi(q) Y(q).
  VectorField project(const VectorField& y) const;
  /// q -> J(q) Y(q).
  VectorField apply_j(const VectorField& y) const;

 private:
  int dim_;
  OneForm lambda_;
  EndoField j_source_;
  DiffEngine engine_;
};

/// Coefficient of lambda ^ (dlambda)^n against dx^1 ^ ... ^ dx^dim (signed).
double verify_contact_condition(const ContactTriad& triad, const Point& p);

Point reeb_vector_field(const ContactTriad& triad, const Point& p);

/// Pi v = v - lambda(v) X_lambda.
Point project_xi(const ContactTriad& triad, const Point& v, const Point& p);

/// Full J with J X_lambda = 0; throws TriadError if J^2 + Pi exceeds `tol`.
Mat<double> extend_J(const ContactTriad& triad, const Point& p, double tol = 1e-10);

double triad_metric(const ContactTriad& triad, const Point& u, const Point& v, const Point& p);

struct CompatibilityResidual {
  double invariance = 0.0;    // max |dlambda(JY,JZ) - dlambda(Y,Z)|
  double min_positivity = 0.0;  // min dlambda(Y,JY) over normalized Y in xi
};

/// Samples `samples` random xi-pairs at p. Each Y is scaled so that
/// |dlambda(Y, JY)| = 1, so the second entry is +1 for a compatible J and
/// -1 as soon as one sampled direction has the wrong orientation.
CompatibilityResidual verify_compatibility(const ContactTriad& triad, const Point& p,
                                           std::mt19937_64& rng, int samples = 32);

/// Standard Gaussian chart vector.
Point gaussian_vector(int dim, std::mt19937_64& rng);

/// Gaussian chart vector projected to xi and normalized in the triad metric.
Point random_xi_vector(const LocalContact<double>& lc, std::mt19937_64& rng);

/// Gaussian chart vector normalized in the triad metric.
Point random_tangent_vector(const LocalContact<double>& lc, std::mt19937_64& rng);

}  // namespace triad
