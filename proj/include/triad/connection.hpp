#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "triad/contact.hpp"

namespace triad {

/// Everything about the triad at one point that the connections need:
/// the local contact data, first derivatives of the metric and of J, and
/// the Christoffel symbols of the triad metric.
struct PointGeometry {
  Point p;
  LocalContact<double> lc;
  Mat<double> metric_inv;
  std::vector<Mat<double>> dmetric;  // dmetric[i] = d_i g
  std::vector<Mat<double>> dj;       // dj[i] = d_i J
  std::vector<Mat<double>> christoffel;  // christoffel[k](i, j) = Gamma^k_ij

  static PointGeometry compute(const ContactTriad& triad, const Point& p);

  int dim() const { return p.size(); }
  double inner(const Point& u, const Point& v) const { return bilinear(lc.metric, u, v); }
  Point j(const Point& v) const { return lc.j * v; }
  Point pi(const Point& v) const { return lc.pi * v; }
  double lambda(const Point& v) const { return dot(lc.lambda, v); }

  /// Gamma^k_ij x^i y^j.
  Point christoffel_apply(const Point& x, const Point& y) const;
  /// Matrix of y -> Gamma(x, y).
  Mat<double> christoffel_matrix(const Point& x) const;
  /// Directional derivative of the J matrix along x.
  Mat<double> dj_along(const Point& x) const;
  /// (nabla^LC_x J) as a matrix.
  Mat<double> nabla_lc_j(const Point& x) const;
};

/// 4P(X,Y) = (nabla^LC_{JY} J)X + J((nabla^LC_Y J)X) + 2J((nabla^LC_X J)Y).
Point tensor_P(const PointGeometry& geo, const Point& x, const Point& y);
/// B1(Z1,Z2) = -1/2 J (nabla^LC_{Pi Z1} J) Pi Z2.
Point tensor_B1(const PointGeometry& geo, const Point& z1, const Point& z2);
/// B2(Z1,Z2) = (1+c)/2 (-<Z2,X> J Z1 - <Z1,X> J Z2 + <J Z1, Z2> X), X the Reeb field.
Point tensor_B2(const PointGeometry& geo, double c, const Point& z1, const Point& z2);

enum class ConnectionKind { levi_civita, triad };

/// A connection frozen at one point: evaluates covariant derivatives of
/// fields there without recomputing the point geometry.
class LocalConnection {
 public:
  LocalConnection(std::shared_ptr<const PointGeometry> geo, ConnectionKind kind, double c, double b1_scale,
                  DiffEngine engine);

  const PointGeometry& geometry() const { return *geo_; }
  const Point& point() const { return geo_->p; }

  /// nabla_x Y = DY(x) + correction(x, Y(p)); Christoffel part plus B1 and B2.
  Point correction(const Point& x, const Point& y) const;
  Point nabla(const Point& x, const VectorField& y) const;
  Point nabla(const VectorField& x, const VectorField& y) const;
  /// Y -> nabla_x(AY) - A nabla_x Y.
  Mat<double> nabla_endo(const Point& x, const EndoField& a) const;
  /// (nabla_x alpha)(Z) = x[alpha(Z)] - alpha(nabla_x Z).
  Point nabla_form(const Point& x, const OneForm& alpha) const;
  /// (nabla_x w)(Y,Z) = x[w(Y,Z)] - w(nabla_x Y, Z) - w(Y, nabla_x Z).
  Mat<double> nabla_two_form(const Point& x, const TwoForm& w) const;
  /// T(X,Y) = nabla_X Y - nabla_Y X - [X,Y].
  Point torsion(const VectorField& x, const VectorField& y) const;
  /// Torsion on tangent vectors, extended by constant coefficient fields.
  Point torsion(const Point& x, const Point& y) const;
  /// coefficients(k)(i, j): k-th component of nabla_{d_i} d_j.
  std::vector<Mat<double>> coefficient_table() const;

 private:
  std::shared_ptr<const PointGeometry> geo_;
  ConnectionKind kind_;
  double c_;
  double b1_scale_;
  DiffEngine engine_;
};

/// Affine connection evaluator. Levi-Civita uses Christoffel symbols of the
/// triad metric; the triad family adds B1 and B2(c) on top of it.
class AffineConnection {
 public:
  using Kind = ConnectionKind;

  static AffineConnection levi_civita(ContactTriad triad);
  static AffineConnection triad_family(ContactTriad triad, double c);

  /// Copy with B1 multiplied by `scale` (fault injection; 1 is the true connection).
  AffineConnection with_b1_scale(double scale) const;

  Kind kind() const { return kind_; }
  double c() const { return c_; }
  double b1_scale() const { return b1_scale_; }
  const ContactTriad& triad() const { return triad_; }
  const DiffEngine& engine() const { return triad_.engine(); }
  std::string label() const;

  /// Freezes the connection at p.
  LocalConnection at(const Point& p) const;
  Point covariant(const VectorField& x, const VectorField& y, const Point& p) const;

 private:
  AffineConnection(ContactTriad triad, Kind kind, double c);

  ContactTriad triad_;
  Kind kind_;
  double c_ = 0.0;
  double b1_scale_ = 1.0;
};

AffineConnection levi_civita(const ContactTriad& triad);
/// nabla^{lambda;c} = nabla^LC + B1 + B2(c).
AffineConnection triad_connection(const ContactTriad& triad, double c);

Mat<double> covariant_derivative_endo(const AffineConnection& conn, const EndoField& a, const Point& x,
                                      const Point& p);
Point covariant_derivative_form(const AffineConnection& conn, const OneForm& alpha, const Point& x,
                                const Point& p);
Mat<double> covariant_derivative_two_form(const AffineConnection& conn, const TwoForm& w, const Point& x,
                                          const Point& p);

Point tensor_P(const ContactTriad& triad, const Point& x, const Point& y, const Point& p);
Point tensor_B1(const ContactTriad& triad, const Point& z1, const Point& z2, const Point& p);
Point tensor_B2(const ContactTriad& triad, double c, const Point& z1, const Point& z2, const Point& p);

Point torsion(const AffineConnection& conn, const Point& x, const Point& y, const Point& p);

/// N(X,Y) = [JX,JY] - [X,Y] - J[X,JY] - J[JX,Y] with the extended J.
Point nijenhuis(const ContactTriad& triad, const VectorField& x, const VectorField& y, const Point& p);
/// The value of N depends on the extension through its X_lambda component
/// (N = N_A - lambda([X,Y]) X_lambda), so vectors are extended adaptedly:
/// v = v_xi + a X_lambda(p) becomes Pi(q) v_xi + a X_lambda(q). Then
/// N(Y,Z) = N_A(Y,Z) + dlambda(Pi Y, Pi Z) X_lambda.
Point nijenhuis(const ContactTriad& triad, const Point& x, const Point& y, const Point& p);

/// q -> Pi(q) v_xi + a X_lambda(q) for v = v_xi + a X_lambda(p).
VectorField adapted_extension(const ContactTriad& triad, const Point& v, const Point& p);

}  // namespace triad
