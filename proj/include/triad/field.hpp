#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "triad/dual.hpp"
#include "triad/linalg.hpp"

namespace triad {

template <class S>
using Scalar = S;

/// Raised when a field is evaluated at a dual nesting depth it was not
/// built for (e.g. asking a first-order-only field for second derivatives).
class FieldLevelError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A smooth field on a chart: a deterministic closure over chart coordinates,
/// evaluable at `double` and at nested dual scalars up to `max_level()`.
///
/// Level 0 evaluates values, level 1 supports one derivative (D1 points) and
/// level 2 supports nested second derivatives (D2 points). `Tag` keeps
/// vector fields, one-forms and endomorphism fields distinct types.
template <template <class> class Out, class Tag>
class Field {
 public:
  Field() = default;

  /// Wraps a generic callable `f(const Vec<S>&) -> Out<S>`; instantiated
  /// only for scalar levels 0..Levels.
  template <int Levels = 1, class F>
  static Field make(F f) {
    static_assert(Levels >= 0 && Levels <= 2);
    Field out;
    out.levels_ = Levels;
    out.f0_ = [f](const Vec<double>& p) -> Out<double> { return f(p); };
    if constexpr (Levels >= 1) out.f1_ = [f](const Vec<D1>& p) -> Out<D1> { return f(p); };
    if constexpr (Levels >= 2) out.f2_ = [f](const Vec<D2>& p) -> Out<D2> { return f(p); };
    return out;
  }

  template <EngineScalar S>
  Out<S> operator()(const Vec<S>& p) const {
    if constexpr (std::is_same_v<S, double>) {
      return f0_(p);
    } else if constexpr (std::is_same_v<S, D1>) {
      if (!f1_) throw FieldLevelError("field evaluated at first-order dual point but built for values only");
      return f1_(p);
    } else {
      if (!f2_) throw FieldLevelError("field evaluated at second-order dual point but built for level " +
                                      std::to_string(levels_));
      return f2_(p);
    }
  }

  explicit operator bool() const { return static_cast<bool>(f0_); }
  int max_level() const { return levels_; }

 private:
  std::function<Out<double>(const Vec<double>&)> f0_;
  std::function<Out<D1>(const Vec<D1>&)> f1_;
  std::function<Out<D2>(const Vec<D2>&)> f2_;
  int levels_ = -1;
};

struct ScalarTag {};
struct VectorTag {};
struct CovectorTag {};
struct TwoFormTag {};
struct EndoTag {};
struct MapTag {};

using ScalarField = Field<Scalar, ScalarTag>;
using VectorField = Field<Vec, VectorTag>;
using OneForm = Field<Vec, CovectorTag>;
/// Values are antisymmetric matrices with (omega)_ij = omega(d_i, d_j).
using TwoForm = Field<Mat, TwoFormTag>;
/// Values are matrices acting on tangent vectors (column convention).
using EndoField = Field<Mat, EndoTag>;
/// Chart self-maps Q -> Q, e.g. strict contactomorphisms.
using ChartMap = Field<Vec, MapTag>;

/// The vector field with constant chart components.
inline VectorField constant_field(const Point& v) {
  return VectorField::make<2>([v](const auto& p) {
    using S = std::decay_t<decltype(p[0])>;
    return Vec<S>(v);
  });
}

inline VectorField coordinate_field(int dim, int i) { return constant_field(Point::unit(dim, i)); }

template <class S>
Vec<S> lift(const Point& v) {
  return Vec<S>(v);
}

template <class S>
inline Vec<double> primal(const Vec<S>& v) {
  Vec<double> out(v.size());
  for (int i = 0; i < v.size(); ++i) out[i] = primal(v[i]);
  return out;
}

template <class S>
inline Mat<double> primal(const Mat<S>& m) {
  Mat<double> out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = primal(m(i, j));
  return out;
}

}  // namespace triad
