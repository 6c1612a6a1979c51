#pragma once

#include <cmath>
#include <stdexcept>

#include "triad/diff_engine.hpp"
#include "triad/field.hpp"

namespace triad {

/// Raised when a derivative comes back non-finite (evaluation outside the
/// field's domain).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Df|_p(v) of a scalar field.
template <class S = double>
S directional_derivative(const DiffEngine& engine, const ScalarField& f, const Vec<S>& p,
                         const Vec<S>& v) {
  S r = engine.directional([&f](const auto& q) { return f(q); }, p, v);
  if (!std::isfinite(primal(r))) throw DomainError("directional_derivative: non-finite result");
  return r;
}

/// D Y|_p(v) for a vector-valued field.
template <class S = double>
Vec<S> field_derivative(const DiffEngine& engine, const VectorField& y, const Vec<S>& p,
                        const Vec<S>& v) {
  return engine.directional([&y](const auto& q) { return y(q); }, p, v);
}

/// [X, Y](p) = DY(X) - DX(Y).
template <class S = double>
Vec<S> lie_bracket(const DiffEngine& engine, const VectorField& x, const VectorField& y,
                   const Vec<S>& p) {
  const Vec<S> xp = x(p);
  const Vec<S> yp = y(p);
  return field_derivative(engine, y, p, xp) - field_derivative(engine, x, p, yp);
}

/// Exterior derivative of a one-form, (d alpha)_ij = d_i alpha_j - d_j alpha_i.
/// The result is antisymmetric by construction.
template <class S = double>
Mat<S> exterior_derivative(const DiffEngine& engine, const OneForm& alpha, const Vec<S>& p) {
  const int n = p.size();
  Mat<S> jac(n, n);  // jac(i, j) = d_i alpha_j
  for (int i = 0; i < n; ++i)
    jac.set_row(i, engine.partial([&alpha](const auto& q) { return alpha(q); }, p, i));
  Mat<S> d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      d(i, j) = jac(i, j) - jac(j, i);
      d(j, i) = -d(i, j);
    }
  return d;
}

/// The vector field q -> A(q) Y(q).
VectorField apply_endo(const EndoField& a, const VectorField& y);

/// (L_X A) as a matrix: column k is [X, A e_k] - A [X, e_k] with e_k the
/// constant coordinate fields.
Mat<double> lie_derivative_endo(const DiffEngine& engine, const VectorField& x, const EndoField& a,
                                const Point& p);

}  // namespace triad
