#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "triad/dual.hpp"
#include "triad/linalg.hpp"

namespace triad {

enum class DiffMode { forward, central_difference };

std::string_view to_string(DiffMode mode);
DiffMode parse_diff_mode(std::string_view text);

namespace detail {

template <class S>
S tangent(const Dual<S>& x) {
  return x.d;
}
template <class S>
Vec<S> tangent(const Vec<Dual<S>>& x) {
  Vec<S> out(x.size());
  for (int i = 0; i < x.size(); ++i) out[i] = x[i].d;
  return out;
}
template <class S>
Mat<S> tangent(const Mat<Dual<S>>& x) {
  Mat<S> out(x.rows(), x.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j).d;
  return out;
}

}  // namespace detail

/// Differentiation engine. Forward mode seeds a single-direction dual number
/// one nesting level above the caller's scalar type; central-difference mode
/// evaluates at the caller's level on a symmetric stencil.
struct DiffEngine {
  DiffMode mode = DiffMode::forward;
  double step = 1e-4;

  /// Df|_p(v) for any callable `f(const Vec<T>&)` returning a scalar, Vec or Mat.
  template <class S, class F>
  auto directional(const F& f, const Vec<S>& p, const Vec<S>& v) const {
    if (mode == DiffMode::forward) {
      Vec<Dual<S>> q(p.size());
      for (int i = 0; i < p.size(); ++i) q[i] = Dual<S>(p[i], v[i]);
      return detail::tangent(f(q));
    }
    double scale = 0.0;
    for (int i = 0; i < v.size(); ++i) scale = std::max(scale, std::abs(primal(v[i])));
    if (scale == 0.0) return f(p) * S(0.0);
    const double t = step / std::max(1.0, scale);
    Vec<S> hv = v * S(t);
    auto fp = f(p + hv);
    auto fm = f(p - hv);
    return (fp - fm) * S(1.0 / (2.0 * t));
  }

  /// Partial derivative along the i-th chart coordinate.
  template <class S, class F>
  auto partial(const F& f, const Vec<S>& p, int i) const {
    return directional(f, p, Vec<S>::unit(p.size(), i));
  }
};

}  // namespace triad
