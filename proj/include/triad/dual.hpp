#pragma once

#include <cmath>
#include <type_traits>

namespace triad {

/// Forward-mode dual number carrying a single tangent direction.
///
/// Nesting `Dual<Dual<double>>` yields second derivatives: the inner level
/// differentiates along one direction and the outer level along another.
/// Arithmetic is provided as hidden friends so that plain `double` operands
/// convert implicitly at every nesting depth.
template <class T>
struct Dual {
  T v{};  // value
  T d{};  // tangent

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x), d(0.0) {}  // NOLINT(google-explicit-constructor)
  template <class U>
    requires(std::is_same_v<U, T> && !std::is_same_v<T, double>)
  constexpr Dual(const U& x) : v(x), d(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(const T& value, const T& tangent) : v(value), d(tangent) {}

  friend constexpr Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    const T inv = 1.0 / b.v;
    const T q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
  }

  constexpr Dual& operator+=(const Dual& b) { return *this = *this + b; }
  constexpr Dual& operator-=(const Dual& b) { return *this = *this - b; }
  constexpr Dual& operator*=(const Dual& b) { return *this = *this * b; }
  constexpr Dual& operator/=(const Dual& b) { return *this = *this / b; }

  friend Dual sin(const Dual& a) {
    using std::cos;
    using std::sin;
    return {sin(a.v), cos(a.v) * a.d};
  }
  friend Dual cos(const Dual& a) {
    using std::cos;
    using std::sin;
    return {cos(a.v), -(sin(a.v) * a.d)};
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    const T e = exp(a.v);
    return {e, e * a.d};
  }
  friend Dual log(const Dual& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
  }
  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    const T s = sqrt(a.v);
    return {s, a.d / (2.0 * s)};
  }
  friend Dual pow(const Dual& a, double k) {
    using std::pow;
    return {pow(a.v, k), k * pow(a.v, k - 1.0) * a.d};
  }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;

template <class S>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// The scalar types the differentiation engine evaluates fields at.
template <class S>
concept EngineScalar = std::is_same_v<S, double> || std::is_same_v<S, D1> || std::is_same_v<S, D2>;

/// Innermost real value of a possibly nested dual number.
inline constexpr double primal(double x) { return x; }
template <class T>
constexpr double primal(const Dual<T>& x) {
  return primal(x.v);
}

}  // namespace triad
