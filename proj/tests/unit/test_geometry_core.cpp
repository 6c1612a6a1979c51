#include <cmath>

#include "helpers.hpp"
#include "triad/calculus.hpp"
#include "triad/catalog.hpp"

using namespace triad;
using testing::check_close;
using testing::pt;

namespace {

const DiffEngine kAD{};
const DiffEngine kFD{DiffMode::central_difference, 1e-4};

ScalarField f_z_minus_yx() {
  return ScalarField::make<2>([](const auto& q) { return q[2] - q[1] * q[0]; });
}

VectorField heisenberg_e1() {
  return VectorField::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{S(1.0), S(0.0), q[1]};
  });
}

}  // namespace

TEST_CASE("directional derivative examples") {
  CHECK(directional_derivative(kAD, f_z_minus_yx(), pt({1, 2, 3}), pt({1, 0, 0})) == doctest::Approx(-2.0));
  const ScalarField constant = ScalarField::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return S(4.2);
  });
  CHECK(directional_derivative(kAD, constant, pt({0.3, -1, 2}), pt({1, 5, -2})) == 0.0);
  const ScalarField sq = ScalarField::make<2>([](const auto& q) { return q[0] * q[0]; });
  CHECK(directional_derivative(kAD, sq, pt({0.5, 0, 0}), pt({2, 0, 0})) == doctest::Approx(2.0));
  CHECK(directional_derivative(kFD, sq, pt({0.5, 0, 0}), pt({2, 0, 0})) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("directional derivative rejects non-finite values") {
  const ScalarField lg = ScalarField::make<2>([](const auto& q) {
    using std::log;
    return log(q[0]);
  });
  CHECK_THROWS_AS(directional_derivative(kAD, lg, pt({0, 0, 0}), pt({1, 0, 0})), DomainError);
}

TEST_CASE("second-order nesting") {
  // d/dt d/ds of sin(x) y along (1,0) then (0,1) is cos(x)
  const ScalarField f = ScalarField::make<2>([](const auto& q) {
    using std::sin;
    return sin(q[0]) * q[1];
  });
  const Point p = pt({0.4, 1.3});
  const double mixed = kAD.directional(
      [&](const auto& q) { return kAD.directional([&](const auto& r) { return f(r); }, q, Vec<std::decay_t<decltype(q[0])>>(pt({1, 0}))); },
      p, pt({0, 1}));
  CHECK(mixed == doctest::Approx(std::cos(0.4)));
}

TEST_CASE("lie bracket examples") {
  const Point p = pt({0.2, -0.7, 1.1});
  check_close(lie_bracket(kAD, constant_field(pt({1, 2, 3})), constant_field(pt({0, 1, 0})), p), pt({0, 0, 0}), 0.0);
  check_close(lie_bracket(kAD, heisenberg_e1(), coordinate_field(3, 1), p), pt({0, 0, -1}), 1e-15);
  const VectorField x_dy = VectorField::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{S(0.0), q[0], S(0.0)};
  });
  check_close(lie_bracket(kAD, x_dy, coordinate_field(3, 0), p), pt({0, -1, 0}), 1e-15);
}

TEST_CASE("lie bracket antisymmetry and Jacobi identity") {
  using std::sin;
  using std::cos;
  const VectorField a = VectorField::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{sin(q[1]), q[0] * q[2], S(1.0) + q[1] * q[1]};
  });
  const VectorField b = VectorField::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{q[2], cos(q[0]), q[0] * q[1]};
  });
  const VectorField c = VectorField::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{q[1] * q[1], S(2.0), sin(q[2])};
  });
  auto bracket = [](const VectorField& x, const VectorField& y) {
    return VectorField::make<1>([x, y](const auto& q) { return lie_bracket(kAD, x, y, q); });
  };
  const Point p = pt({0.3, -0.4, 0.9});
  check_close(lie_bracket(kAD, a, b, p), -lie_bracket(kAD, b, a, p), 0.0);
  const Point jac = lie_bracket(kAD, a, bracket(b, c), p) + lie_bracket(kAD, b, bracket(c, a), p) +
                    lie_bracket(kAD, c, bracket(a, b), p);
  CHECK(norm_inf(jac) <= 1e-13);
}

TEST_CASE("exterior derivative examples") {
  const Point p = pt({0.5, 1.5, -0.25});
  const OneForm alpha = OneForm::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{-q[1], S(0.0), S(1.0)};
  });
  const Mat<double> d = exterior_derivative(kAD, alpha, p);
  CHECK(d(0, 1) == 1.0);
  CHECK(d(1, 0) == -1.0);
  CHECK(norm_inf(d + d.transpose()) == 0.0);

  // alpha = df with f = x y z + sin(x)
  const OneForm df = OneForm::make<2>([](const auto& q) {
    using std::cos;
    return Vec<std::decay_t<decltype(q[0])>>{q[1] * q[2] + cos(q[0]), q[0] * q[2], q[0] * q[1]};
  });
  CHECK(norm_inf(exterior_derivative(kAD, df, p)) <= 1e-15);

  const OneForm t3 = OneForm::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    using std::cos;
    using std::sin;
    return Vec<S>{cos(q[2]), sin(q[2]), S(0.0)};
  });
  const Mat<double> dt = exterior_derivative(kAD, t3, p);
  CHECK(dt(2, 0) == doctest::Approx(-std::sin(-0.25)));
  CHECK(dt(2, 1) == doctest::Approx(std::cos(-0.25)));
  const Mat<double> dt_fd = exterior_derivative(kFD, t3, p);
  CHECK(norm_inf(dt_fd + dt_fd.transpose()) == 0.0);
}

TEST_CASE("lie derivative of endomorphism fields") {
  const Point p = pt({0.1, 0.2, 0.3});
  Mat<double> c(3, 3);
  c(0, 1) = 2.0;
  c(2, 0) = -1.0;
  const EndoField constant = EndoField::make<2>([c](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Mat<S>(c);
  });
  CHECK(norm_inf(lie_derivative_endo(kAD, coordinate_field(3, 2), constant, p)) == 0.0);

  const ContactTriad r3 = standard_triad(1);
  CHECK(norm_inf(lie_derivative_endo(kAD, r3.reeb_field(), r3.j_field(), p)) <= 1e-14);
}

namespace {

// Pullback of A by the time-t flow of X, integrated with classical RK4
// together with its variational equation.
Mat<double> flow_pullback(const VectorField& x, const EndoField& a, const Point& p, double t, int steps) {
  const int n = p.size();
  Point q = p;
  Mat<double> m = Mat<double>::identity(n);  // d(flow_t)
  auto jac = [&](const Point& y) {
    Mat<double> jm(n, n);
    for (int k = 0; k < n; ++k) jm.set_col(k, kAD.partial([&](const auto& r) { return x(r); }, y, k));
    return jm;
  };
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Point k1 = x(q);
    const Mat<double> l1 = jac(q) * m;
    const Point k2 = x(q + k1 * (h / 2));
    const Mat<double> l2 = jac(q + k1 * (h / 2)) * (m + l1 * (h / 2));
    const Point k3 = x(q + k2 * (h / 2));
    const Mat<double> l3 = jac(q + k2 * (h / 2)) * (m + l2 * (h / 2));
    const Point k4 = x(q + k3 * h);
    const Mat<double> l4 = jac(q + k3 * h) * (m + l3 * h);
    q = q + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
    m = m + (l1 + l2 * 2.0 + l3 * 2.0 + l4) * (h / 6);
  }
  return inverse(m) * a(q) * m;
}

Mat<double> flow_oracle(const VectorField& x, const EndoField& a, const Point& p) {
  const double t = 1e-3;
  return (flow_pullback(x, a, p, t, 8) - flow_pullback(x, a, p, -t, 8)) * (0.5 / t);
}

}  // namespace

TEST_CASE("lie derivative agrees with flow pullback oracle") {
  const ContactTriad r3p = perturbed_triad(1, 0.1);
  const Point p = pt({0, 0, 1});
  const Mat<double> l = lie_derivative_endo(kAD, r3p.reeb_field(), r3p.j_field(), p);
  CHECK(frobenius(l) > 0.01);
  check_close(l, flow_oracle(r3p.reeb_field(), r3p.j_field(), p), 1e-6);

  const ContactTriad t3 = t3_tight_triad();
  const Point q = pt({1.0, 2.0, 0.6});
  check_close(lie_derivative_endo(kAD, t3.reeb_field(), t3.j_field(), q),
              flow_oracle(t3.reeb_field(), t3.j_field(), q), 1e-6);

  const ContactTriad r5p = perturbed_triad(2, 0.1);
  const Point r = pt({0.2, -0.3, 0.5, 0.1, -0.6});
  check_close(lie_derivative_endo(kAD, r5p.reeb_field(), r5p.j_field(), r),
              flow_oracle(r5p.reeb_field(), r5p.j_field(), r), 1e-6);
}

TEST_CASE("forward and finite-difference modes agree on catalog fields") {
  std::mt19937_64 rng(11);
  for (const auto& spec : catalog()) {
    const ContactTriad ad = spec.build(kAD);
    const ContactTriad fd = spec.build(kFD);
    for (int s = 0; s < 3; ++s) {
      const Point p = sample_point(spec, rng);
      const Point v = gaussian_vector(spec.dim, rng);
      CHECK(norm_inf(ad.dlambda_at(p) - fd.dlambda_at(p)) <= 1e-7);
      const Mat<double> dj_ad = kAD.directional([&](const auto& q) { return ad.local(q).j; }, p, v);
      const Mat<double> dj_fd = kFD.directional([&](const auto& q) { return fd.local(q).j; }, p, v);
      CHECK(norm_inf(dj_ad - dj_fd) <= 1e-6);
    }
  }
}
