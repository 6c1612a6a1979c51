#include "triad/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace triad {

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

namespace {

template <class S>
Vec<S> standard_lambda(const Vec<S>& q, int n) {
  Vec<S> l(2 * n + 1);
  for (int i = 0; i < n; ++i) l[i] = -q[n + i];
  l[2 * n] = S(1.0);
  return l;
}

// Columns e_1..e_n, f_1..f_n.
template <class S>
Mat<S> standard_xi_frame(const Vec<S>& q, int n) {
  const int dim = 2 * n + 1;
  Mat<S> f(dim, 2 * n);
  for (int i = 0; i < n; ++i) {
    f(i, i) = S(1.0);
    f(2 * n, i) = q[n + i];
    f(n + i, n + i) = S(1.0);
  }
  return f;
}

OneForm standard_lambda_form(int n) {
  return OneForm::make<2>([n](const auto& q) { return standard_lambda(q, n); });
}

ChartMap translation(int axis, double t) {
  return ChartMap::make<2>([=](const auto& q) {
    auto r = q;
    r[axis] += t;
    return r;
  });
}

EndoField identity_differential(int dim) {
  return EndoField::make<2>([dim](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Mat<S>::identity(dim);
  });
}

std::vector<StrictContactMap> standard_maps(int n) {
  const int dim = 2 * n + 1;
  const double s = 0.4;
  StrictContactMap shear{
      "shear-x1y1-0.4",
      ChartMap::make<2>([=](const auto& q) {
        auto r = q;
        r[n] += s;
        r[2 * n] += s * q[0];
        return r;
      }),
      EndoField::make<2>([=](const auto& q) {
        using S = std::decay_t<decltype(q[0])>;
        Mat<S> m = Mat<S>::identity(dim);
        m(2 * n, 0) = S(s);
        return m;
      })};
  return {
      {"reeb-flow-0.3", translation(2 * n, 0.3), identity_differential(dim)},
      {"x1-translate-0.5", translation(0, 0.5), identity_differential(dim)},
      shear,
  };
}

std::vector<StrictContactMap> t3_maps() {
  const double t = 0.3;
  StrictContactMap flow{
      "reeb-flow-0.3",
      ChartMap::make<2>([=](const auto& q) {
        auto r = q;
        r[0] += t * cos(q[2]);
        r[1] += t * sin(q[2]);
        return r;
      }),
      EndoField::make<2>([=](const auto& q) {
        using S = std::decay_t<decltype(q[0])>;
        Mat<S> m = Mat<S>::identity(3);
        m(0, 2) = -(t * sin(q[2]));
        m(1, 2) = t * cos(q[2]);
        return m;
      })};
  return {
      {"x-translate-0.5", translation(0, 0.5), identity_differential(3)},
      {"y-translate-0.5", translation(1, 0.5), identity_differential(3)},
      flow,
  };
}

Point filled(int dim, double v) { return Point(dim, v); }

ExampleSpec standard_spec(int n) {
  const int dim = 2 * n + 1;
  ExampleSpec s;
  s.id = "r" + std::to_string(dim) + "-standard";
  s.description = "lambda = dz - sum y_i dx_i, standard block J";
  s.dim = dim;
  s.build = [n](const DiffEngine& e) { return standard_triad(n, e); };
  s.lo = filled(dim, -1.0);
  s.hi = filled(dim, 1.0);
  s.maps = standard_maps(n);
  return s;
}

ExampleSpec perturbed_spec(int n, double eps) {
  const int dim = 2 * n + 1;
  ExampleSpec s;
  s.id = "r" + std::to_string(dim) + "-perturbed-J";
  char eps_text[32];
  std::snprintf(eps_text, sizeof eps_text, "%g", eps);
  s.description = std::string("lambda = dz - sum y_i dx_i, z-dependent J on each block (eps = ") + eps_text + ")";
  s.dim = dim;
  s.eps = eps;
  s.build = [n, eps](const DiffEngine& e) { return perturbed_triad(n, eps, e); };
  s.lo = filled(dim, -1.0);
  s.hi = filled(dim, 1.0);
  s.maps = standard_maps(n);
  s.nonintegrable_xi = n >= 2 && eps != 0.0;
  return s;
}

ExampleSpec t3_spec() {
  ExampleSpec s;
  s.id = "t3-tight";
  s.description = "lambda = cos z dx + sin z dy on the periodic chart [0, 2pi)^3";
  s.dim = 3;
  s.build = [](const DiffEngine& e) { return t3_tight_triad(e); };
  s.lo = filled(3, 0.0);
  s.hi = filled(3, 2.0 * std::numbers::pi);
  s.periodic = true;
  s.maps = t3_maps();
  return s;
}

}  // namespace

double strictness_residual(const ContactTriad& triad, const StrictContactMap& phi, const Point& p) {
  const Point q = phi.forward(p);
  const Point pulled = row_times(triad.lambda_at(q), phi.differential(p));
  return norm_inf(pulled - triad.lambda_at(p));
}

ContactTriad pullback_triad(const ContactTriad& triad, const StrictContactMap& phi) {
  EndoField j = EndoField::make<1>([triad, phi](const auto& q) {
    const auto dphi = phi.differential(q);
    return inverse(dphi) * triad.local(phi.forward(q)).j * dphi;
  });
  return triad.with_j(std::move(j));
}

ContactTriad standard_triad(int n, DiffEngine engine) {
  EndoField j = EndoField::make<1>([n](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    Mat<S> action(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
      action(n + i, i) = S(1.0);
      action(i, n + i) = S(-1.0);
    }
    return j_from_xi_frame(standard_lambda(q, n), standard_xi_frame(q, n), action);
  });
  return ContactTriad(2 * n + 1, standard_lambda_form(n), std::move(j), engine);
}

ContactTriad t3_tight_triad(DiffEngine engine) {
  OneForm lambda = OneForm::make<2>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    return Vec<S>{cos(q[2]), sin(q[2]), S(0.0)};
  });
  EndoField j = EndoField::make<1>([](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    const Vec<S> l{cos(q[2]), sin(q[2]), S(0.0)};
    Mat<S> frame(3, 2);
    frame(2, 0) = S(1.0);
    frame(0, 1) = -sin(q[2]);
    frame(1, 1) = cos(q[2]);
    Mat<S> action(2, 2);
    action(1, 0) = S(1.0);
    action(0, 1) = S(-1.0);
    return j_from_xi_frame(l, frame, action);
  });
  return ContactTriad(3, std::move(lambda), std::move(j), engine);
}

double perturbed_phase(int k) { return 0.7 * k; }

ContactTriad perturbed_triad(int n, double eps, DiffEngine engine) {
  EndoField j = EndoField::make<1>([n, eps](const auto& q) {
    using S = std::decay_t<decltype(q[0])>;
    Mat<S> action(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
      const S theta = q[2 * n] + S(perturbed_phase(k));
      const S a = S(eps) * sin(theta);
      const S b = sqrt(S(1.0) + a * a) * exp(S(eps) * cos(theta));
      const S c = -(S(1.0) + a * a) / b;
      action(k, k) = a;
      action(n + k, k) = b;
      action(k, n + k) = c;
      action(n + k, n + k) = -a;
    }
    return j_from_xi_frame(standard_lambda(q, n), standard_xi_frame(q, n), action);
  });
  return ContactTriad(2 * n + 1, standard_lambda_form(n), std::move(j), engine);
}

const std::vector<ExampleSpec>& catalog() {
  static const std::vector<ExampleSpec> specs = [] {
    std::vector<ExampleSpec> v;
    v.push_back(standard_spec(1));
    v.push_back(standard_spec(2));
    v.push_back(standard_spec(3));
    v.push_back(standard_spec(4));
    v.push_back(t3_spec());
    v.push_back(perturbed_spec(1, 0.1));
    v.push_back(perturbed_spec(2, 0.1));
    return v;
  }();
  return specs;
}

ExampleSpec find_example(const std::string& id) {
  std::string base = id;
  std::optional<double> eps;
  if (const auto colon = id.find(':'); colon != std::string::npos) {
    base = id.substr(0, colon);
    try {
      std::size_t used = 0;
      eps = std::stod(id.substr(colon + 1), &used);
      if (used != id.size() - colon - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad parameter in example id '" + id + "'");
    }
  }
  for (const auto& s : catalog()) {
    if (s.id != base) continue;
    if (!eps) return s;
    if (base.find("perturbed") == std::string::npos)
      throw std::invalid_argument("example '" + base + "' takes no parameter");
    if (!(*eps >= 0.0 && *eps <= 0.5)) throw std::invalid_argument("eps must lie in [0, 0.5]");
    ExampleSpec out = perturbed_spec((s.dim - 1) / 2, *eps);
    out.id = id;
    return out;
  }
  throw std::invalid_argument("unknown example '" + id + "'");
}

Point sample_point(const ExampleSpec& spec, std::mt19937_64& rng) {
  Point p(spec.dim);
  for (int i = 0; i < spec.dim; ++i) {
    std::uniform_real_distribution<double> u(spec.lo[i], spec.hi[i]);
    p[i] = u(rng);
  }
  return p;
}

}  // namespace triad
