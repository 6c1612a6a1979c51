#include "triad/calculus.hpp"

namespace triad {

VectorField apply_endo(const EndoField& a, const VectorField& y) {
  return VectorField::make<1>([a, y](const auto& q) { return a(q) * y(q); });
}

Mat<double> lie_derivative_endo(const DiffEngine& engine, const VectorField& x, const EndoField& a,
                                const Point& p) {
  const int n = p.size();
  const Mat<double> ap = a(p);
  Mat<double> out(n, n);
  for (int k = 0; k < n; ++k) {
    const VectorField ek = coordinate_field(n, k);
    const Point col = lie_bracket(engine, x, apply_endo(a, ek), p) - ap * lie_bracket(engine, x, ek, p);
    out.set_col(k, col);
  }
  return out;
}

}  // namespace triad
