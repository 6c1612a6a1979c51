#pragma once

#include <stdexcept>
#include <vector>

#include "triad/connection.hpp"

namespace triad {

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unitary moving frame (X_lambda, E_1..E_n, JE_1..JE_n) on a neighborhood of
/// a base point, with dual coframe (lambda, alpha^i, beta^i).
///
/// The seed coordinate fields are fixed when the frame is built; at any
/// nearby q the same Gram-Schmidt runs again, so the frame fields are smooth
/// and differentiable through the engine.
class MovingFrame {
 public:
  MovingFrame(ContactTriad triad, std::vector<int> seeds);

  const ContactTriad& triad() const { return triad_; }
  const std::vector<int>& seeds() const { return seeds_; }
  int dim() const { return triad_.dim(); }
  int n() const { return triad_.n(); }

  /// Columns are the frame vectors e_0..e_2n at q.
  template <EngineScalar S>
  Mat<S> frame_at(const Vec<S>& q) const;

  /// Rows are the coframe covectors theta^0..theta^2n at q.
  template <EngineScalar S>
  Mat<S> coframe_at(const Vec<S>& q) const {
    return inverse(frame_at(q));
  }

  VectorField field(int i) const;
  OneForm coform(int i) const;

 private:
  ContactTriad triad_;
  std::vector<int> seeds_;
};

/// Builds the frame at p from coordinate seeds taken in `order` (default
/// 0..dim-1). A seed whose xi-part left after orthogonalization has triad
/// norm below `min_norm` is skipped. Throws FrameError if fewer than n seeds
/// survive.
MovingFrame build_unitary_frame(const ContactTriad& triad, const Point& p, std::vector<int> order = {},
                                double min_norm = 0.1);

/// Gamma^i_{k,j} = <nabla_{e_k} e_j, e_i> at p.
struct ConnectionMatrix {
  int dim = 0;
  std::vector<Mat<double>> gamma;  // gamma[i](k, j)
  Mat<double> coframe;             // theta^m at p, as rows

  double operator()(int i, int k, int j) const { return gamma[i](k, j); }
  /// Omega^i_j = sum_m Gamma^i_{m,j} theta^m as a chart covector.
  Point omega(int i, int j) const;
};

ConnectionMatrix connection_one_forms(const AffineConnection& conn, const MovingFrame& frame, const Point& p);

/// max over j and coordinate pairs (a,b) of
/// |d theta^j(a,b) + (Omega^j_k ^ theta^k)(a,b) - theta^j(T(a,b))|.
/// With zero_torsion the T term is dropped.
double structure_equation_residual(const AffineConnection& conn, const MovingFrame& frame, const Point& p,
                                   bool zero_torsion = false);

/// Entries of Gamma pinned down in closed form by the uniqueness argument:
/// every entry carrying a 0 index. The pure xi block is left underived.
struct GammaTable {
  int dim = 0;
  std::vector<Mat<double>> value;    // value[i](k, j)
  std::vector<Mat<double>> derived;  // 1 where value[i](k, j) is set

  double operator()(int i, int k, int j) const { return value[i](k, j); }
  bool is_derived(int i, int k, int j) const { return derived[i](k, j) != 0.0; }
  int derived_count() const;
};

GammaTable gamma_from_axioms(const ContactTriad& triad, double c, const MovingFrame& frame, const Point& p);

struct GammaDiscrepancy {
  double max_abs = 0.0;
  int i = 0, k = 0, j = 0;  // worst entry
};

GammaDiscrepancy cross_check_gamma(const ContactTriad& triad, double c, const MovingFrame& frame, const Point& p);

/// Complex-linearity and skewness of Omega restricted to xi-arguments:
/// max over m in 1..2n and i,j in 1..n of
///   |G^{n+i}_{m,n+j} - G^i_{m,j}|, |G^i_{m,n+j} + G^{n+i}_{m,j}|,
///   |G^i_{m,j} + G^j_{m,i}|,       |G^{n+i}_{m,j} - G^{n+j}_{m,i}|.
double skew_hermitian_check(const ConnectionMatrix& omega);
double skew_hermitian_check(const AffineConnection& conn, const MovingFrame& frame, const Point& p);

template <EngineScalar S>
Mat<S> MovingFrame::frame_at(const Vec<S>& q) const {
  const int dim = this->dim();
  const int n = this->n();
  const LocalContact<S> lc = triad_.local(q);
  Mat<S> f(dim, dim);
  f.set_col(0, lc.reeb);
  for (int k = 0; k < n; ++k) {
    Vec<S> v = lc.pi * Vec<S>::unit(dim, seeds_[k]);
    for (int m = 0; m < k; ++m) {
      for (const int col : {1 + m, 1 + n + m}) {
        const Vec<S> e = f.col(col);
        v -= e * bilinear(lc.metric, e, v);
      }
    }
    using std::sqrt;
    v = v / sqrt(bilinear(lc.metric, v, v));
    f.set_col(1 + k, v);
    f.set_col(1 + n + k, lc.j * v);
  }
  return f;
}

}  // namespace triad
