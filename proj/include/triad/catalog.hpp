#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "triad/contact.hpp"

namespace triad {

/// A diffeomorphism with phi^* lambda = lambda, given in closed form together
/// with its differential.
struct StrictContactMap {
  std::string label;
  ChartMap forward;        // level 2
  EndoField differential;  // d phi, level 1
};

/// Residual |d phi^T lambda(phi(p)) - lambda(p)|_inf.
double strictness_residual(const ContactTriad& triad, const StrictContactMap& phi, const Point& p);

/// The triad (Q, lambda, phi^* J) with phi^* J = (d phi)^-1 J(phi) d phi.
ContactTriad pullback_triad(const ContactTriad& triad, const StrictContactMap& phi);

struct ExampleSpec {
  std::string id;
  std::string description;
  int dim = 3;
  double eps = 0.0;
  std::function<ContactTriad(const DiffEngine&)> build;
  Point lo, hi;  // sampling box
  bool periodic = false;
  std::vector<StrictContactMap> maps;
  /// True when B1 and the Levi-Civita J-linearity defect are nonzero on this
  /// triad, so the B1 and Levi-Civita negative controls can discriminate.
  bool nonintegrable_xi = false;
};

/// lambda = dz - sum y_i dx_i on R^{2n+1}, coordinates (x_1..x_n, y_1..y_n, z),
/// J (dx_i + y_i dz) = dy_i on the frame e_i = d/dx_i + y_i d/dz, f_i = d/dy_i.
ContactTriad standard_triad(int n, DiffEngine engine = {});

/// lambda = cos z dx + sin z dy; J rotates the xi-frame (d/dz, -sin z d/dx + cos z d/dy) by +90 degrees.
ContactTriad t3_tight_triad(DiffEngine engine = {});

/// Standard lambda with J e_k = a e_k + b f_k, J f_k = c e_k - a f_k on each block,
/// a = eps sin(z + phase_k), b = sqrt(1 + a^2) exp(eps cos(z + phase_k)), c = -(1 + a^2)/b.
ContactTriad perturbed_triad(int n, double eps, DiffEngine engine = {});

/// Phase of block k in the perturbed family.
double perturbed_phase(int k);

const std::vector<ExampleSpec>& catalog();

/// Looks up an id; "r3-perturbed-J:0.25" overrides eps. Throws std::invalid_argument.
ExampleSpec find_example(const std::string& id);

/// Uniform sample in the example's box.
Point sample_point(const ExampleSpec& spec, std::mt19937_64& rng);

}  // namespace triad
