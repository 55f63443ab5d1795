#pragma once

#include <optional>
#include <vector>

#include "darboux/grid.hpp"

namespace darboux {

struct BoundarySide {
  enum class Kind { Dirichlet, DecayingTail, Given };
  Kind kind = Kind::Dirichlet;
  Complex psi{0.0};   // Given: start value
  Complex dpsi{1.0};  // Given: start derivative
  static BoundarySide dirichlet() { return {Kind::Dirichlet, 0.0, 1.0}; }
  static BoundarySide decaying_tail() { return {Kind::DecayingTail, 1.0, 0.0}; }
  static BoundarySide given(Complex v, Complex d) { return {Kind::Given, v, d}; }
  static BoundarySide neumann() { return given(1.0, 0.0); }
};

struct BoundarySpec {
  BoundarySide left = BoundarySide::dirichlet();
  BoundarySide right = BoundarySide::dirichlet();
  static BoundarySpec dirichlet() { return {}; }
  static BoundarySpec decaying() {
    return {BoundarySide::decaying_tail(), BoundarySide::decaying_tail()};
  }
};

struct ShootingConfig {
  std::optional<double> match_x;  // default: min Re V, else grid midpoint
  int max_iter = 60;
  double eig_tol = 1e-10;  // on the scaled mismatch modulus
  std::vector<Complex> deflate;
};

struct EigenResult {
  Complex energy;
  ComplexField field;  // matched, bilinear-normalized
  double residual = 0.0;
  double tail_decay_rate = 0.0;
  int iterations = 0;
};

struct BiorthoReport {
  Eigen::MatrixXcd gram;
  double max_offdiag = 0.0;
  std::vector<int> kept;  // indices surviving the self-product guard
};

struct IntegrabilityReport {
  bool integrable = false;
  double tail_decay_rate = 0.0;
};

enum class Direction { LeftToRight, RightToLeft };

// RK4 integration of -psi'' + V psi = E psi over the sampled potential,
// starting from (psi, psi') at the chosen end.
ComplexField integrate_schrodinger(const ComplexField& V, Complex E,
                                   std::pair<Complex, Complex> ic, Direction dir);

// Conformance route: the same trajectory through the explicitly coupled
// real/imaginary first-order system.
ComplexField integrate_schrodinger_coupled(const ComplexField& V, Complex E,
                                           std::pair<Complex, Complex> ic, Direction dir);

EigenResult find_eigenvalue(const ComplexField& V, Complex guess, const BoundarySpec& bc,
                            const ShootingConfig& config = {});

std::vector<EigenResult> scan_spectrum(const ComplexField& V,
                                       const std::vector<Complex>& guesses,
                                       const BoundarySpec& bc,
                                       const ShootingConfig& config = {});

// Sup-norm of (-psi'' + V psi - E psi) over interior nodes.
double residual_norm(const ComplexField& V, Complex E, const ComplexField& psi);

// Windowed-envelope fit of log|psi|^2 over the trailing 20% of the grid.
IntegrabilityReport l2_integrability(const ComplexField& psi, double rate_tol = 0.05);

BiorthoReport biortho_matrix(const std::vector<EigenResult>& states);

}  // namespace darboux
