#pragma once

#include <optional>
#include <string>

#include "darboux/base_systems.hpp"
#include "darboux/grid.hpp"

namespace darboux {

// Solution of the base equation at the factorization energy, with derivative.
struct FactorizationSeed {
  Complex energy;
  ComplexField field;
  ComplexField dfield;
  std::string source;
};

// Imaginary shift of a level: target = base + i*gamma.
struct ShiftRequest {
  Complex base_energy;
  double gamma = 0.0;
  Complex target() const { return base_energy + Complex(0.0, gamma); }
};

struct SingularityReport {
  double min_abs_theta = 0.0;
  double argmin_x = 0.0;
  bool passed = false;
  double tolerance = 0.0;
};

struct OneStepResult {
  ComplexField W;   // superpotential psi0'/psi0
  ComplexField V1;  // V0 - 2 W'
  FactorizationSeed seed;
};

struct TwoStepResult {
  ComplexField V2;
  ComplexField theta;        // W(psi0, psi0_tilde)
  ComplexField psi_shifted;  // psi0 / theta, the state at the target energy
  std::optional<ComplexField> W_tilde;  // second-step superpotential; absent
                                        // when the seed has interior nodes
  double min_abs_theta = 0.0;
  ShiftRequest request;
  FactorizationSeed seed;
  FactorizationSeed seed_tilde;
  double x_ref = 0.0;  // reference point of the counterpart recipe
};

constexpr double kNodeTolFactor = 1e-8;    // node guard: 1e-8 * max|psi0|
constexpr double kThetaTolFactor = 1e-6;   // default theta guard: 1e-6 * max|theta|

FactorizationSeed make_seed(const BaseSystemSpec& spec, Complex E, SolutionKind kind,
                            const GridSpec& grid);

// W = psi0'/psi0; throws node_error naming the coordinate of a near-zero.
ComplexField superpotential(const FactorizationSeed& seed);

OneStepResult one_step(const ComplexField& V0, const FactorizationSeed& seed);

// psi1 = -psi_E' + W psi_E, a solution of the V1 equation at E.
ComplexField map_solution_one_step(const FactorizationSeed& seed,
                                   const ComplexField& psi_E, Complex E);

SingularityReport check_nonsingular(const ComplexField& theta, double tolerance);
double default_theta_tolerance(const ComplexField& theta);

// Core two-step transform; energy delta comes from the two seed energies.
TwoStepResult two_step_transform(const ComplexField& V0, const FactorizationSeed& seed0,
                                 const FactorizationSeed& seed_tilde, double x_ref,
                                 const ShiftRequest& request);

TwoStepResult two_step_shift(const ComplexField& V0, const FactorizationSeed& psi0,
                             const FactorizationSeed& psi0_tilde,
                             const ShiftRequest& request);

// Maps a V0 solution at E != factorization energy onto the V2 equation.
ComplexField map_solution_two_step(const TwoStepResult& result,
                                   const FactorizationSeed& psi0,
                                   const ComplexField& psi_E, Complex E);

// Shift of one mixed-boundary (Neumann/Dirichlet) auxiliary well level; the
// physical Dirichlet spectrum stays put while the potential complexifies.
TwoStepResult aux_level_shift(const InfiniteWell& well, int aux_index, double gamma,
                              const GridSpec& grid);
double aux_level_energy(const InfiniteWell& well, int aux_index);

}  // namespace darboux
