#include "darboux/darboux.hpp"

#include <cmath>

#include "darboux/calculus.hpp"

namespace darboux {

namespace {

// Index of the smallest |psi0| sample; used by the node guard.
int argmin_abs(const Eigen::ArrayXcd& v) {
  int idx = 0;
  v.abs().minCoeff(&idx);
  return idx;
}

void require_node_free(const FactorizationSeed& seed, const char* where) {
  const double guard = kNodeTolFactor * sup_abs(seed.field);
  const int i = argmin_abs(seed.field.values);
  if (std::abs(seed.field.values[i]) <= guard)
    throw node_error(seed.field.grid.x(i),
                     std::string(where) + ": seed has a node near x = " +
                         std::to_string(seed.field.grid.x(i)));
}

bool is_node_free(const FactorizationSeed& seed) {
  const double guard = kNodeTolFactor * sup_abs(seed.field);
  return seed.field.values.abs().minCoeff() > guard;
}

}  // namespace

FactorizationSeed make_seed(const BaseSystemSpec& spec, Complex E, SolutionKind kind,
                            const GridSpec& grid) {
  Solution s = solution_at(spec, E, kind, grid);
  const char* kind_name = kind == SolutionKind::Principal     ? "principal"
                          : kind == SolutionKind::Counterpart ? "counterpart"
                                                              : "superposition";
  return FactorizationSeed{E, std::move(s.psi), std::move(s.dpsi),
                           system_name(spec) + "/" + kind_name};
}

ComplexField superpotential(const FactorizationSeed& seed) {
  require_node_free(seed, "superpotential");
  return ComplexField(seed.field.grid, seed.dfield.values / seed.field.values);
}

OneStepResult one_step(const ComplexField& V0, const FactorizationSeed& seed) {
  require_same_grid(V0, seed.field, "one_step");
  ComplexField W = superpotential(seed);
  ComplexField dW = derivative(W);
  ComplexField V1(V0.grid, V0.values - 2.0 * dW.values);
  return OneStepResult{std::move(W), std::move(V1), seed};
}

ComplexField map_solution_one_step(const FactorizationSeed& seed,
                                   const ComplexField& psi_E, Complex /*E*/) {
  require_same_grid(seed.field, psi_E, "map_solution_one_step");
  ComplexField W = superpotential(seed);
  ComplexField dpsi = derivative(psi_E);
  return ComplexField(psi_E.grid, -dpsi.values + W.values * psi_E.values);
}

double default_theta_tolerance(const ComplexField& theta) {
  return kThetaTolFactor * sup_abs(theta);
}

SingularityReport check_nonsingular(const ComplexField& theta, double tolerance) {
  const int i = argmin_abs(theta.values);
  const double m = std::abs(theta.values[i]);
  return SingularityReport{m, theta.grid.x(i), m > tolerance, tolerance};
}

TwoStepResult two_step_transform(const ComplexField& V0, const FactorizationSeed& seed0,
                                 const FactorizationSeed& seed_tilde, double x_ref,
                                 const ShiftRequest& request) {
  require_same_grid(V0, seed0.field, "two_step_transform");
  require_same_grid(V0, seed_tilde.field, "two_step_transform");
  const Complex delta = seed_tilde.energy - seed0.energy;

  const auto& p = seed0.field.values;
  const auto& dp = seed0.dfield.values;
  const auto& q = seed_tilde.field.values;
  const auto& dq = seed_tilde.dfield.values;

  ComplexField theta(V0.grid, dp * q - p * dq);

  // Scale-free singularity guard: |theta| against the local branch sizes.
  // theta itself spans the squared envelope of the seeds (1e90+ for the
  // oscillator), so a max|theta|-relative cut would reject regular cases.
  ComplexField theta_margin(
      V0.grid, theta.values / ((p.abs() + dp.abs()) * (q.abs() + dq.abs()) + 1e-300));

  if (delta == Complex(0.0)) {  // zero shift: V2 is V0, bit for bit
    TwoStepResult r{V0,
                    theta,
                    ComplexField(V0.grid, p / theta.values),
                    std::nullopt,
                    theta.values.abs().minCoeff(),
                    request,
                    seed0,
                    seed_tilde,
                    x_ref};
    if (is_node_free(seed0))
      r.W_tilde = ComplexField(V0.grid, -dp / p);
    return r;
  }

  SingularityReport rep = check_nonsingular(theta, default_theta_tolerance(theta));
  if (!rep.passed)
    throw singular_theta_error(rep.min_abs_theta, rep.argmin_x,
                               "two_step_transform: |theta| = " +
                                   std::to_string(rep.min_abs_theta) + " at x = " +
                                   std::to_string(rep.argmin_x) + " is below tolerance " +
                                   std::to_string(rep.tolerance));

  // V2 = V0 - 2 delta {p q / theta}'; theta' = delta p q lets the derivative
  // come out of stored fields with no finite differencing.
  Eigen::ArrayXcd pq = p * q;
  Eigen::ArrayXcd dg = (dp * q + p * dq) / theta.values -
                       delta * pq.square() / theta.values.square();
  ComplexField V2(V0.grid, V0.values - 2.0 * delta * dg);

  TwoStepResult r{std::move(V2),
                  theta,
                  ComplexField(V0.grid, p / theta.values),
                  std::nullopt,
                  rep.min_abs_theta,
                  request,
                  seed0,
                  seed_tilde,
                  x_ref};
  if (is_node_free(seed0))
    r.W_tilde = ComplexField(V0.grid, -dp / p + delta * pq / theta.values);
  return r;
}

TwoStepResult two_step_shift(const ComplexField& V0, const FactorizationSeed& psi0,
                             const FactorizationSeed& psi0_tilde,
                             const ShiftRequest& request) {
  if (std::abs(psi0.energy - request.base_energy) > 1e-12 * (1.0 + std::abs(psi0.energy)))
    throw std::invalid_argument("two_step_shift: psi0 energy differs from request base");
  if (std::abs(psi0_tilde.energy - request.target()) >
      1e-12 * (1.0 + std::abs(psi0_tilde.energy)))
    throw std::invalid_argument("two_step_shift: psi0_tilde energy differs from target");
  // Reference point: where the counterpart recipe anchored its conditions.
  // Seeds built by make_seed use the base system's reference point; fall back
  // to the grid midpoint for hand-built seeds.
  const double x_ref = 0.5 * (V0.grid.x_min + V0.grid.x_max);
  return two_step_transform(V0, psi0, psi0_tilde, x_ref, request);
}

ComplexField map_solution_two_step(const TwoStepResult& result,
                                   const FactorizationSeed& psi0,
                                   const ComplexField& psi_E, Complex E) {
  require_same_grid(result.theta, psi_E, "map_solution_two_step");
  const Complex e0 = psi0.energy;
  if (std::abs(E - e0) < 1e-14 * (1.0 + std::abs(e0)))
    throw std::invalid_argument(
        "map_solution_two_step: E equals the factorization energy; use psi_shifted");

  // G is the antiderivative of psi0 psi_E fixed by theta_E = (E - e0) G,
  // i.e. the cumulative integral from x_ref plus the Wronskian value there.
  ComplexField prod(psi_E.grid, psi0.field.values * psi_E.values);
  ComplexField G = cumulative_integral(prod, result.x_ref);
  const int i0 = psi_E.grid.index_of(result.x_ref);
  ComplexField dpsi_E = derivative(psi_E);
  const Complex theta_E_ref =
      psi0.dfield.values[i0] * psi_E.values[i0] - psi0.field.values[i0] * dpsi_E.values[i0];
  G.values += theta_E_ref / (E - e0);

  // psi2 = psi_E - (Ebar - E0) psi0~ G / theta: expanding the two first-order
  // maps with the Eq.-12 superpotential carries the (Ebar - E0) factor, and
  // only with it does the zero-shift limit leave solutions untouched.
  const Complex delta = result.seed_tilde.energy - psi0.energy;
  return ComplexField(psi_E.grid,
                      psi_E.values - delta * result.seed_tilde.field.values * G.values /
                                         result.theta.values);
}

double aux_level_energy(const InfiniteWell& well, int aux_index) {
  if (aux_index < 1) throw std::invalid_argument("aux_level_shift: aux_index must be >= 1");
  const double k = (aux_index - 0.5) * M_PI / well.width;
  return k * k;
}

TwoStepResult aux_level_shift(const InfiniteWell& well, int aux_index, double gamma,
                              const GridSpec& grid) {
  if (gamma == 0.0)
    throw std::invalid_argument("aux_level_shift: gamma = 0 is the identity");
  const double k0 = (aux_index - 0.5) * M_PI / well.width;
  const double e0 = k0 * k0;

  // Auxiliary eigenfunction: psi' = 0 at x = 0, psi = 0 at x = width.
  FactorizationSeed seed0{
      Complex(e0),
      sample_field(grid, [=](double x) { return std::cos(k0 * x); }),
      sample_field(grid, [=](double x) { return -k0 * std::sin(k0 * x); }),
      "well-aux/" + std::to_string(aux_index)};

  // Second seed anchored at the Neumann wall with psi~(0) = 0: mapped
  // Dirichlet states then keep both boundary conditions (the two-spectra
  // structure), and the shifted aux state keeps psi' = 0 at that wall.
  const Complex ebar(e0, gamma);
  const Complex kbar = sqrt_principal(ebar);
  FactorizationSeed seed1{
      ebar,
      sample_field(grid, [=](double x) { return -std::sin(kbar * x) / kbar; }),
      sample_field(grid, [=](double x) { return -std::cos(kbar * x); }),
      "well-aux-counterpart"};

  ComplexField V0 = zero_field(grid);
  return two_step_transform(V0, seed0, seed1, 0.0, ShiftRequest{Complex(e0), gamma});
}

}  // namespace darboux
