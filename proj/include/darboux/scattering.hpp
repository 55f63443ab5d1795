#pragma once

#include <optional>
#include <vector>

#include "darboux/darboux.hpp"
#include "darboux/grid.hpp"

namespace darboux {

struct ScatterResult {
  double E = 0.0;
  double k = 0.0;
  Complex R{0.0};
  Complex T{0.0};
  double flux_in_left = 0.0;
  double flux_out_right = 0.0;
  double flux_out_left = 0.0;
};

struct FluxScan {
  std::vector<double> energies;
  std::vector<double> delta_I;
  std::optional<double> peak_energy;
};

struct EnvelopeFit {
  std::vector<double> extrema_positions;
  std::vector<double> extrema_amplitudes;
  double fit_slope = 0.0;
  double fit_intercept = 0.0;
  double r_squared = 0.0;
};

struct BeatReport {
  double E = 0.0;
  double beat_wavelength = 0.0;  // mean spacing of envelope minima
  int n_beats_observed = 0;
};

// I(x) = Im(conj(psi) psi'), returned as a real-valued field.
ComplexField probability_flux(const ComplexField& psi);

// Transmitted-wave back-integration with two-point plane-wave matching.
ScatterResult reflection_transmission(const ComplexField& V, double E);

FluxScan flux_deficit_scan(const ComplexField& V, const std::vector<double>& energies);

// Window-averaged asymptotic flux difference I(right) - I(left) at energy E.
double flux_deficit(const ComplexField& V, double E);

// Same quantity through the divergence identity  dI/dx = Im V |psi|^2.
double flux_deficit_volume(const ComplexField& V, double E);

// Continuum shift of the free line at e_cont > 0: quasi-periodic potential
// plus a square-integrable state at e_cont + i*gamma.
TwoStepResult continuum_shift_construct(double e_cont, double gamma, const GridSpec& grid);

// Amplitude growth of the solution exactly at the collapsed-gap energy.
EnvelopeFit pop_envelope(const ComplexField& V2, double e_pop);

BeatReport beat_analysis(const ComplexField& V2, double E, double e_pop);

// Max |V(x+period) - V(x)| via linear interpolation; periodic when the
// deviation stays below rel_tol * max|V|.
std::pair<double, bool> periodicity_check(const ComplexField& V, double period,
                                          double rel_tol = 1e-4);

}  // namespace darboux
