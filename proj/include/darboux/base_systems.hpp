#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "darboux/grid.hpp"

namespace darboux {

// Analytic reference systems, units hbar^2/2m = 1:  -psi'' + V psi = E psi.
struct InfiniteWell {
  double width = M_PI;
};
struct HarmonicOscillator {};  // V = x^2, levels 2n+1
struct SolitonWell {};         // V = -2 sech^2 x, single level -1
struct FreeLine {};
struct FreeSuperposition {
  Complex c{2.0, 0.0};  // seed exp(-ikx) + c exp(ikx)
};

using BaseSystemSpec =
    std::variant<InfiniteWell, HarmonicOscillator, SolitonWell, FreeLine, FreeSuperposition>;

enum class SolutionKind { Principal, Counterpart, Superposition };

// Solution sampled together with its first derivative (integrators carry
// psi' anyway; downstream algebra wants it exact rather than re-differenced).
struct Solution {
  ComplexField psi;
  ComplexField dpsi;
};

double potential_at(const BaseSystemSpec& spec, double x);
ComplexField potential_field(const BaseSystemSpec& spec, const GridSpec& grid);

bool has_bound_states(const BaseSystemSpec& spec);
int bound_state_count(const BaseSystemSpec& spec);  // -1 = infinite

// Analytic eigenvalues with eigenfunctions normalized to <psi,psi> = 1.
std::vector<std::pair<double, ComplexField>> eigen_pairs(const BaseSystemSpec& spec,
                                                         int count,
                                                         const GridSpec& grid);

// Solution of the base equation at (possibly complex) E. Closed forms where
// available; otherwise RK4 continuation from the reference point.
Solution solution_at(const BaseSystemSpec& spec, Complex E, SolutionKind kind,
                     const GridSpec& grid);

// Reference point of the counterpart recipe: well midpoint, 0 on the line.
double reference_point(const BaseSystemSpec& spec);

GridSpec default_grid(const BaseSystemSpec& spec);

std::string system_name(const BaseSystemSpec& spec);

}  // namespace darboux
