#pragma once

#include "darboux/grid.hpp"

namespace darboux {

// First derivative: central differences inside, 4-point one-sided at the two
// boundary nodes (keeps the boundary error below the interior O(h^2) term).
ComplexField derivative(const ComplexField& f);

// Second difference (-psi'' building block); boundary nodes copied from the
// adjacent interior value, callers only ever read the interior.
ComplexField second_derivative(const ComplexField& f);

// Antiderivative F with F(x_ref) = 0 and F' = f. Cumulative Simpson on the
// parity chains with a third-order first panel; trapezoid fallback at n = 3.
ComplexField cumulative_integral(const ComplexField& f, double x_ref);

// Definite integral over the grid: composite Simpson, trapezoid on the last
// panel when the interval count is odd.
Complex integral(const ComplexField& f);

// Non-conjugated bilinear form  <f,g> = int f(x) g(x) dx.
Complex bilinear_form(const ComplexField& f, const ComplexField& g);

// Pointwise Wronskian  f'(x) g(x) - f(x) g'(x).
ComplexField wronskian_field(const ComplexField& f, const ComplexField& g);

// Cubic Lagrange interpolation of a sampled field at an off-grid point.
Complex value_at(const ComplexField& f, double x);

}  // namespace darboux
