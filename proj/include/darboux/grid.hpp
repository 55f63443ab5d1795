#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>

#include "darboux/errors.hpp"

namespace darboux {

using Complex = std::complex<double>;

// Uniform one-dimensional grid x_i = x_min + i*h, i = 0..n_points-1.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_points = 3;

  double step() const { return (x_max - x_min) / (n_points - 1); }
  double x(int i) const { return x_min + step() * i; }

  Eigen::ArrayXd points() const {
    return Eigen::ArrayXd::LinSpaced(n_points, x_min, x_max);
  }

  // Nearest grid node to x; requires x within the grid (half-step slack).
  int index_of(double x_ref) const {
    const double h = step();
    const int i = static_cast<int>(std::lround((x_ref - x_min) / h));
    if (i < 0 || i >= n_points || std::abs(x(i) - x_ref) > 0.5 * h + 1e-12)
      throw std::invalid_argument("reference point " + std::to_string(x_ref) +
                                  " outside grid [" + std::to_string(x_min) + ", " +
                                  std::to_string(x_max) + "]");
    return i;
  }

  bool contains(double x_ref) const {
    const double slack = 1e-12 * (std::abs(x_min) + std::abs(x_max) + 1.0);
    return x_ref >= x_min - slack && x_ref <= x_max + slack;
  }

  bool operator==(const GridSpec&) const = default;
};

inline GridSpec make_grid(double x_min, double x_max, int n_points) {
  if (!(x_min < x_max)) throw std::invalid_argument("grid requires x_min < x_max");
  if (n_points < 3) throw std::invalid_argument("grid requires n_points >= 3");
  return GridSpec{x_min, x_max, n_points};
}

// Complex-valued function sampled on a uniform grid.
struct ComplexField {
  GridSpec grid;
  Eigen::ArrayXcd values;

  ComplexField() = default;
  ComplexField(GridSpec g, Eigen::ArrayXcd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_points)
      throw std::invalid_argument("field length does not match grid point count");
  }

  int size() const { return grid.n_points; }
  Complex operator()(int i) const { return values[i]; }
};

inline ComplexField zero_field(const GridSpec& g) {
  return ComplexField(g, Eigen::ArrayXcd::Zero(g.n_points));
}

template <class Fn>
ComplexField sample_field(const GridSpec& g, Fn&& f) {
  Eigen::ArrayXcd v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) v[i] = Complex(f(g.x(i)));
  return ComplexField(g, std::move(v));
}

inline void require_same_grid(const ComplexField& a, const ComplexField& b,
                              const char* where) {
  if (!(a.grid == b.grid))
    throw grid_mismatch_error(std::string(where) + ": operands live on different grids");
}

inline double sup_abs(const ComplexField& f) { return f.values.abs().maxCoeff(); }

// Principal square root with Re >= 0; on the cut (Re = 0) picks Im > 0.
inline Complex sqrt_principal(Complex z) {
  Complex w = std::sqrt(z);
  if (w.real() < 0.0) w = -w;
  if (w.real() == 0.0 && w.imag() < 0.0) w = -w;
  return w;
}

}  // namespace darboux
