#pragma once

#include <algorithm>
#include <functional>

#include "darboux/calculus.hpp"
#include "darboux/grid.hpp"

namespace darboux {

// Trajectory of -psi'' + V psi = E psi sampled on grid nodes.
struct Trajectory {
  GridSpec grid;
  Eigen::ArrayXcd psi;
  Eigen::ArrayXcd dpsi;

  ComplexField psi_field() const { return ComplexField(grid, psi); }
  ComplexField dpsi_field() const { return ComplexField(grid, dpsi); }
};

// Potential provider concept: at_node(i) and at_mid(i) (midpoint of [i, i+1]).
struct AnalyticPotential {
  GridSpec grid;
  std::function<double(double)> v;
  Complex at_node(int i) const { return Complex(v(grid.x(i))); }
  Complex at_mid(int i) const { return Complex(v(grid.x(i) + 0.5 * grid.step())); }
};

// Sampled potential with cubic midpoint interpolation (keeps RK4 at O(h^4)).
struct SampledPotential {
  const ComplexField* field;
  Eigen::ArrayXcd mid;  // n-1 midpoint values

  explicit SampledPotential(const ComplexField& f) : field(&f) {
    const int n = f.size();
    mid.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
      if (n >= 4) {
        const int b = std::clamp(i - 1, 0, n - 4);
        const double u = (i - b) + 0.5;
        Complex acc(0.0);
        for (int j = 0; j < 4; ++j) {
          double l = 1.0;
          for (int m = 0; m < 4; ++m)
            if (m != j) l *= (u - m) / (j - m);
          acc += l * f.values[b + j];
        }
        mid[i] = acc;
      } else {
        mid[i] = 0.5 * (f.values[i] + f.values[i + 1]);
      }
    }
  }
  Complex at_node(int i) const { return field->values[i]; }
  Complex at_mid(int i) const { return mid[i]; }
};

constexpr double kOverflowGuard = 1e300;

// Classical RK4 on (psi, psi') from node `from` to node `to` inclusive,
// writing every visited node into `out`. Step is +-h depending on direction.
template <class Pot>
void rk4_span(const GridSpec& g, const Pot& pot, Complex E, int from, int to,
              Complex psi0, Complex dpsi0, Trajectory& out) {
  const double h = g.step();
  const int dir = (to >= from) ? 1 : -1;
  const double dt = dir * h;
  Complex y0 = psi0, y1 = dpsi0;
  out.psi[from] = y0;
  out.dpsi[from] = y1;
  for (int i = from; i != to; i += dir) {
    const int mid_idx = (dir > 0) ? i : i - 1;
    const Complex vn = pot.at_node(i);
    const Complex vm = pot.at_mid(mid_idx);
    const Complex vn1 = pot.at_node(i + dir);

    const Complex k1p = y1;
    const Complex k1q = (vn - E) * y0;
    const Complex k2p = y1 + 0.5 * dt * k1q;
    const Complex k2q = (vm - E) * (y0 + 0.5 * dt * k1p);
    const Complex k3p = y1 + 0.5 * dt * k2q;
    const Complex k3q = (vm - E) * (y0 + 0.5 * dt * k2p);
    const Complex k4p = y1 + dt * k3q;
    const Complex k4q = (vn1 - E) * (y0 + dt * k3p);

    y0 += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    y1 += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    out.psi[i + dir] = y0;
    out.dpsi[i + dir] = y1;
    if (std::abs(y0.real()) > kOverflowGuard || std::abs(y0.imag()) > kOverflowGuard ||
        std::abs(y1.real()) > kOverflowGuard || std::abs(y1.imag()) > kOverflowGuard)
      throw overflow_error(
          "trajectory exceeded 1e300 near x = " + std::to_string(g.x(i + dir)) +
          "; restart from a renormalized interior point");
  }
}

template <class Pot>
Trajectory integrate_both_ways(const GridSpec& g, const Pot& pot, Complex E,
                               int start_idx, Complex psi0, Complex dpsi0) {
  Trajectory t{g, Eigen::ArrayXcd::Zero(g.n_points), Eigen::ArrayXcd::Zero(g.n_points)};
  rk4_span(g, pot, E, start_idx, g.n_points - 1, psi0, dpsi0, t);
  if (start_idx > 0) rk4_span(g, pot, E, start_idx, 0, psi0, dpsi0, t);
  return t;
}

}  // namespace darboux
