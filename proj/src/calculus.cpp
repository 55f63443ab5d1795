#include "darboux/calculus.hpp"

#include <algorithm>

namespace darboux {

ComplexField derivative(const ComplexField& f) {
  const int n = f.size();
  if (n < 3) throw std::invalid_argument("derivative: need n_points >= 3");
  const double h = f.grid.step();
  const auto& v = f.values;
  Eigen::ArrayXcd d(n);
  d.segment(1, n - 2) = (v.tail(n - 2) - v.head(n - 2)) / (2.0 * h);
  if (n >= 4) {
    d[0] = (-11.0 * v[0] + 18.0 * v[1] - 9.0 * v[2] + 2.0 * v[3]) / (6.0 * h);
    d[n - 1] =
        (11.0 * v[n - 1] - 18.0 * v[n - 2] + 9.0 * v[n - 3] - 2.0 * v[n - 4]) / (6.0 * h);
  } else {
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  }
  return ComplexField(f.grid, std::move(d));
}

ComplexField second_derivative(const ComplexField& f) {
  const int n = f.size();
  if (n < 3) throw std::invalid_argument("second_derivative: need n_points >= 3");
  const double h2 = f.grid.step() * f.grid.step();
  const auto& v = f.values;
  Eigen::ArrayXcd d(n);
  d.segment(1, n - 2) = (v.head(n - 2) - 2.0 * v.segment(1, n - 2) + v.tail(n - 2)) / h2;
  d[0] = d[1];
  d[n - 1] = d[n - 2];
  return ComplexField(f.grid, std::move(d));
}

ComplexField cumulative_integral(const ComplexField& f, double x_ref) {
  if (!f.grid.contains(x_ref))
    throw std::invalid_argument("cumulative_integral: x_ref outside grid");
  const int n = f.size();
  const double h = f.grid.step();
  const auto& v = f.values;
  Eigen::ArrayXcd c(n);
  c[0] = Complex(0.0);
  if (n >= 3)
    c[1] = h * (5.0 * v[0] + 8.0 * v[1] - v[2]) / 12.0;
  else
    c[1] = h * (v[0] + v[1]) / 2.0;
  for (int i = 2; i < n; ++i)
    c[i] = c[i - 2] + h * (v[i - 2] + 4.0 * v[i - 1] + v[i]) / 3.0;

  // Shift so the antiderivative vanishes at x_ref (linear interp off-node).
  const double t = (x_ref - f.grid.x_min) / h;
  const int i0 = std::clamp(static_cast<int>(t), 0, n - 2);
  const double w = t - i0;
  const Complex offset = (1.0 - w) * c[i0] + w * c[i0 + 1];
  c -= offset;
  return ComplexField(f.grid, std::move(c));
}

Complex integral(const ComplexField& f) {
  const int n = f.size();
  const double h = f.grid.step();
  const auto& v = f.values;
  const int intervals = n - 1;
  Complex s(0.0);
  int last = intervals;        // first node index not covered by Simpson pairs
  if (intervals % 2 != 0) last = intervals - 1;
  for (int i = 0; i + 2 <= last; i += 2)
    s += h * (v[i] + 4.0 * v[i + 1] + v[i + 2]) / 3.0;
  if (intervals % 2 != 0) s += h * (v[n - 2] + v[n - 1]) / 2.0;
  return s;
}

Complex bilinear_form(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f, g, "bilinear_form");
  return integral(ComplexField(f.grid, f.values * g.values));
}

ComplexField wronskian_field(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f, g, "wronskian_field");
  const ComplexField df = derivative(f);
  const ComplexField dg = derivative(g);
  return ComplexField(f.grid, df.values * g.values - f.values * dg.values);
}

Complex value_at(const ComplexField& f, double x) {
  const int n = f.size();
  if (!f.grid.contains(x)) throw std::invalid_argument("value_at: x outside grid");
  const double h = f.grid.step();
  const double t = (x - f.grid.x_min) / h;
  if (n < 4) {  // linear fallback on tiny grids
    const int i0 = std::clamp(static_cast<int>(t), 0, n - 2);
    const double w = t - i0;
    return (1.0 - w) * f.values[i0] + w * f.values[i0 + 1];
  }
  const int base = std::clamp(static_cast<int>(t) - 1, 0, n - 4);
  const double u = t - base;  // in [approximately 0, 3]
  Complex acc(0.0);
  for (int j = 0; j < 4; ++j) {
    double l = 1.0;
    for (int m = 0; m < 4; ++m)
      if (m != j) l *= (u - m) / (j - m);
    acc += l * f.values[base + j];
  }
  return acc;
}

}  // namespace darboux
