// Grid calculus checks against closed-form derivatives and antiderivatives.

#include <doctest.h>

#include <cmath>
#include <random>

#include "darboux/calculus.hpp"

using namespace darboux;

namespace {

double sup_diff(const ComplexField& a, const ComplexField& b) {
  return (a.values - b.values).abs().maxCoeff();
}

}  // namespace

TEST_CASE("derivative of sin on [0, pi] matches cos to 5e-7") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField f = sample_field(g, [](double x) { return std::sin(x); });
  const ComplexField expect = sample_field(g, [](double x) { return std::cos(x); });
  CHECK(sup_diff(derivative(f), expect) < 5e-7);
}

TEST_CASE("derivative of a constant field is zero") {
  const GridSpec g = make_grid(-3.0, 4.0, 501);
  const ComplexField f = sample_field(g, [](double) { return Complex(1.0, 2.0); });
  CHECK(sup_abs(derivative(f)) < 1e-12);
}

TEST_CASE("derivative of exp(ix) is i exp(ix) to O(h^2)") {
  const GridSpec g = make_grid(0.0, 6.0, 1201);
  const Complex I(0.0, 1.0);
  const ComplexField f = sample_field(g, [&](double x) { return std::exp(I * x); });
  const ComplexField expect = sample_field(g, [&](double x) { return I * std::exp(I * x); });
  const double h = g.step();
  CHECK(sup_diff(derivative(f), expect) < 1.0 * h * h);
}

TEST_CASE("derivative rejects grids below three points") {
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 2), std::invalid_argument);
}

TEST_CASE("cumulative integral of cos anchored at 0 is sin to O(h^2)") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField f = sample_field(g, [](double x) { return std::cos(x); });
  const ComplexField expect = sample_field(g, [](double x) { return std::sin(x); });
  const double h = g.step();
  CHECK(sup_diff(cumulative_integral(f, 0.0), expect) < 1.0 * h * h);
}

TEST_CASE("cumulative integral of zero is zero") {
  const GridSpec g = make_grid(-1.0, 1.0, 101);
  CHECK(sup_abs(cumulative_integral(zero_field(g), 0.5)) == 0.0);
}

TEST_CASE("cumulative integral of 2x from 0 is x^2") {
  const GridSpec g = make_grid(0.0, 1.0, 301);
  const ComplexField f = sample_field(g, [](double x) { return 2.0 * x; });
  const ComplexField expect = sample_field(g, [](double x) { return x * x; });
  const double h = g.step();
  CHECK(sup_diff(cumulative_integral(f, 0.0), expect) < h * h);
}

TEST_CASE("cumulative integral rejects x_ref outside the grid") {
  const GridSpec g = make_grid(0.0, 1.0, 11);
  CHECK_THROWS_AS(cumulative_integral(zero_field(g), 2.0), std::invalid_argument);
}

TEST_CASE("bilinear form of the normalized sine mode is 1") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const double a = std::sqrt(2.0 / M_PI);
  const ComplexField f = sample_field(g, [&](double x) { return a * std::sin(x); });
  CHECK(std::abs(bilinear_form(f, f) - Complex(1.0)) < 1e-6);
}

TEST_CASE("bilinear form of orthogonal well modes vanishes") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField f = sample_field(g, [](double x) { return std::sin(x); });
  const ComplexField h = sample_field(g, [](double x) { return std::sin(2.0 * x); });
  CHECK(std::abs(bilinear_form(f, h)) < 1e-8);
}

TEST_CASE("bilinear form is bilinear, not sesquilinear") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const Complex I(0.0, 1.0);
  const ComplexField f = sample_field(g, [&](double x) { return I * std::sin(x); });
  CHECK(std::abs(bilinear_form(f, f) - Complex(-M_PI / 2.0)) < 1e-6);
}

TEST_CASE("bilinear form rejects mismatched grids") {
  const ComplexField a = zero_field(make_grid(0.0, 1.0, 11));
  const ComplexField b = zero_field(make_grid(0.0, 1.0, 12));
  CHECK_THROWS_AS(bilinear_form(a, b), grid_mismatch_error);
}

TEST_CASE("Wronskian of a same-energy sine/cosine pair is constant") {
  // f'g - f g' = cos^2 + sin^2 = 1 for (sin, cos).
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField f = sample_field(g, [](double x) { return std::sin(x); });
  const ComplexField c = sample_field(g, [](double x) { return std::cos(x); });
  const ComplexField w = wronskian_field(f, c);
  const double h = g.step();
  CHECK((w.values - Complex(1.0)).abs().maxCoeff() < 2.0 * h * h);
}

TEST_CASE("Wronskian is exactly antisymmetric sample by sample") {
  const GridSpec g = make_grid(-2.0, 2.0, 401);
  const Complex I(0.0, 1.0);
  const ComplexField f = sample_field(g, [&](double x) { return std::exp(I * x) + x; });
  const ComplexField h = sample_field(g, [&](double x) { return std::cosh(0.5 * x); });
  const ComplexField w1 = wronskian_field(f, h);
  const ComplexField w2 = wronskian_field(h, f);
  CHECK((w1.values + w2.values).abs().maxCoeff() == 0.0);
  CHECK(sup_abs(wronskian_field(f, f)) == 0.0);
}

TEST_CASE("Wronskian derivative identity for different-energy sines") {
  // theta' = (E - E0) psi0 psi_E for solutions at E = 4, E0 = 1 over V = 0;
  // second-order convergence checked by halving h.
  auto err_at = [](int n) {
    const GridSpec g = make_grid(0.0, M_PI, n);
    const ComplexField f = sample_field(g, [](double x) { return std::sin(x); });
    const ComplexField s2 = sample_field(g, [](double x) { return std::sin(2.0 * x); });
    const ComplexField w = wronskian_field(f, s2);
    const ComplexField dw = derivative(w);
    const ComplexField expect =
        ComplexField(g, Complex(3.0) * f.values * s2.values);
    double m = 0.0;
    for (int i = 1; i < g.n_points - 1; ++i)
      m = std::max(m, std::abs(dw.values[i] - expect.values[i]));
    return m;
  };
  const double e1 = err_at(1001);
  const double e2 = err_at(2001);
  const double h2 = M_PI / 2000.0;
  CHECK(e2 < 10.0 * h2 * h2);
  CHECK(e1 / e2 > 3.2);
  CHECK(e1 / e2 < 4.8);
}

TEST_CASE("derivative of cumulative integral returns the field (property)") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  const GridSpec g = make_grid(-2.0, 3.0, 1501);
  const double h = g.step();
  for (int trial = 0; trial < 5; ++trial) {
    double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng), b = amp(rng);
    const ComplexField f = sample_field(g, [&](double x) {
      return Complex(a1 * std::sin(x) + a2 * std::cos(2.0 * x) + a3 * x, b * std::sin(3.0 * x));
    });
    const ComplexField F = cumulative_integral(f, 0.0);
    const ComplexField back = derivative(F);
    double m = 0.0;
    for (int i = 1; i < g.n_points - 1; ++i)
      m = std::max(m, std::abs(back.values[i] - f.values[i]));
    CHECK(m < 5.0 * h * h);
  }
}

TEST_CASE("bilinear form is symmetric to machine precision") {
  const GridSpec g = make_grid(-1.0, 2.0, 777);
  const Complex I(0.0, 1.0);
  const ComplexField f = sample_field(g, [&](double x) { return std::exp(I * 2.0 * x); });
  const ComplexField h = sample_field(g, [&](double x) { return Complex(x, -x * x); });
  CHECK(std::abs(bilinear_form(f, h) - bilinear_form(h, f)) < 1e-12);
}

TEST_CASE("same-energy solution pair has constant Wronskian") {
  const double k = 1.7;
  const GridSpec g = make_grid(-4.0, 4.0, 1601);
  const ComplexField f = sample_field(g, [&](double x) { return std::sin(k * x); });
  const ComplexField c = sample_field(g, [&](double x) { return std::cos(k * x); });
  const ComplexField w = wronskian_field(f, c);
  const double h = g.step();
  CHECK((w.values - Complex(k)).abs().maxCoeff() < 5.0 * h * h);
}
