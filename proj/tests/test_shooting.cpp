// Shooting eigensolver and integrator checks against analytic spectra.

#include <doctest.h>

#include <cmath>

#include "darboux/base_systems.hpp"
#include "darboux/calculus.hpp"
#include "darboux/shooting.hpp"

using namespace darboux;

TEST_CASE("free integration from (0,1) reproduces sin(x)") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField V = zero_field(g);
  const ComplexField psi =
      integrate_schrodinger(V, Complex(1.0), {Complex(0.0), Complex(1.0)},
                            Direction::LeftToRight);
  const ComplexField expect = sample_field(g, [](double x) { return std::sin(x); });
  const double h = g.step();
  CHECK((psi.values - expect.values).abs().maxCoeff() < 10.0 * h * h * h * h);
}

TEST_CASE("free integration at E = i reproduces the complex exponential") {
  const GridSpec g = make_grid(0.0, 5.0, 1001);
  const ComplexField V = zero_field(g);
  const Complex I(0.0, 1.0);
  const Complex k = sqrt_principal(I);  // sqrt(i), principal branch
  const ComplexField psi =
      integrate_schrodinger(V, I, {Complex(1.0), I * k}, Direction::LeftToRight);
  const ComplexField expect = sample_field(g, [&](double x) { return std::exp(I * k * x); });
  CHECK((psi.values - expect.values).abs().maxCoeff() < 1e-9);
}

TEST_CASE("complex-arithmetic and coupled-real integrations agree") {
  const GridSpec g = make_grid(-15.0, 15.0, 3001);
  const BaseSystemSpec spec = SolitonWell{};
  ComplexField V = potential_field(spec, g);
  // make it non-Hermitian: shift the imaginary part by a smooth bump
  for (int i = 0; i < g.n_points; ++i) {
    const double x = g.x(i);
    V.values[i] += Complex(0.0, -0.5 / std::cosh(x) / std::cosh(x));
  }
  const Complex E(-1.0, -1.0);
  const std::pair<Complex, Complex> ic{Complex(1.0), Complex(1.2, 0.3)};
  const ComplexField a = integrate_schrodinger(V, E, ic, Direction::LeftToRight);
  const ComplexField b = integrate_schrodinger_coupled(V, E, ic, Direction::LeftToRight);
  const double scale = sup_abs(a);
  CHECK((a.values - b.values).abs().maxCoeff() < 1e-12 * scale);
}

TEST_CASE("well eigenvalue from guess 1.2 lands on 1 within 1e-8") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField V = zero_field(g);
  const EigenResult r = find_eigenvalue(V, Complex(1.2), BoundarySpec::dirichlet());
  CHECK(std::abs(r.energy - Complex(1.0)) < 1e-8);
  CHECK(r.residual < 1e-4);
}

TEST_CASE("soliton bound state found from a complex guess") {
  const GridSpec g = make_grid(-15.0, 15.0, 3001);
  const ComplexField V = potential_field(SolitonWell{}, g);
  const EigenResult r =
      find_eigenvalue(V, Complex(-0.9, 0.1), BoundarySpec::decaying());
  CHECK(std::abs(r.energy - Complex(-1.0)) < 1e-8);
  CHECK(r.tail_decay_rate < -1.0);
}

TEST_CASE("every base system reproduces its analytic levels within 1e-8") {
  {
    const GridSpec g = make_grid(0.0, M_PI, 2001);
    const ComplexField V = zero_field(g);
    for (double e : {1.0, 4.0, 9.0, 16.0}) {
      const EigenResult r =
          find_eigenvalue(V, Complex(e * 1.05 + 0.02), BoundarySpec::dirichlet());
      CHECK(std::abs(r.energy - Complex(e)) < 1e-8);
    }
  }
  {
    const GridSpec g = make_grid(-15.0, 15.0, 3001);
    const ComplexField V = potential_field(HarmonicOscillator{}, g);
    for (double e : {1.0, 3.0}) {
      const EigenResult r =
          find_eigenvalue(V, Complex(e + 0.05), BoundarySpec::decaying());
      CHECK(std::abs(r.energy - Complex(e)) < 1e-8);
    }
  }
}

TEST_CASE("eigenvalue does not depend on the match point") {
  const GridSpec g = make_grid(-15.0, 15.0, 3001);
  const ComplexField V = potential_field(SolitonWell{}, g);
  Complex prev(0.0);
  bool first = true;
  for (double mx : {-2.0, 0.5, 3.0}) {
    ShootingConfig cfg;
    cfg.match_x = mx;
    const EigenResult r = find_eigenvalue(V, Complex(-0.9), BoundarySpec::decaying(), cfg);
    if (!first) CHECK(std::abs(r.energy - prev) < 1e-8);
    prev = r.energy;
    first = false;
  }
}

TEST_CASE("scan over the real well returns clean real levels") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField V = zero_field(g);
  const auto found =
      scan_spectrum(V, {Complex(1.1), Complex(4.2), Complex(8.9)}, BoundarySpec::dirichlet());
  REQUIRE(found.size() == 3);
  CHECK(std::abs(found[0].energy - Complex(1.0)) < 1e-8);
  CHECK(std::abs(found[1].energy - Complex(4.0)) < 1e-8);
  CHECK(std::abs(found[2].energy - Complex(9.0)) < 1e-8);
  for (const auto& r : found) CHECK(std::abs(r.energy.imag()) < 1e-9);
}

TEST_CASE("scan yields pairwise-distinct genuine levels and rejects empty input") {
  const GridSpec g = make_grid(0.0, M_PI, 1001);
  const ComplexField V = zero_field(g);
  // deflation steers repeated guesses to other levels, never to duplicates
  const auto found =
      scan_spectrum(V, {Complex(1.1), Complex(0.9), Complex(1.3)}, BoundarySpec::dirichlet());
  for (size_t i = 0; i < found.size(); ++i) {
    double nearest = 1e300;
    for (int n = 1; n <= 8; ++n)
      nearest = std::min(nearest, std::abs(found[i].energy - Complex(n * n)));
    CHECK(nearest < 1e-7);
    for (size_t j = i + 1; j < found.size(); ++j)
      CHECK(std::abs(found[i].energy - found[j].energy) > 1e-6);
  }
  CHECK_THROWS_AS(scan_spectrum(V, {}, BoundarySpec::dirichlet()), std::invalid_argument);
}

TEST_CASE("residual norm: exact pair small, perturbed pair large, zero field zero") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField V = zero_field(g);
  const ComplexField psi = sample_field(g, [](double x) { return std::sin(x); });
  const double h = g.step();
  CHECK(residual_norm(V, Complex(1.0), psi) < 1.0 * h * h);

  ComplexField noisy = psi;
  std::srand(7);
  for (int i = 0; i < noisy.size(); ++i)
    noisy.values[i] += 1e-3 * (2.0 * (std::rand() / double(RAND_MAX)) - 1.0);
  CHECK(residual_norm(V, Complex(1.0), noisy) > 1e-1);

  CHECK(residual_norm(V, Complex(1.0), zero_field(g)) == 0.0);
}

TEST_CASE("integrability: sech decays at rate -2, a sine does not decay") {
  const GridSpec g = make_grid(-15.0, 15.0, 3001);
  const ComplexField sech = sample_field(g, [](double x) { return 1.0 / std::cosh(x); });
  const IntegrabilityReport a = l2_integrability(sech);
  CHECK(a.integrable);
  CHECK(a.tail_decay_rate == doctest::Approx(-2.0).epsilon(0.05));

  const GridSpec glong = make_grid(-40.0, 40.0, 8001);
  const ComplexField sine = sample_field(glong, [](double x) { return std::sin(x); });
  const IntegrabilityReport b = l2_integrability(sine);
  CHECK_FALSE(b.integrable);
  CHECK(std::abs(b.tail_decay_rate) < 0.05);
}

TEST_CASE("probability flux of real-V real-E solutions is constant") {
  const GridSpec g = make_grid(-15.0, 15.0, 3001);
  const ComplexField V = potential_field(SolitonWell{}, g);
  const Complex I(0.0, 1.0);
  const double k = std::sqrt(2.0);
  const ComplexField psi = integrate_schrodinger(
      V, Complex(2.0), {Complex(1.0), I * k}, Direction::LeftToRight);
  // Im(conj(psi) psi') pointwise via the FD derivative
  ComplexField d(g, Eigen::ArrayXcd::Zero(g.n_points));
  {
    const double h = g.step();
    for (int i = 1; i < g.n_points - 1; ++i)
      d.values[i] = (psi.values[i + 1] - psi.values[i - 1]) / (2.0 * h);
  }
  double mn = 1e300, mx = -1e300;
  for (int i = 1; i < g.n_points - 1; ++i) {
    const double flux = std::imag(std::conj(psi.values[i]) * d.values[i]);
    mn = std::min(mn, flux);
    mx = std::max(mx, flux);
  }
  const double h = g.step();
  CHECK(mx - mn < 20.0 * h * h * sup_abs(psi) * sup_abs(psi));
}

TEST_CASE("biorthogonality of real well states is the identity matrix") {
  const GridSpec g = make_grid(0.0, M_PI, 2001);
  const ComplexField V = zero_field(g);
  const auto found = scan_spectrum(
      V, {Complex(1.1), Complex(4.1), Complex(9.1)}, BoundarySpec::dirichlet());
  REQUIRE(found.size() == 3);
  const BiorthoReport rep = biortho_matrix(found);
  CHECK(rep.max_offdiag < 1e-8);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(rep.gram(i, i) - Complex(1.0)) < 1e-8);
}

TEST_CASE("single state gives the 1x1 unit matrix") {
  const GridSpec g = make_grid(0.0, M_PI, 1001);
  const ComplexField V = zero_field(g);
  const EigenResult r = find_eigenvalue(V, Complex(1.1), BoundarySpec::dirichlet());
  const BiorthoReport rep = biortho_matrix({r});
  REQUIRE(rep.gram.rows() == 1);
  CHECK(std::abs(rep.gram(0, 0) - Complex(1.0)) < 1e-10);
}

TEST_CASE("decaying tail demands a genuinely decaying branch") {
  const GridSpec g = make_grid(-15.0, 15.0, 3001);
  const ComplexField V = potential_field(SolitonWell{}, g);
  // E above the asymptotic potential: Re kappa = 0, no decaying branch
  CHECK_THROWS_AS(find_eigenvalue(V, Complex(2.0), BoundarySpec::decaying()),
                  std::exception);
}
