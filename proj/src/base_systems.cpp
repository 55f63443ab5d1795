#include "darboux/base_systems.hpp"

#include <cmath>

#include "darboux/rk4.hpp"

namespace darboux {

namespace {

double sech(double x) { return 1.0 / std::cosh(x); }


void require_well_grid(const InfiniteWell& w, const GridSpec& g) {
  const double tol = 1e-10 * (1.0 + w.width);
  if (std::abs(g.x_min) > tol || std::abs(g.x_max - w.width) > tol)
    throw std::invalid_argument("infinite well requires the grid to span exactly [0, width]");
}

Solution from_trajectory(const Trajectory& t) {
  return Solution{t.psi_field(), t.dpsi_field()};
}

Solution integrate_from_reference(const BaseSystemSpec& spec, Complex E,
                                  const GridSpec& grid, Complex psi0, Complex dpsi0) {
  const double x0 = reference_point(spec);
  AnalyticPotential pot{grid, [&spec](double x) { return potential_at(spec, x); }};
  return from_trajectory(integrate_both_ways(grid, pot, E, grid.index_of(x0), psi0, dpsi0));
}

// Parity of the oscillator level nearest to Re E (levels 2n+1, V = x^2).
int nearest_oscillator_index(Complex E) {
  const int n = static_cast<int>(std::lround((E.real() - 1.0) / 2.0));
  return std::max(n, 0);
}

Solution closed_form(const GridSpec& g, const std::function<Complex(double)>& f,
                     const std::function<Complex(double)>& df) {
  Eigen::ArrayXcd v(g.n_points), d(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    v[i] = f(g.x(i));
    d[i] = df(g.x(i));
  }
  return Solution{ComplexField(g, std::move(v)), ComplexField(g, std::move(d))};
}

// Counterpart on a zero-potential stretch: closed-form continuation anchored
// at x0 with Wronskian +1 against the principal branch at Re E.
Solution flat_counterpart(const GridSpec& g, Complex E, double x0) {
  const double er = E.real();
  if (er <= 0.0)
    throw std::invalid_argument("counterpart continuation needs Re E > 0 here");
  const double k_real = std::sqrt(er);
  const Complex kbar = sqrt_principal(E);
  const double p_val = std::sin(k_real * x0);
  const double p_der = k_real * std::cos(k_real * x0);
  if (std::abs(p_val) > 1e-8) {
    return closed_form(
        g, [=](double x) { return -std::sin(kbar * (x - x0)) / (kbar * p_val); },
        [=](double x) { return -std::cos(kbar * (x - x0)) / p_val; });
  }
  // Principal vanishes at x0 (even well levels, free-line sin): swap roles.
  return closed_form(
      g, [=](double x) { return std::cos(kbar * (x - x0)) / p_der; },
      [=](double x) { return -kbar * std::sin(kbar * (x - x0)) / p_der; });
}

}  // namespace

double potential_at(const BaseSystemSpec& spec, double x) {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HarmonicOscillator>)
          return x * x;
        else if constexpr (std::is_same_v<T, SolitonWell>)
          return -2.0 * sech(x) * sech(x);
        else
          return 0.0;
      },
      spec);
}

ComplexField potential_field(const BaseSystemSpec& spec, const GridSpec& grid) {
  if (const auto* w = std::get_if<InfiniteWell>(&spec)) require_well_grid(*w, grid);
  Eigen::ArrayXcd v(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) v[i] = Complex(potential_at(spec, grid.x(i)), 0.0);
  return ComplexField(grid, std::move(v));
}

bool has_bound_states(const BaseSystemSpec& spec) {
  return std::holds_alternative<InfiniteWell>(spec) ||
         std::holds_alternative<HarmonicOscillator>(spec) ||
         std::holds_alternative<SolitonWell>(spec);
}

int bound_state_count(const BaseSystemSpec& spec) {
  if (std::holds_alternative<SolitonWell>(spec)) return 1;
  return has_bound_states(spec) ? -1 : 0;
}

std::vector<std::pair<double, ComplexField>> eigen_pairs(const BaseSystemSpec& spec,
                                                         int count,
                                                         const GridSpec& grid) {
  if (count < 1) throw std::invalid_argument("eigen_pairs: count must be >= 1");
  if (!has_bound_states(spec))
    throw std::invalid_argument("eigen_pairs: system has no bound states");
  const int avail = bound_state_count(spec);
  if (avail >= 0 && count > avail)
    throw std::invalid_argument("eigen_pairs: count exceeds bound-state count");

  std::vector<std::pair<double, ComplexField>> out;
  if (const auto* w = std::get_if<InfiniteWell>(&spec)) {
    require_well_grid(*w, grid);
    const double L = w->width;
    const double amp = std::sqrt(2.0 / L);
    for (int n = 1; n <= count; ++n) {
      const double k = n * M_PI / L;
      out.emplace_back(k * k,
                       sample_field(grid, [&](double x) { return amp * std::sin(k * x); }));
    }
  } else if (std::holds_alternative<HarmonicOscillator>(spec)) {
    for (int n = 0; n < count; ++n) {
      const double norm =
          1.0 / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(M_PI));
      out.emplace_back(2.0 * n + 1.0, sample_field(grid, [&](double x) {
                         double h0 = 1.0, h1 = 2.0 * x;  // Hermite recurrence
                         double h = (n == 0) ? h0 : h1;
                         for (int m = 2; m <= n; ++m) {
                           const double h2 = 2.0 * x * h1 - 2.0 * (m - 1) * h0;
                           h0 = h1;
                           h1 = h2;
                           h = h2;
                         }
                         return norm * h * std::exp(-0.5 * x * x);
                       }));
    }
  } else {  // soliton
    out.emplace_back(-1.0, sample_field(grid, [](double x) { return sech(x) / std::sqrt(2.0); }));
  }
  return out;
}

double reference_point(const BaseSystemSpec& spec) {
  if (const auto* w = std::get_if<InfiniteWell>(&spec)) return 0.5 * w->width;
  return 0.0;
}

GridSpec default_grid(const BaseSystemSpec& spec) {
  if (const auto* w = std::get_if<InfiniteWell>(&spec)) return make_grid(0.0, w->width, 2001);
  return make_grid(-15.0, 15.0, 3001);
}

Solution solution_at(const BaseSystemSpec& spec, Complex E, SolutionKind kind,
                     const GridSpec& grid) {
  if (kind == SolutionKind::Superposition) {
    const auto* fs = std::get_if<FreeSuperposition>(&spec);
    if (!fs)
      throw std::invalid_argument("Superposition seed is only defined for the free system");
    const Complex k = sqrt_principal(E);
    const Complex c = fs->c;
    const Complex I(0.0, 1.0);
    return closed_form(
        grid,
        [=](double x) { return std::exp(-I * k * x) + c * std::exp(I * k * x); },
        [=](double x) { return I * k * (-std::exp(-I * k * x) + c * std::exp(I * k * x)); });
  }

  if (const auto* w = std::get_if<InfiniteWell>(&spec)) {
    require_well_grid(*w, grid);
    if (kind == SolutionKind::Principal) {
      const Complex k = sqrt_principal(E);
      return closed_form(grid, [=](double x) { return std::sin(k * x); },
                         [=](double x) { return k * std::cos(k * x); });
    }
    return flat_counterpart(grid, E, 0.5 * w->width);
  }

  if (std::holds_alternative<FreeLine>(spec) || std::holds_alternative<FreeSuperposition>(spec)) {
    if (kind == SolutionKind::Principal) {
      const Complex k = sqrt_principal(E);
      return closed_form(grid, [=](double x) { return std::sin(k * x); },
                         [=](double x) { return k * std::cos(k * x); });
    }
    return flat_counterpart(grid, E, 0.0);
  }

  if (std::holds_alternative<SolitonWell>(spec)) {
    if (kind == SolutionKind::Principal) {
      if (std::abs(E - Complex(-1.0)) < 1e-14)
        return closed_form(grid, [](double x) { return Complex(sech(x)); },
                           [](double x) { return Complex(-sech(x) * std::tanh(x)); });
      return integrate_from_reference(spec, E, grid, Complex(1.0), Complex(0.0));
    }
    // Principal value at the reference point is 1 by construction.
    return integrate_from_reference(spec, E, grid, Complex(0.0), Complex(-1.0));
  }

  // Harmonic oscillator: parity of the nearest level fixes the continuation.
  const bool even = nearest_oscillator_index(E) % 2 == 0;
  if (kind == SolutionKind::Principal) {
    return even ? integrate_from_reference(spec, E, grid, Complex(1.0), Complex(0.0))
                : integrate_from_reference(spec, E, grid, Complex(0.0), Complex(1.0));
  }
  return even ? integrate_from_reference(spec, E, grid, Complex(0.0), Complex(-1.0))
              : integrate_from_reference(spec, E, grid, Complex(1.0), Complex(0.0));
}

std::string system_name(const BaseSystemSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, InfiniteWell>)
          return "well(width=" + std::to_string(s.width) + ")";
        else if constexpr (std::is_same_v<T, HarmonicOscillator>)
          return "oscillator";
        else if constexpr (std::is_same_v<T, SolitonWell>)
          return "soliton";
        else if constexpr (std::is_same_v<T, FreeLine>)
          return "free";
        else
          return "free-superposition(c=" + std::to_string(s.c.real()) + "+" +
                 std::to_string(s.c.imag()) + "i)";
      },
      spec);
}

}  // namespace darboux
