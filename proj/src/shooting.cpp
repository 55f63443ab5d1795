#include "darboux/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "darboux/calculus.hpp"
#include "darboux/rk4.hpp"

namespace darboux {

namespace {

// Mean of V over the outer 2% window on one side; the tail wavenumber
// kappa = sqrt(V_asym - E) with Re kappa > 0 defines the decaying start.
Complex asymptotic_value(const ComplexField& V, bool left) {
  const int n = V.size();
  const int w = std::max(2, n / 50);
  return left ? V.values.head(w).mean() : V.values.tail(w).mean();
}

std::pair<Complex, Complex> start_conditions(const ComplexField& V, Complex E,
                                             const BoundarySide& side, bool left) {
  switch (side.kind) {
    case BoundarySide::Kind::Dirichlet:
      return {Complex(0.0), Complex(1.0)};
    case BoundarySide::Kind::Given:
      return {side.psi, side.dpsi};
    case BoundarySide::Kind::DecayingTail: {
      const Complex kappa = sqrt_principal(asymptotic_value(V, left) - E);
      if (!(kappa.real() > 0.0))
        throw std::invalid_argument(
            "DecayingTail requires Re sqrt(V_asym - E) > 0 at the requested energy");
      // Decay away from the domain: psi grows into it.
      return {Complex(1.0), left ? kappa : -kappa};
    }
  }
  throw std::logic_error("unreachable");
}

int match_index(const ComplexField& V, const ShootingConfig& cfg) {
  const int n = V.size();
  if (cfg.match_x) return V.grid.index_of(*cfg.match_x);
  int idx = 0;
  V.values.real().minCoeff(&idx);
  if (idx < n / 10 || idx > n - 1 - n / 10) idx = n / 2;  // flat V: use midpoint
  return idx;
}

struct Shot {
  Trajectory left, right;
  // Match-node values with each branch normalized to |psi| + |psi'| = 1,
  // so products stay finite for branches anywhere below the 1e300 guard.
  Complex a, da, b, db;
  Complex mismatch;  // Wronskian of the normalized branches at the match node
  double scale;
};

Shot shoot(const ComplexField& V, Complex E, const BoundarySpec& bc, int im) {
  const GridSpec& g = V.grid;
  SampledPotential pot(V);
  Shot s{{g, Eigen::ArrayXcd::Zero(g.n_points), Eigen::ArrayXcd::Zero(g.n_points)},
         {g, Eigen::ArrayXcd::Zero(g.n_points), Eigen::ArrayXcd::Zero(g.n_points)},
         Complex(0.0), Complex(0.0), Complex(0.0), Complex(0.0),
         Complex(0.0),
         0.0};
  auto [pl, dl] = start_conditions(V, E, bc.left, true);
  auto [pr, dr] = start_conditions(V, E, bc.right, false);
  rk4_span(g, pot, E, 0, im, pl, dl, s.left);
  rk4_span(g, pot, E, g.n_points - 1, im, pr, dr, s.right);
  const double sl = std::abs(s.left.psi[im]) + std::abs(s.left.dpsi[im]) + 1e-300;
  const double sr = std::abs(s.right.psi[im]) + std::abs(s.right.dpsi[im]) + 1e-300;
  s.a = s.left.psi[im] / sl;
  s.da = s.left.dpsi[im] / sl;
  s.b = s.right.psi[im] / sr;
  s.db = s.right.dpsi[im] / sr;
  s.mismatch = s.a * s.db - s.da * s.b;
  // Branch-size normalization; |a db| + |da b| would vanish with mu at a
  // match point sitting on an extremum of the eigenfunction.
  s.scale = (std::abs(s.a) + std::abs(s.da)) * (std::abs(s.b) + std::abs(s.db)) + 1e-300;
  return s;
}

Complex deflated(Complex mu, Complex E, const std::vector<Complex>& roots) {
  for (Complex r : roots) mu /= (E - r);
  return mu;
}

// Root of the quadratic through the last three iterates, nearest to z2.
Complex muller_step(Complex z0, Complex f0, Complex z1, Complex f1, Complex z2,
                    Complex f2) {
  const Complex h0 = z0 - z2, h1 = z1 - z2;
  const Complex d0 = (f0 - f2) / h0, d1 = (f1 - f2) / h1;
  const Complex a = (d0 - d1) / (h0 - h1);
  const Complex b = d1 - h1 * a;  // slope of the quadratic at z2
  const Complex disc = std::sqrt(b * b - 4.0 * a * f2);
  const Complex den1 = b + disc, den2 = b - disc;
  const Complex den = (std::abs(den1) >= std::abs(den2)) ? den1 : den2;
  if (std::abs(den) == 0.0) return z2 - f2 / (d1 + 1e-300);
  return z2 - 2.0 * f2 / den;
}

void glue_and_normalize(EigenResult& out, const Shot& s, int im) {
  const GridSpec& g = s.left.grid;
  Eigen::ArrayXcd psi(g.n_points);
  // Scale the right branch onto the left; prefer value matching, fall back
  // to the derivative when the match node sits on a node of psi.
  Complex ratio;
  if (std::abs(s.right.psi[im]) > 1e-8 * std::abs(s.left.psi[im]) + 1e-300 &&
      std::abs(s.right.psi[im]) >= std::abs(s.right.dpsi[im]) * 1e-8)
    ratio = s.left.psi[im] / s.right.psi[im];
  else
    ratio = s.left.dpsi[im] / s.right.dpsi[im];
  psi.head(im + 1) = s.left.psi.head(im + 1);
  psi.tail(g.n_points - im) = ratio * s.right.psi.tail(g.n_points - im);

  ComplexField f(g, std::move(psi));
  const Complex self = bilinear_form(f, f);
  if (std::abs(self) > 1e-300) f.values /= std::sqrt(self);
  out.field = std::move(f);
}

}  // namespace

ComplexField integrate_schrodinger(const ComplexField& V, Complex E,
                                   std::pair<Complex, Complex> ic, Direction dir) {
  const GridSpec& g = V.grid;
  SampledPotential pot(V);
  Trajectory t{g, Eigen::ArrayXcd::Zero(g.n_points), Eigen::ArrayXcd::Zero(g.n_points)};
  if (dir == Direction::LeftToRight)
    rk4_span(g, pot, E, 0, g.n_points - 1, ic.first, ic.second, t);
  else
    rk4_span(g, pot, E, g.n_points - 1, 0, ic.first, ic.second, t);
  return t.psi_field();
}

ComplexField integrate_schrodinger_coupled(const ComplexField& V, Complex E,
                                           std::pair<Complex, Complex> ic, Direction dir) {
  const GridSpec& g = V.grid;
  const int n = g.n_points;
  SampledPotential pot(V);
  const double h = g.step();
  const int from = (dir == Direction::LeftToRight) ? 0 : n - 1;
  const int to = (dir == Direction::LeftToRight) ? n - 1 : 0;
  const int step = (dir == Direction::LeftToRight) ? 1 : -1;
  const double dt = step * h;

  // State (Re psi, Im psi, Re psi', Im psi'); the second pair of equations is
  // the coupled real/imaginary split of (V - E) psi.
  double yr = ic.first.real(), yi = ic.first.imag();
  double pr = ic.second.real(), pi_ = ic.second.imag();
  Eigen::ArrayXcd out(n);
  out[from] = Complex(yr, yi);
  auto rhs = [&](Complex v, double ar, double ai, double br, double bi, double* k) {
    const double cr = v.real() - E.real();
    const double ci = v.imag() - E.imag();
    k[0] = br;
    k[1] = bi;
    k[2] = cr * ar - ci * ai;
    k[3] = cr * ai + ci * ar;
  };
  for (int i = from; i != to; i += step) {
    const Complex vn = pot.at_node(i);
    const Complex vm = pot.at_mid(step > 0 ? i : i - 1);
    const Complex vn1 = pot.at_node(i + step);
    double k1[4], k2[4], k3[4], k4[4];
    rhs(vn, yr, yi, pr, pi_, k1);
    rhs(vm, yr + 0.5 * dt * k1[0], yi + 0.5 * dt * k1[1], pr + 0.5 * dt * k1[2],
        pi_ + 0.5 * dt * k1[3], k2);
    rhs(vm, yr + 0.5 * dt * k2[0], yi + 0.5 * dt * k2[1], pr + 0.5 * dt * k2[2],
        pi_ + 0.5 * dt * k2[3], k3);
    rhs(vn1, yr + dt * k3[0], yi + dt * k3[1], pr + dt * k3[2], pi_ + dt * k3[3], k4);
    yr += dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    yi += dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    pr += dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
    pi_ += dt / 6.0 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3]);
    out[i + step] = Complex(yr, yi);
    if (std::abs(yr) > kOverflowGuard || std::abs(yi) > kOverflowGuard)
      throw overflow_error("coupled trajectory exceeded 1e300");
  }
  return ComplexField(g, std::move(out));
}

namespace {

// One shooting solve at a fixed match index. The iteration function is the
// mismatch of the branch-normalized trajectories: normalizing each branch by
// |psi| + |psi'| at the match cancels the exponential envelope of decaying-
// tail branches (otherwise the secant follows the envelope gradient instead
// of the root) and never introduces spurious zeros or poles.
EigenResult solve_at_match(const ComplexField& V, Complex guess, const BoundarySpec& bc,
                           const ShootingConfig& config, int im) {
  auto f = [&](Complex E) -> std::pair<Complex, double> {
    if (!std::isfinite(E.real()) || !std::isfinite(E.imag()))
      throw convergence_error("find_eigenvalue: iteration left the finite plane");
    Shot s = shoot(V, E, bc, im);
    const double m = std::abs(s.mismatch) / s.scale;
    if (!std::isfinite(m))
      throw convergence_error("find_eigenvalue: mismatch left the finite range");
    return {deflated(s.mismatch, E, config.deflate), m};
  };

  Complex e0 = guess;
  Complex e1 = guess * (1.0 + 1e-4) + Complex(0.0, 1e-4);
  auto [f0, m0] = f(e0);
  auto [f1, m1] = f(e1);
  Complex e_prev2 = e0, f_prev2 = f0;

  double best = std::min(m0, m1);
  int stagnant = 0;
  int iter = 0;
  double raw = m1;
  const double wander = 100.0 * (1.0 + std::abs(guess));
  for (; iter < config.max_iter; ++iter) {
    if (raw < config.eig_tol) break;
    if (std::abs(e1 - guess) > wander)
      throw convergence_error("find_eigenvalue: iteration wandered away from the guess");
    Complex e_next;
    if (stagnant >= 20) {
      e_next = muller_step(e_prev2, f_prev2, e0, f0, e1, f1);
      stagnant = 0;
    } else {
      Complex den = f1 - f0;
      if (std::abs(den) == 0.0) den = Complex(1e-30);
      e_next = e1 - f1 * (e1 - e0) / den;
    }
    e_prev2 = e0;
    f_prev2 = f0;
    e0 = e1;
    f0 = f1;
    e1 = e_next;
    // A wild trial can overflow the trajectory; back the step off toward
    // the previous iterate instead of giving up.
    bool evaluated = false;
    for (int backoff = 0; backoff < 8 && !evaluated; ++backoff) {
      try {
        std::tie(f1, raw) = f(e1);
        evaluated = true;
      } catch (const overflow_error&) {
        e1 = 0.5 * (e1 + e0);
      }
    }
    if (!evaluated) std::tie(f1, raw) = f(e1);
    if (raw < 0.99 * best) {
      best = raw;
      stagnant = 0;
    } else {
      ++stagnant;
    }
  }
  if (raw >= config.eig_tol)
    throw convergence_error("find_eigenvalue: no convergence after " +
                            std::to_string(config.max_iter) + " iterations (|mu| = " +
                            std::to_string(raw) + ")");
  const Complex e = e1;
  for (Complex r : config.deflate)
    if (std::abs(e - r) < 1e-6)
      throw duplicate_eigenvalue_error("find_eigenvalue: converged onto deflated eigenvalue");

  EigenResult out;
  out.energy = e;
  out.iterations = iter;
  Shot s = shoot(V, e, bc, im);
  glue_and_normalize(out, s, im);
  out.residual = residual_norm(V, e, out.field);
  out.tail_decay_rate = l2_integrability(out.field).tail_decay_rate;
  return out;
}

}  // namespace

EigenResult find_eigenvalue(const ComplexField& V, Complex guess, const BoundarySpec& bc,
                            const ShootingConfig& config) {
  const int im = match_index(V, config);
  if (im <= 0 || im >= V.size() - 1)
    throw std::invalid_argument("find_eigenvalue: match point must be interior");
  try {
    return solve_at_match(V, guess, bc, config, im);
  } catch (const convergence_error&) {
    if (config.match_x) throw;  // caller pinned the match point
    // retry once at an off-center match; symmetric nodes sit at rational
    // fractions, 43% avoids them
    const int alt = std::max(1, std::min(V.size() - 2, (43 * V.size()) / 100));
    if (alt == im) throw;
    return solve_at_match(V, guess, bc, config, alt);
  }
}

std::vector<EigenResult> scan_spectrum(const ComplexField& V,
                                       const std::vector<Complex>& guesses,
                                       const BoundarySpec& bc,
                                       const ShootingConfig& config) {
  if (guesses.empty()) throw std::invalid_argument("scan_spectrum: empty guess list");
  ShootingConfig cfg = config;
  std::vector<EigenResult> found;
  for (Complex g : guesses) {
    try {
      EigenResult r = find_eigenvalue(V, g, bc, cfg);
      const bool dup = std::any_of(found.begin(), found.end(), [&](const EigenResult& o) {
        return std::abs(o.energy - r.energy) < 1e-6;
      });
      if (!dup) {
        cfg.deflate.push_back(r.energy);
        found.push_back(std::move(r));
      }
    } catch (const std::exception&) {
      // per-guess failure: omitted from the scan
    }
  }
  std::sort(found.begin(), found.end(), [](const EigenResult& a, const EigenResult& b) {
    if (a.energy.real() != b.energy.real()) return a.energy.real() < b.energy.real();
    return a.energy.imag() < b.energy.imag();
  });
  return found;
}

double residual_norm(const ComplexField& V, Complex E, const ComplexField& psi) {
  require_same_grid(V, psi, "residual_norm");
  ComplexField dd = second_derivative(psi);
  // Skip the outermost interior node on each side: fields assembled from
  // differentiated inputs carry the one-sided boundary stencil there.
  const int lo = std::min(2, psi.size() / 2);
  double m = 0.0;
  for (int i = lo; i < psi.size() - lo; ++i)
    m = std::max(m, std::abs(-dd.values[i] + (V.values[i] - E) * psi.values[i]));
  return m;
}

IntegrabilityReport l2_integrability(const ComplexField& psi, double rate_tol) {
  const int n = psi.size();
  const int tail = std::max(n / 5, 8);
  const int start = n - tail;
  const Eigen::ArrayXd mag = psi.values.abs();
  const double tail_max = mag.tail(tail).maxCoeff();
  if (tail_max < 1e-14 * mag.maxCoeff() || tail_max == 0.0)
    return {true, -std::numeric_limits<double>::infinity()};

  // Envelope first: carrier peaks of |psi| dodge the zeros of oscillatory
  // tails. Monotone tails have no peaks; fit the raw samples instead, with
  // deep dips clipped out.
  std::vector<double> xs, ys;
  for (int i = std::max(start, 1); i + 1 < n; ++i)
    if (mag[i] > mag[i - 1] && mag[i] >= mag[i + 1]) {
      xs.push_back(psi.grid.x(i));
      ys.push_back(2.0 * std::log(mag[i]));
    }
  if (xs.size() < 3) {
    xs.clear();
    ys.clear();
    for (int i = start; i < n; ++i)
      if (mag[i] > 1e-3 * tail_max) {
        xs.push_back(psi.grid.x(i));
        ys.push_back(2.0 * std::log(mag[i]));
      }
  }
  if (xs.size() < 2)
    return {true, -std::numeric_limits<double>::infinity()};

  const int m = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = m * sxx - sx * sx;
  const double rate = (denom != 0.0) ? (m * sxy - sx * sy) / denom : 0.0;
  return {rate < -rate_tol, rate};
}

BiorthoReport biortho_matrix(const std::vector<EigenResult>& states) {
  if (states.size() < 1) throw std::invalid_argument("biortho_matrix: need states");
  std::vector<int> kept;
  std::vector<ComplexField> normed;
  for (int i = 0; i < static_cast<int>(states.size()); ++i) {
    const ComplexField& f = states[i].field;
    const Complex self = bilinear_form(f, f);
    if (std::abs(self) < 1e-10) continue;  // self-orthogonal: excluded
    ComplexField g = f;
    g.values /= std::sqrt(self);
    kept.push_back(i);
    normed.push_back(std::move(g));
  }
  const int m = static_cast<int>(normed.size());
  Eigen::MatrixXcd gram(m, m);
  double off = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      gram(i, j) = bilinear_form(normed[i], normed[j]);
      if (i != j) off = std::max(off, std::abs(gram(i, j)));
    }
  return BiorthoReport{std::move(gram), off, std::move(kept)};
}

}  // namespace darboux
