#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

// Grid of one operand does not match the grid of the other.
struct grid_mismatch_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Seed function has a (near-)zero where its logarithmic derivative is needed.
struct node_error : std::domain_error {
  double x;
  node_error(double x_, const std::string& what) : std::domain_error(what), x(x_) {}
};

// |theta| dips below tolerance somewhere; construction would be singular.
struct singular_theta_error : std::domain_error {
  double min_abs_theta;
  double argmin_x;
  singular_theta_error(double m, double x, const std::string& what)
      : std::domain_error(what), min_abs_theta(m), argmin_x(x) {}
};

// Shooting iteration failed to converge within max_iter.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shooting converged onto an eigenvalue already in the deflation list.
struct duplicate_eigenvalue_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trajectory samples exceeded the overflow guard (1e300).
struct overflow_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace darboux
