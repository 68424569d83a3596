#pragma once

// Catenoid, Enneper, helicoid and complex-hyperbola solutions: recursions,
// closed forms and the residuals used to study them.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qms/exactmath.hpp"

namespace qms {

// Two-sided sequences (r_n, z_n) stored over [n_min, n_max].
template <class T>
struct CatenoidSolutionT {
  T c{};
  T z0{};
  int n_min = 0;
  int n_max = 0;
  std::vector<T> r;
  std::vector<T> z;

  bool contains(int n) const { return n >= n_min && n <= n_max; }
  const T& r_at(int n) const { return r.at(static_cast<std::size_t>(n - n_min)); }
  const T& z_at(int n) const { return z.at(static_cast<std::size_t>(n - n_min)); }

  // Relabels n -> n + k.
  CatenoidSolutionT shifted(int k) const {
    CatenoidSolutionT out = *this;
    out.n_min += k;
    out.n_max += k;
    return out;
  }
};

using CatenoidSolution = CatenoidSolutionT<double>;
using CatenoidSolutionExact = CatenoidSolutionT<Rational>;

// Largest operand (in bits) the exact catenoid build will produce before
// giving up with PrecisionExhausted. Denominators roughly triple in length
// per step, so this caps the reachable window at about |n| <= 15.
inline constexpr std::size_t kCatenoidExactBitBudget = std::size_t{1} << 22;

CatenoidSolution catenoid_build(double c, double r0, double r1, double z0, int n_min, int n_max);
CatenoidSolutionExact catenoid_build(const Rational& c, const Rational& r0, const Rational& r1, const Rational& z0,
                                     int n_min, int n_max, std::size_t bit_budget = kCatenoidExactBitBudget);

// (second-difference equation, first-order z equation) at index n. Needs n-1
// and n+1 stored; both vanish on solutions.
template <class T>
std::pair<T, T> catenoid_residual(const CatenoidSolutionT<T>& sol, int n) {
  if (!sol.contains(n - 1) || !sol.contains(n + 1))
    fail(Errc::InsufficientRange, "catenoid_residual: index " + std::to_string(n) + " lacks neighbours");
  T dz = sol.z_at(n) - sol.z_at(n - 1);
  T second = sol.r_at(n + 1) - 2 * sol.r_at(n) + sol.r_at(n - 1) - 2 * dz * dz;
  T first = sol.r_at(n) * dz - sol.c;
  return {second, first};
}

struct Classification {
  int n0 = 0;
  double delta = 0.0;
  double c = 0.0;
  int monotone_up_from = 0;
  int monotone_down_to = 0;
  bool boundary_warning = false;  // n0 at the edge of the stored range
};

// Finite-range classification of a positive non-constant solution.
// Throws ConstantSolution for constant r, InvariantViolated when the stored
// sequence breaks the monotone shape about its minimum.
Classification catenoid_classify(const CatenoidSolution& sol);

struct CatenoidPoint {
  double r = 0.0;
  double z = 0.0;
};

// branch = +1 or -1 selects the sign of z.
CatenoidPoint catenoid_closed(double a, double hbar, int n, int branch = +1);
double catenoid_asymptotic(double a, double hbar, int n);

// 2(z_n - z_{n-1})^2 - (r_{n+1} + r_{n-1} - 2 r_n) on the sampled closed form.
double catenoid_continuum_residual(double a, double hbar, int n);

struct SigmaSequence {
  double hbar = 0.0;
  std::vector<double> sigma;
};

SigmaSequence enneper_sigma(double hbar, int n_max);
double enneper_sigma_closed(double hbar, double c, int n);

// Real helicoid profile w(x) = sinh v with x = v/2 + sinh(2v)/4.
double helicoid_profile(double x);
double helicoid_residual(double x, double hbar);

struct HyperbolaParams {
  double eps = 1.0;
  double delta = 0.0;
  double c_abs = 1.0;
  int sign = +1;
};

double hyperbola_r(const HyperbolaParams& params, int n);
double hyperbola_residual(const HyperbolaParams& params, int n);
// Same expression on explicit values, for sensitivity checks.
double hyperbola_residual_values(const HyperbolaParams& params, double r_n, double r_n1);

}  // namespace qms
