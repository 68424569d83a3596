#include "qms/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qms {

namespace {

template <class T>
void check_catenoid_inputs(const T& c, const T& r0, const T& r1, int n_min, int n_max) {
  if (c == 0) fail(Errc::DegenerateConstant, "catenoid_build: c must be nonzero");
  if (!(n_min <= 0 && n_max >= 1)) fail(Errc::InvalidArgument, "catenoid_build: need n_min <= 0 and n_max >= 1");
  if (!(r0 > 0)) fail(Errc::HypothesisViolated, "catenoid_build: r0 must be positive");
  if (!(r1 >= r0)) fail(Errc::HypothesisViolated, "catenoid_build: r1 must be at least r0");
  T cap = r0 + 2 * c * c / (r0 * r0);
  if (!(r1 <= cap)) fail(Errc::HypothesisViolated, "catenoid_build: r1 exceeds r0 + 2c^2/r0^2");
}

template <class T, class Guard>
CatenoidSolutionT<T> build(const T& c, const T& r0, const T& r1, const T& z0, int n_min, int n_max, Guard&& guard) {
  check_catenoid_inputs(c, r0, r1, n_min, n_max);
  CatenoidSolutionT<T> sol;
  sol.c = c;
  sol.z0 = z0;
  sol.n_min = n_min;
  sol.n_max = n_max;
  std::size_t len = static_cast<std::size_t>(n_max - n_min) + 1;
  sol.r.resize(len);
  sol.z.resize(len);
  auto R = [&](int n) -> T& { return sol.r[static_cast<std::size_t>(n - n_min)]; };
  auto Z = [&](int n) -> T& { return sol.z[static_cast<std::size_t>(n - n_min)]; };
  T c2 = c * c;

  R(0) = r0;
  R(1) = r1;
  Z(0) = z0;
  Z(1) = z0 + c / r1;
  for (int n = 2; n <= n_max; ++n) {
    const T& prev = R(n - 1);
    R(n) = 2 * prev - R(n - 2) + 2 * c2 / (prev * prev);
    Z(n) = Z(n - 1) + c / R(n);
    guard(R(n), n);
    guard(Z(n), n);
  }
  for (int n = -1; n >= n_min; --n) {
    const T& next = R(n + 1);
    R(n) = 2 * next - R(n + 2) + 2 * c2 / (next * next);
    Z(n) = Z(n + 1) - c / next;
    guard(R(n), n);
    guard(Z(n), n);
  }
  return sol;
}

}  // namespace

CatenoidSolution catenoid_build(double c, double r0, double r1, double z0, int n_min, int n_max) {
  return build<double>(c, r0, r1, z0, n_min, n_max, [](const double&, int) {});
}

CatenoidSolutionExact catenoid_build(const Rational& c, const Rational& r0, const Rational& r1, const Rational& z0,
                                     int n_min, int n_max, std::size_t bit_budget) {
  return build<Rational>(c, r0, r1, z0, n_min, n_max, [bit_budget](const Rational& v, int n) {
    if (bit_size(v) > bit_budget)
      fail(Errc::PrecisionExhausted, "exact catenoid value at n = " + std::to_string(n) + " exceeds " +
                                         std::to_string(bit_budget) + " bits");
  });
}

Classification catenoid_classify(const CatenoidSolution& sol) {
  if (sol.r.size() < 2) fail(Errc::InsufficientRange, "catenoid_classify: need at least two stored indices");
  const auto& r = sol.r;
  if (std::all_of(r.begin(), r.end(), [&](double v) { return v == r.front(); }))
    fail(Errc::ConstantSolution, "catenoid_classify: r_n is constant");

  auto it = std::min_element(r.begin(), r.end());  // first minimiser
  Classification out;
  out.n0 = sol.n_min + static_cast<int>(it - r.begin());
  out.c = sol.c;
  out.monotone_up_from = out.n0;
  out.monotone_down_to = out.n0;
  out.boundary_warning = out.n0 == sol.n_min || out.n0 == sol.n_max;

  double rmin = sol.r_at(out.n0);
  double scale = sol.c * sol.c / (rmin * rmin);
  if (out.n0 < sol.n_max)
    out.delta = 1.0 - (sol.r_at(out.n0 + 1) - rmin) / scale;
  else  // only the lower neighbour exists: r_{n0-1} = r_{n0} + (1+delta) c^2/r_{n0}^2
    out.delta = (sol.r_at(out.n0 - 1) - rmin) / scale - 1.0;

  auto tol = [](double v) { return 1e-12 * std::abs(v); };
  for (int n = out.n0 + 1; n <= sol.n_max; ++n)
    if (sol.r_at(n) < sol.r_at(n - 1) - tol(sol.r_at(n)))
      fail(Errc::InvariantViolated, "r_n decreases above the minimum at n = " + std::to_string(n));
  for (int n = out.n0 - 1; n >= sol.n_min; --n)
    if (sol.r_at(n) < sol.r_at(n + 1) - tol(sol.r_at(n)))
      fail(Errc::InvariantViolated, "r_n decreases below the minimum at n = " + std::to_string(n));
  if (sol.c != 0.0 && sol.z.size() == sol.r.size()) {
    for (int n = sol.n_min + 1; n <= sol.n_max; ++n)
      if (!(sol.c * (sol.z_at(n) - sol.z_at(n - 1)) > 0))
        fail(Errc::InvariantViolated, "z_n is not strictly monotone at n = " + std::to_string(n));
  }
  return out;
}

CatenoidPoint catenoid_closed(double a, double hbar, int n, int branch) {
  if (!(a > 0) || !(hbar > 0)) fail(Errc::InvalidArgument, "catenoid_closed: a and hbar must be positive");
  if (branch != 1 && branch != -1) fail(Errc::InvalidArgument, "catenoid_closed: branch must be +1 or -1");
  double p = -hbar * n;
  double a2 = a * a;
  double q = 0.0;
  if (p != 0.0) {
    // a^2 q <= (a^2/2)(q + sinh(2q)/2) for q >= 0, so |q| <= |p|/a^2.
    double bound = std::abs(p) / a2;
    auto g = [&](double t) { return 0.5 * a2 * (t + 0.5 * std::sinh(2.0 * t)) - std::abs(p); };
    q = find_root_bisect(g, 0.0, bound, 1e-17 * bound);
    if (p < 0) q = -q;
  }
  double ch = std::cosh(q);
  return {a2 * ch * ch, branch * a * q};
}

double catenoid_asymptotic(double a, double hbar, int n) {
  if (n == 0) fail(Errc::InvalidArgument, "catenoid_asymptotic: n must be nonzero");
  double m = std::abs(static_cast<double>(n));
  return 2.0 * hbar * m - 0.5 * a * a * std::log(m);
}

double catenoid_continuum_residual(double a, double hbar, int n) {
  auto prev = catenoid_closed(a, hbar, n - 1);
  auto here = catenoid_closed(a, hbar, n);
  auto next = catenoid_closed(a, hbar, n + 1);
  double dz = here.z - prev.z;
  return 2.0 * dz * dz - (next.r + prev.r - 2.0 * here.r);
}

SigmaSequence enneper_sigma(double hbar, int n_max) {
  if (!(hbar > 0)) fail(Errc::InvalidArgument, "enneper_sigma: hbar must be positive");
  if (n_max < 0) fail(Errc::InvalidArgument, "enneper_sigma: n_max must be nonnegative");
  SigmaSequence seq;
  seq.hbar = hbar;
  seq.sigma.reserve(static_cast<std::size_t>(n_max) + 1);
  seq.sigma.push_back(0.0);
  for (int n = 0; n < n_max; ++n) {
    double s0 = seq.sigma.back();
    // (s - s0)(2 + s0 + s)^2 >= (s - s0) * 4(1 + s0)^2, which reaches 8 hbar here.
    double width = 2.0 * hbar / ((1.0 + s0) * (1.0 + s0));
    auto f = [&](double s) {
      double t = 2.0 + s0 + s;
      return (s - s0) * t * t - 8.0 * hbar;
    };
    seq.sigma.push_back(find_root_bisect(f, s0, s0 + width, 1e-17 * width));
  }
  return seq;
}

double enneper_sigma_closed(double hbar, double c, int n) {
  if (!(hbar > 0)) fail(Errc::InvalidArgument, "enneper_sigma_closed: hbar must be positive");
  if (n < 0) fail(Errc::InvalidArgument, "enneper_sigma_closed: n must be nonnegative");
  double arg = 6.0 * hbar * n + 3.0 * hbar + 1.0 - 3.0 * c;
  if (arg < 1.0) fail(Errc::DomainError, "enneper_sigma_closed: cube-root argument below 1 gives a negative value");
  return (std::cbrt(arg) - 1.0) * (2.0 * n) / (2.0 * n + 1.0);
}

namespace {

double helicoid_v(double x) {
  if (x == 0.0) return 0.0;
  // v/2 + sinh(2v)/4 >= v for v >= 0, so the root lies in [0, |x|].
  double ax = std::abs(x);
  auto g = [&](double v) { return 0.5 * v + 0.25 * std::sinh(2.0 * v) - ax; };
  double v = find_root_bisect(g, 0.0, ax, 1e-17 * ax);
  return x < 0 ? -v : v;
}

}  // namespace

double helicoid_profile(double x) { return std::sinh(helicoid_v(x)); }

double helicoid_residual(double x, double hbar) {
  if (!(hbar > 0)) fail(Errc::InvalidArgument, "helicoid_residual: hbar must be positive");
  double v = helicoid_v(x);
  double w = std::sinh(v);
  double wm = helicoid_profile(x - hbar);
  double wp = helicoid_profile(x + hbar);
  double sech = 1.0 / std::cosh(v);
  double wpp = -w * sech * sech * sech * sech;
  return w * (2.0 * w * w - wm * wm - wp * wp) - 2.0 * hbar * hbar * wpp;
}

double hyperbola_r(const HyperbolaParams& params, int n) {
  if (!(params.eps > 0) || !(params.c_abs > 0))
    fail(Errc::InvalidArgument, "hyperbola_r: eps and |c| must be positive");
  if (params.sign != 1 && params.sign != -1) fail(Errc::InvalidArgument, "hyperbola_r: sign must be +1 or -1");
  double a = 0.5 * (-params.eps * n + params.delta);
  double c2 = params.c_abs * params.c_abs;
  double s = std::hypot(a, params.c_abs);
  double r;
  if (params.sign > 0)
    r = a >= 0 ? a + s : c2 / (s - a);  // avoid cancellation for a < 0
  else
    r = a <= 0 ? a - s : -c2 / (s + a);
  if (!(r > 0)) fail(Errc::NonPositive, "hyperbola_r: branch gives r_" + std::to_string(n) + " <= 0");
  return r;
}

double hyperbola_residual_values(const HyperbolaParams& params, double r_n, double r_n1) {
  double c2 = params.c_abs * params.c_abs;
  return r_n - r_n1 + c2 / r_n1 - c2 / r_n - params.eps;
}

double hyperbola_residual(const HyperbolaParams& params, int n) {
  return hyperbola_residual_values(params, hyperbola_r(params, n), hyperbola_r(params, n + 1));
}

}  // namespace qms
