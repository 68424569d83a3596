#pragma once

// The parabola recursion v_n (v_{n+1} + v_{n-1} + 1) = eps (n+1): orbits,
// the shooting solver for the positive initial value, interval endpoints,
// exact u- and tau-polynomials, and the monomial-pair generalisation.

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qms/exactmath.hpp"

namespace qms {

using BigFloat = boost::multiprecision::mpfr_float;

// Working precision (bits) requested through QMS_PRECISION; 53 when unset.
unsigned precision_from_env();

template <class Real>
struct ParabolaOrbitT {
  Real eps{};
  Real x{};
  std::vector<Real> v;
  std::optional<int> first_failure;

  // Number of leading positive entries.
  int lifetime() const { return first_failure ? *first_failure : static_cast<int>(v.size()); }
  // v_k with the vacuum convention v_k = 0 for k < 0.
  Real at(int k) const { return k < 0 ? Real(0) : v.at(static_cast<std::size_t>(k)); }
};

using ParabolaOrbit = ParabolaOrbitT<double>;

template <class Real>
ParabolaOrbitT<Real> v_iterate(const Real& eps, const Real& x, int n_max) {
  if (!(eps > 0)) fail(Errc::InvalidArgument, "v_iterate: eps must be positive");
  if (n_max < 1) fail(Errc::InvalidArgument, "v_iterate: n_max must be at least 1");
  if (x == 0) fail(Errc::ZeroInitial, "v_iterate: x = 0 makes v_1 undefined");
  ParabolaOrbitT<Real> orbit;
  orbit.eps = eps;
  orbit.x = x;
  orbit.v.reserve(static_cast<std::size_t>(n_max) + 1);
  orbit.v.push_back(x);
  if (!(x > 0)) {
    orbit.first_failure = 0;
    return orbit;
  }
  orbit.v.push_back(Real((eps - x) / x));
  if (!(orbit.v.back() > 0)) {
    orbit.first_failure = 1;
    return orbit;
  }
  for (int n = 1; n < n_max; ++n) {
    const Real& vn = orbit.v[static_cast<std::size_t>(n)];
    Real next = eps * (n + 1) / vn - orbit.v[static_cast<std::size_t>(n - 1)] - 1;
    orbit.v.push_back(std::move(next));
    if (!(orbit.v.back() > 0)) {
      orbit.first_failure = n + 1;
      break;
    }
  }
  return orbit;
}

// v_n(v_{n+1} + v_{n-1} + 1) - eps(n+1), for 0 <= n < v.size() - 1.
template <class Real>
Real recursion_residual(const ParabolaOrbitT<Real>& orbit, int n) {
  return orbit.at(n) * (orbit.at(n + 1) + orbit.at(n - 1) + 1) - orbit.eps * (n + 1);
}

// Five-term form v_n - v_{n-1} + v_n v_{n+1} - v_{n-1} v_{n-2} - eps; this is
// the diagonal of the HYM constraint for Z1 = W, Z2 = W^2.
template <class Real>
Real hym_diagonal_residual(const ParabolaOrbitT<Real>& orbit, int n) {
  return orbit.at(n) - orbit.at(n - 1) + orbit.at(n) * orbit.at(n + 1) - orbit.at(n - 1) * orbit.at(n - 2) -
         orbit.eps;
}

template <class Real>
struct ShootingResultT {
  Real eps{};
  Real vhat{};
  Real lo{};
  Real hi{};
  int survived_steps = 0;
  Real tolerance{};  // bracket width actually used
  int iterations = 0;
};

using ShootingResult = ShootingResultT<double>;

namespace detail {

template <class Real>
Real machine_epsilon() {
  if constexpr (std::is_same_v<Real, BigFloat>) {
    BigFloat one = 1;
    long bits = static_cast<long>(mpfr_get_prec(one.backend().data()));
    return ldexp(one, static_cast<int>(1 - bits));
  } else {
    return std::numeric_limits<Real>::epsilon();
  }
}

// Parity class of a failing orbit: +1 means x lies above the special value,
// -1 below, 0 when the orbit survived all steps.
template <class Real>
int failure_side(const Real& eps, const Real& x, int n_max) {
  if (!(x > 0)) return -1;
  auto orbit = v_iterate(eps, x, n_max);
  if (!orbit.first_failure) return 0;
  return (*orbit.first_failure % 2 == 1) ? +1 : -1;
}

}  // namespace detail

// Shooting by failure parity on (0, eps). The bracket is halved until its
// width is below max(tol, 4 ulp) or the midpoint orbit outlives n_max.
template <class Real>
ShootingResultT<Real> vhat_bisect(const Real& eps, const Real& tol, int n_max) {
  if (!(eps > 0)) fail(Errc::InvalidArgument, "vhat_bisect: eps must be positive");
  if (!(tol > 0)) fail(Errc::InvalidArgument, "vhat_bisect: tol must be positive");
  if (n_max < 2) fail(Errc::InvalidArgument, "vhat_bisect: n_max must be at least 2");
  ShootingResultT<Real> res;
  res.eps = eps;
  Real lo = 0;
  Real hi = eps;
  if (detail::failure_side(eps, hi, n_max) != +1)
    fail(Errc::BracketLost, "vhat_bisect: upper endpoint eps does not fail at an odd step");
  Real eff_tol = std::max<Real>(tol, 4 * detail::machine_epsilon<Real>() * eps);
  std::optional<Real> survivor;
  while (hi - lo > eff_tol) {
    Real mid = (lo + hi) / 2;
    if (!(lo < mid && mid < hi)) break;
    ++res.iterations;
    int side = detail::failure_side(eps, mid, n_max);
    if (side == 0) {
      survivor = mid;
      break;
    }
    if (side > 0)
      hi = mid;
    else
      lo = mid;
  }
  if (lo > 0 && detail::failure_side(eps, lo, n_max) > 0)
    fail(Errc::BracketLost, "vhat_bisect: both bracket ends fail at odd steps");
  if (detail::failure_side(eps, hi, n_max) < 0)
    fail(Errc::BracketLost, "vhat_bisect: both bracket ends fail at even steps");
  res.lo = lo;
  res.hi = hi;
  res.vhat = survivor ? *survivor : Real((lo + hi) / 2);
  res.tolerance = hi - lo;
  res.survived_steps = v_iterate(eps, res.vhat, n_max).lifetime();
  return res;
}

double vhat_series(double eps);
double closed_form_v(int n, double hbar, double c);

// v_n(x) by straight iteration without the positivity stop.
template <class Real>
Real v_value(const Real& eps, const Real& x, int n) {
  Real prev = 0;
  Real cur = x;
  for (int k = 0; k < n; ++k) {
    Real next = k == 0 ? Real((eps - x) / x) : Real(eps * (k + 1) / cur - prev - 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// c_0 = 0, c_1 = eps, and c_n for n >= 2 the zero of v_n between c_{n-2} and
// c_{n-1}. Odd n: v_n > 0 below c_n; even n: v_n > 0 above c_n.
template <class Real>
std::vector<Real> interval_endpoints(const Real& eps, int n_max) {
  if (!(eps > 0)) fail(Errc::InvalidArgument, "interval_endpoints: eps must be positive");
  if (n_max < 1) fail(Errc::InvalidArgument, "interval_endpoints: n_max must be at least 1");
  std::vector<Real> c{Real(0), eps};
  const Real ulp = detail::machine_epsilon<Real>();
  for (int n = 2; n <= n_max; ++n) {
    Real lo = std::min(c[n - 2], c[n - 1]);
    Real hi = std::max(c[n - 2], c[n - 1]);
    if (hi - lo <= 8 * ulp * hi)
      fail(Errc::PrecisionExhausted,
           "interval_endpoints: bracket for c_" + std::to_string(n) + " is at working resolution");
    bool odd = n % 2 == 1;
    auto above = [&](const Real& x) {
      Real vn = v_value(eps, x, n);
      return odd ? !(vn > 0) : (vn > 0);
    };
    auto [a, b] = bisect_predicate(above, lo, hi, Real(0));
    c.push_back(Real((a + b) / 2));
  }
  return c;
}

// Exact v_n as reduced rational functions of x, n = 0..n_max.
std::vector<RatFn> v_exact(const Rational& eps, int n_max);

// Exact orbit at a rational initial value, same stopping rule as v_iterate.
ParabolaOrbitT<Rational> v_iterate_exact(const Rational& eps, const Rational& x, int n_max);

std::vector<Poly> u_exact(const Rational& eps, int n_max);

struct TauTable {
  Rational eps;
  std::vector<Poly> u;         // u_0..u_{n_max}
  std::vector<Poly> tau_data;  // tau_{-1}..tau_{n_max+1}

  // u_k with u_k = 1 for k < 0.
  Poly u_at(int k) const { return k < 0 ? Poly(1L) : u.at(static_cast<std::size_t>(k)); }
  const Poly& tau(int n) const { return tau_data.at(static_cast<std::size_t>(n + 1)); }
  Poly& tau(int n) { return tau_data.at(static_cast<std::size_t>(n + 1)); }
  int tau_max() const { return static_cast<int>(tau_data.size()) - 2; }
};

TauTable tau_table(const Rational& eps, int n_max);

struct ConservedResidual {
  Poly res_a;  // five-term conserved form in tau
  Poly res_b;  // three-term recursion form in tau
};

// Both identities at index n (needs 2 <= n and n + 2 <= tau_max()).
ConservedResidual conserved_residual(const TauTable& table, int n);
// The three-term identity alone, valid from n = 1.
Poly tau_recursion_residual(const TauTable& table, int n);

// Diagonal HYM constraint for Z1 = W^p, Z2 = W^q with vacuum v_k = 0 (k < 0),
// solved for v_{n+q-1} at each n. seeds are v_0..v_{q-2}.
template <class Real>
ParabolaOrbitT<Real> monomial_pair_iterate(int p, int q, const Real& eps, const std::vector<Real>& seeds, int n_max) {
  if (p < 1 || q <= p) fail(Errc::InvalidArgument, "monomial_pair_iterate: need 1 <= p < q");
  if (!(eps > 0)) fail(Errc::InvalidArgument, "monomial_pair_iterate: eps must be positive");
  if (static_cast<int>(seeds.size()) != q - 1)
    fail(Errc::InvalidArgument, "monomial_pair_iterate: expected q - 1 seeds");
  for (const auto& s : seeds)
    if (!(s > 0)) fail(Errc::InvalidArgument, "monomial_pair_iterate: seeds must be positive");
  ParabolaOrbitT<Real> orbit;
  orbit.eps = eps;
  orbit.x = seeds.front();
  orbit.v = seeds;
  auto prod = [&](int from, int to) {  // product of v_k over [from, to]
    Real acc = 1;
    for (int k = from; k <= to; ++k) acc *= orbit.at(k);
    return acc;
  };
  for (int n = 0; n + q - 1 <= n_max; ++n) {
    Real pivot = prod(n, n + q - 2);
    if (pivot == 0) fail(Errc::ZeroProductPivot, "monomial_pair_iterate: zero pivot at n = " + std::to_string(n));
    Real known = prod(n, n + p - 1) - prod(n - p, n - 1) - prod(n - q, n - 1);
    orbit.v.push_back(Real((eps - known) / pivot));
    if (!(orbit.v.back() > 0)) {
      orbit.first_failure = n + q - 1;
      break;
    }
  }
  return orbit;
}

struct SeedSearchOptions {
  int grid = 24;       // points per dimension in each cell
  int keep = 12;       // beam width carried to the next level
  int levels = 6;
  double spread = 1.5;  // refined cell half-width in units of the parent spacing
  int n_max = 60;
};

struct SeedSearchResult {
  std::vector<double> seeds;
  int lifetime = 0;
  std::vector<int> best_per_level;
  long evaluations = 0;
};

// Beam grid search over seed boxes [lo_i, hi_i] maximising the orbit lifetime.
// The OpenMP version and the serial reference return identical results.
SeedSearchResult monomial_seed_search(int p, int q, double eps, const std::vector<double>& lo,
                                      const std::vector<double>& hi, const SeedSearchOptions& opts = {});
SeedSearchResult monomial_seed_search_reference(int p, int q, double eps, const std::vector<double>& lo,
                                                const std::vector<double>& hi, const SeedSearchOptions& opts = {});

}  // namespace qms
