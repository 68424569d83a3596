#pragma once

// Exact rational arithmetic, univariate polynomials over Q, reduced rational
// functions, and the bracketing root kernels shared by the surface solvers.

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qms/error.hpp"

namespace qms {

// GMP keeps mpq_class canonical: gcd(|num|, den) = 1 and den > 0.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q". Decimal or exponent notation is rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
std::size_t bit_size(const Rational& q);

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coefficients);
  Poly(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rational(constant)) {}  // NOLINT(google-explicit-constructor)

  static Poly x();
  static Poly monomial(const Rational& coefficient, int degree);

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(int k) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  Poly monic() const;
  Poly operator-() const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  std::string str(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;  // coeffs_[k] multiplies x^k
};

Poly pow(Poly base, int exponent);

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);

// Quotient of a by b; NotDivisible when the Euclidean remainder is nonzero.
Poly poly_exact_div(const Poly& a, const Poly& b);

// Monic greatest common divisor (zero when both inputs are zero).
Poly gcd(Poly a, Poly b);

class RatFn {
 public:
  RatFn() : num_(), den_(1L) {}
  RatFn(const Poly& p) : num_(p), den_(1L) {}  // NOLINT(google-explicit-constructor)

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_zero() const { return num_.is_zero(); }

  Rational operator()(const Rational& x) const;
  double operator()(double x) const;

  friend RatFn operator+(const RatFn& a, const RatFn& b);
  friend RatFn operator-(const RatFn& a, const RatFn& b);
  friend RatFn operator*(const RatFn& a, const RatFn& b);
  friend RatFn operator/(const RatFn& a, const RatFn& b);
  friend bool operator==(const RatFn& a, const RatFn& b) = default;

  std::string str() const;

 private:
  friend RatFn ratfn_reduce(Poly num, Poly den);
  Poly num_;
  Poly den_;
};

// GCD-reduced num/den with monic denominator; ZeroDenominator for den = 0.
RatFn ratfn_reduce(Poly num, Poly den);

// Bisection on a sign change. Halves [lo, hi] with the midpoint rule until
// the bracket is no wider than tol or no representable midpoint remains.
template <class Real, class F>
Real find_root_bisect(F&& f, Real lo, Real hi, Real tol) {
  if (!(tol > 0)) fail(Errc::InvalidArgument, "find_root_bisect: tol must be positive");
  if (hi < lo) std::swap(lo, hi);
  Real flo = f(lo);
  Real fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) fail(Errc::NoSignChange, "find_root_bisect: f(lo) and f(hi) share a sign");
  while (hi - lo > tol) {
    Real mid = (lo + hi) / 2;
    if (!(lo < mid && mid < hi)) break;
    Real fmid = f(mid);
    if (fmid == 0) return mid;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

// Bisection on a predicate that is false on [lo, b) and true on (b, hi];
// returns the final bracket around the switch point b.
template <class Real, class Pred>
std::pair<Real, Real> bisect_predicate(Pred&& is_above, Real lo, Real hi, Real tol) {
  while (hi - lo > tol) {
    Real mid = (lo + hi) / 2;
    if (!(lo < mid && mid < hi)) break;
    if (is_above(mid))
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

// Solves g(q) = target for a strictly increasing g by bracketing the
// root with doubling steps before bisecting.
template <class F>
double invert_increasing(F&& g, double target, double tol = 1e-15) {
  double lo = -1.0;
  double hi = 1.0;
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  while (g(lo) > target) {
    hi = lo;
    lo *= 2.0;
  }
  return find_root_bisect([&](double q) { return g(q) - target; }, lo, hi, tol);
}

}  // namespace qms
