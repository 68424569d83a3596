#include "qms/exactmath.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qms {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                       [](unsigned char ch) { return std::isdigit(ch) != 0; });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den[0] == '-' || den[0] == '+')
    fail(Errc::InvalidArgument, "not an exact rational: '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) fail(Errc::ZeroDenominator, "rational with zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

// ---------------------------------------------------------------- Poly

Poly::Poly(std::vector<Rational> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

Poly::Poly(const Rational& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

Poly Poly::x() { return monomial(Rational(1), 1); }

Poly Poly::monomial(const Rational& coefficient, int degree) {
  if (degree < 0) fail(Errc::InvalidArgument, "negative monomial degree");
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coefficient;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coefficient(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

Rational Poly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational Poly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly out = *this;
  Rational lead = leading();
  for (auto& c : out.coeffs_) c /= lead;
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

std::string Poly::str(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    Rational c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = mag == 1;
    if (!unit || k == 0) os << mag.get_str();
    if (k >= 1) {
      if (!unit) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

Poly pow(Poly base, int exponent) {
  if (exponent < 0) fail(Errc::InvalidArgument, "negative polynomial power");
  Poly result(Rational(1));
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(Errc::ZeroDenominator, "polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const auto& bc = b.coefficients();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Poly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(da - db) + 1);
  Rational lead = b.leading();
  for (int k = da; k >= db; --k) {
    Rational t = rem[static_cast<std::size_t>(k)] / lead;
    if (t == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = t;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= t * bc[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) fail(Errc::NotDivisible, "(" + a.str() + ") is not divisible by (" + b.str() + ")");
  return q;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).remainder;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

// ---------------------------------------------------------------- RatFn

RatFn ratfn_reduce(Poly num, Poly den) {
  if (den.is_zero()) fail(Errc::ZeroDenominator, "rational function with zero denominator");
  RatFn out;
  if (num.is_zero()) {
    out.num_ = Poly();
    out.den_ = Poly(Rational(1));
    return out;
  }
  Poly g = gcd(num, den);
  if (g.degree() > 0) {
    num = poly_exact_div(num, g);
    den = poly_exact_div(den, g);
  }
  Rational lead = den.leading();
  Rational inv = 1 / lead;
  out.num_ = num * Poly(inv);
  out.den_ = den * Poly(inv);
  return out;
}

Rational RatFn::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (d == 0) fail(Errc::ZeroDenominator, "rational function evaluated at a pole");
  return num_(x) / d;
}

double RatFn::operator()(double x) const { return num_(x) / den_(x); }

RatFn operator+(const RatFn& a, const RatFn& b) {
  if (a.den_ == b.den_) return ratfn_reduce(a.num_ + b.num_, a.den_);
  return ratfn_reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator-(const RatFn& a, const RatFn& b) {
  if (a.den_ == b.den_) return ratfn_reduce(a.num_ - b.num_, a.den_);
  return ratfn_reduce(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFn operator*(const RatFn& a, const RatFn& b) { return ratfn_reduce(a.num_ * b.num_, a.den_ * b.den_); }

RatFn operator/(const RatFn& a, const RatFn& b) {
  if (b.is_zero()) fail(Errc::ZeroDenominator, "division by the zero rational function");
  return ratfn_reduce(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFn::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace qms
