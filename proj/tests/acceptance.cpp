// Acceptance checks. Prints one PASS/FAIL line per criterion; every tolerance
// and runtime limit is fixed here. Usage: qms_acceptance [criterion ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qms/operators.hpp"
#include "qms/parabola.hpp"
#include "qms/surfaces.hpp"
#include "qms/torusdegree.hpp"

namespace {

using namespace qms;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Verdict&)> body;
};

constexpr double kPi = std::numbers::pi;

// BigFloat precision in decimal digits for a requested bit count.
unsigned digits_for_bits(unsigned bits) { return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1; }

void c1_parabola_orbit(Verdict& v) {
  auto orbit = v_iterate_exact(Rational(1), Rational(1, 2), 10);
  std::vector<Rational> expected{Rational(1, 2), Rational(1), Rational(1, 2), Rational(4), Rational(-1, 2)};
  v.check(orbit.v == expected, "orbit values");
  v.check(orbit.first_failure && *orbit.first_failure == 4, "first failure at n = 4");
  v.detail << "v = ";
  for (const auto& q : orbit.v) v.detail << to_string(q) << ' ';
}

void c2_unique_ic(Verdict& v) {
  auto d = vhat_bisect(1.0, 1e-15, 200);
  v.check(d.vhat >= 0.5, "vhat >= 1/2");
  v.check(std::abs(d.vhat - 9.0 / 16.0) <= 0.05, "|vhat - 9/16| <= 0.05");
  v.check(d.survived_steps >= 40, "double survival >= 40");
  unsigned old = BigFloat::default_precision();
  BigFloat::default_precision(digits_for_bits(256));
  auto x = vhat_bisect(BigFloat(1), BigFloat("1e-300"), 1000);
  BigFloat::default_precision(old);
  v.check(x.survived_steps >= 200, "256-bit survival >= 200");
  v.detail << "vhat = " << d.vhat << ", survival double " << d.survived_steps << ", 256-bit " << x.survived_steps;
}

void c3_series(Verdict& v) {
  unsigned old = BigFloat::default_precision();
  BigFloat::default_precision(digits_for_bits(256));
  std::vector<double> err;
  for (const char* e : {"0.02", "0.01", "0.005"}) {
    BigFloat eps(e);
    auto res = vhat_bisect(eps, BigFloat("1e-60"), 2000);
    BigFloat series = eps - 2 * eps * eps + 8 * eps * eps * eps;
    err.push_back(static_cast<double>(abs(res.vhat - series)));
  }
  BigFloat::default_precision(old);
  v.detail << "errors";
  for (double e : err) v.detail << ' ' << e;
  v.detail << "; ratios";
  for (std::size_t i = 1; i < err.size(); ++i) {
    double ratio = err[i - 1] / err[i];
    v.detail << ' ' << ratio;
    v.check(err[i] < err[i - 1], "error decreases");
    v.check(ratio >= 8.0 && ratio <= 32.0, "ratio in [8, 32]");
  }
}

std::vector<Poly> u_closed(const Rational& e) {
  const Poly x = Poly::x();
  const Poly E(e);
  return {x,
          E - x,
          x * x + x * (Poly(1L) + E) - E,
          -E * (Poly(4L) * x * x + x * (Poly(1L) - Poly(2L) * E) - E),
          -E * ((Poly(3L) - Poly(2L) * E) * x * x - Poly(2L) * x * E * (E + Poly(4L)) + Poly(5L) * E * E),
          Poly(-3L) * E *
              (pow(x, 3) * (Poly(1L) + Poly(6L) * E) + x * x * (Poly(1L) + Poly(3L) * E + Poly(4L) * E * E) -
               x * E * (Poly(2L) + Poly(3L) * E + Poly(2L) * E * E) + E * E * (Poly(1L) - E))};
}

void c4_polynomials(Verdict& v) {
  int checked = 0;
  for (const Rational& e : {Rational(1), Rational(1, 2), Rational(1, 3), Rational(2), Rational(1, 7)}) {
    auto u = u_exact(e, 5);
    auto ref = u_closed(e);
    for (int n = 0; n <= 5; ++n) v.check(u[static_cast<std::size_t>(n)] == ref[static_cast<std::size_t>(n)], "u fixture");
    auto t = tau_table(e, 11);
    for (int n = 1; n <= 10; ++n) {
      v.check(t.tau(n) == t.u_at(n - 1) * t.u_at(n - 2) * t.u_at(n - 3), "tau triple product");
      v.check(tau_recursion_residual(t, n).is_zero(), "three-term identity");
      if (n >= 2) v.check(conserved_residual(t, n).res_a.is_zero(), "five-term identity");
      ++checked;
    }
  }
  v.detail << checked << " (eps, n) pairs exact";
}

void c5_hyperbola(Verdict& v) {
  double worst = 0;
  for (double eps : {0.1, 0.5, 1.0, 1.5, 2.0})
    for (double delta : {-2.0, -0.5, 0.0, 0.7, 3.0}) {
      HyperbolaParams p{eps, delta, 1.0, +1};
      for (int n = -500; n <= 500; ++n) worst = std::max(worst, std::abs(hyperbola_residual(p, n)));
    }
  v.check(worst <= 1e-12, "recursion residual <= 1e-12");
  HyperbolaWindow win{{1.0, 0.0, 1.0, +1}, -32};
  auto e = embed_hyperbola(win, 64);
  auto rep = hym_residual(e.mats[0], e.mats[1], 1.0, e.margin);
  v.check(rep.interior_norm <= 1e-12, "HYM interior <= 1e-12");
  v.detail << "recursion " << worst << ", HYM interior " << rep.interior_norm;
}

void c6_catenoid(Verdict& v) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    double c = (u(rng) < 0.5 ? -1 : 1) * (0.05 + 2.0 * u(rng));
    double r0 = 0.1 + 3.0 * u(rng);
    double r1 = r0 + u(rng) * 2 * c * c / (r0 * r0);
    auto sol = catenoid_build(c, r0, r1, 0.0, -50, 50);
    bool ok = true;
    for (int n = 1; n <= 50; ++n) ok = ok && sol.r_at(n) >= sol.r_at(n - 1);
    for (int n = -1; n >= -50; --n) ok = ok && sol.r_at(n) >= sol.r_at(n + 1);
    for (int n = -49; n <= 50; ++n) ok = ok && c * (sol.z_at(n) - sol.z_at(n - 1)) > 0;
    for (double r : sol.r) ok = ok && r > 0;
    try {
      catenoid_classify(sol);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) ++bad;
  }
  v.check(bad == 0, "random invariants");
  v.detail << "random starts violating invariants: " << bad << "; ";
  try {
    auto sol = catenoid_build(Rational(1), Rational(1), Rational(3, 2), Rational(0), -100, 100);
    bool zero = true;
    for (int n = -99; n <= 99; ++n) {
      auto [a, b] = catenoid_residual(sol, n);
      zero = zero && a == 0 && b == 0;
    }
    v.check(zero, "exact residual zero on [-100, 100]");
  } catch (const Error& e) {
    v.check(false, "exact build on [-100, 100]");
    v.detail << "exact route: " << e.what();
  }
}

void c7_orders(Verdict& v) {
  double p = std::log2(std::abs(catenoid_continuum_residual(1.0, 0.01, 100) /
                                catenoid_continuum_residual(1.0, 0.005, 200)));
  double h = std::log2(std::abs(helicoid_residual(1.0, 0.1) / helicoid_residual(1.0, 0.05)));
  v.check(p >= 2.5 && p <= 3.5, "continuum order in [2.5, 3.5]");
  v.check(h >= 3.5 && h <= 4.5, "helicoid order in [3.5, 4.5]");
  v.detail << "catenoid order " << p << ", helicoid order " << h;
}

void c8_asymptotics(Verdict& v) {
  // gap d(n) = r_n - asymptotic; bounded means no drift across decades
  std::vector<double> d;
  for (int n : {10, 100, 1000, 10000, 100000}) d.push_back(catenoid_closed(1, 1, n).r - catenoid_asymptotic(1, 1, n));
  double worst = 0;
  for (double x : d) worst = std::max(worst, std::abs(x));
  double drift = std::abs(d[4] - d[2]);
  v.check(worst <= 1.0, "|gap| <= 1");
  v.check(drift <= 1e-2, "gap drift over n in [1e3, 1e5] <= 1e-2");
  v.detail << "gap at 1e1..1e5:";
  for (double x : d) v.detail << ' ' << x;
}

void c9_enneper(Verdict& v) {
  for (double h : {0.01, 0.1, 0.5}) {
    auto seq = enneper_sigma(h, 500);
    bool inc = true;
    for (std::size_t n = 1; n < seq.sigma.size(); ++n) inc = inc && seq.sigma[n] > seq.sigma[n - 1];
    v.check(inc, "sigma strictly increasing");
  }
  for (double h : {0.05, 0.02, 0.01}) {
    double s1 = enneper_sigma(h, 1).sigma[1];
    v.check(std::abs(s1 / (2 * h) - 1) <= 3 * h, "sigma_1 leading order");
  }
  std::vector<double> band;
  for (double h : {0.04, 0.02, 0.01}) {
    auto e = embed_enneper(enneper_sigma(h, 40), 40);
    auto rep = wz_residual(e.mats[0], e.mats[1], e.margin);
    band.push_back(std::max(band_norm(rep.residuals[0], 0, 20), band_norm(rep.residuals[1], 0, 20)));
  }
  v.detail << "band residuals";
  for (std::size_t i = 0; i < band.size(); ++i) {
    v.detail << ' ' << band[i];
    if (i > 0) v.check(band[i] / band[i - 1] < 0.6, "band ratio < 0.6");
  }
}

void c10_torus(Verdict& v) {
  for (int n : {16, 32, 64, 128}) {
    auto t = clock_shift(n);
    auto r = torus_degree(t.mats[0], t.mats[1]);
    v.check(r.k_estimate == 1, "k = 1");
    v.check(std::abs(r.trace_value - Complex(0, 2 * kPi)) <= 20.0 / n, "|Tr(Psi - I) - 2 pi i| <= 20/N");
    v.check(torus_degree(t.mats[0], t.mats[1] * t.mats[1]).k_estimate == 2, "squared clock gives k = 2");
    v.check(torus_eom_residual(t).max_norm <= 1e-13, "EOM <= 1e-13");
    double s = unitary_schild(t);
    v.check(std::abs(s - 4 * kPi * kPi) <= 200.0 / (n * n), "|S - 4 pi^2| <= 200/N^2");
    if (n == 128) v.detail << "N=128 trace " << r.trace_value << ", S " << s;
  }
}

void c11_sphere(Verdict& v) {
  for (int n : {9, 25, 101}) {
    auto xs = fuzzy_sphere(n);
    auto r = sphere_degree(xs[0], xs[1], xs[2]);
    double dev = std::abs(r.trace_value.imag() - 2.0 / 3.0);
    v.check(dev <= 1.0 / (n * n), "|Tr/i - 2/3| <= 1/N^2");
    v.check(std::abs(r.trace_value.real()) <= 1e-12, "trace purely imaginary");
    v.check(r.k_estimate == 1, "k = 1");
    v.check(r.defect <= 2.1 / n, "defect <= 2.1/N");
    v.detail << "N=" << n << " dev " << dev << " defect " << r.defect << "; ";
  }
}

void c12_cross(Verdict& v) {
  auto sol = catenoid_build(1.0, 1.0, 2.0, 0.0, -64, 64);
  auto e = embed_catenoid(sol, 128, -64);
  auto wz = wz_residual(e.mats[0], e.mats[1], e.margin);
  auto wd = e.mats[0].adjoint();
  auto ym = ym_residual({0.5 * (e.mats[0] + wd), Complex(0, -0.5) * (e.mats[0] - wd), e.mats[1]}, e.margin);
  v.check(wz.interior_norm <= 1e-12, "wz interior <= 1e-12");
  v.check(ym.interior_norm <= 1e-12, "ym interior <= 1e-12");
  const double x = vhat_bisect(1.0, 1e-15, 200).vhat;
  auto orbit = v_iterate(1.0, x, 60);
  std::vector<double> w(orbit.v.begin(), orbit.v.begin() + 16);
  for (double& c : w) c = std::sqrt(c);
  auto W = shift_matrix(w, 16, 1);
  auto t = tau_table(Rational(1), 6);
  double worst = 0;
  for (int n = 1; n <= 5; ++n) {
    double tau = t.tau(n)(x);
    worst = std::max(worst, std::abs(moment(W, n) - tau) / std::max(1.0, std::abs(tau)));
  }
  v.check(worst <= 1e-10, "moment vs tau <= 1e-10");
  v.detail << "wz " << wz.interior_norm << ", ym " << ym.interior_norm << ", moment/tau " << worst;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "parabola exact orbit", 1e-3, c1_parabola_orbit},
      {2, "parabola unique initial value", 1.0, c2_unique_ic},
      {3, "series accuracy per halving", 5.0, c3_series},
      {4, "exact polynomial fixtures", 10.0, c4_polynomials},
      {5, "hyperbola exactness", 1.0, c5_hyperbola},
      {6, "catenoid shape and exact recursion", 10.0, c6_catenoid},
      {7, "continuum orders", 1.0, c7_orders},
      {8, "catenoid asymptotics", 1.0, c8_asymptotics},
      {9, "Enneper", 5.0, c9_enneper},
      {10, "torus degree", 1.0, c10_torus},
      {11, "sphere degree", 2.0, c11_sphere},
      {12, "cross-module oracle", 2.0, c12_cross},
  };
  return list;
}

bool run_one(const Criterion& c) {
  Verdict v;
  auto start = std::chrono::steady_clock::now();
  try {
    c.body(v);
  } catch (const std::exception& e) {
    v.check(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  v.check(secs < c.limit_seconds, "runtime");
  std::printf("%s %02d %s (%.4f s, limit %g s): %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, secs,
              c.limit_seconds, v.detail.str().c_str());
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  bool all = true;
  for (const auto& c : criteria())
    if (ids.empty() || std::find(ids.begin(), ids.end(), c.id) != ids.end()) all = run_one(c) && all;
  return all ? 0 : 1;
}
