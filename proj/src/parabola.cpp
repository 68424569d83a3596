#include "qms/parabola.hpp"

#include <cstdlib>
#include <numeric>
#include <tuple>

namespace qms {

unsigned precision_from_env() {
  const char* env = std::getenv("QMS_PRECISION");
  if (env == nullptr || *env == '\0') return 53;
  char* end = nullptr;
  long bits = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || bits < 53 || bits > 1 << 20)
    fail(Errc::InvalidArgument, std::string("QMS_PRECISION must be an integer in [53, 1048576], got '") + env + "'");
  return static_cast<unsigned>(bits);
}

double vhat_series(double eps) { return eps - 2.0 * eps * eps + 8.0 * eps * eps * eps; }

double closed_form_v(int n, double hbar, double c) {
  double radicand = 1.0 / 16.0 + n * hbar + c;
  if (radicand < 0) fail(Errc::DomainError, "closed_form_v: negative radicand");
  return -0.25 + std::sqrt(radicand);
}

std::vector<RatFn> v_exact(const Rational& eps, int n_max) {
  if (!(eps > 0)) fail(Errc::InvalidArgument, "v_exact: eps must be positive");
  if (n_max < 0) fail(Errc::InvalidArgument, "v_exact: n_max must be nonnegative");
  const Poly x = Poly::x();
  std::vector<RatFn> v;
  v.emplace_back(x);
  if (n_max >= 1) v.push_back(ratfn_reduce(Poly(eps) - x, x));
  for (int n = 1; n < n_max; ++n) {
    RatFn coef(Poly(Rational(eps * (n + 1))));
    v.push_back(coef / v[n] - v[n - 1] - RatFn(Poly(1L)));
  }
  return v;
}

ParabolaOrbitT<Rational> v_iterate_exact(const Rational& eps, const Rational& x, int n_max) {
  return v_iterate<Rational>(eps, x, n_max);
}

std::vector<Poly> u_exact(const Rational& eps, int n_max) {
  auto v = v_exact(eps, n_max);
  std::vector<Poly> u;
  auto u_at = [&](int k) { return k < 0 ? Poly(1L) : u[static_cast<std::size_t>(k)]; };
  for (int n = 0; n <= n_max; ++n) {
    RatFn prod = v[n] * RatFn(u_at(n - 1) * u_at(n - 3));
    if (!prod.is_polynomial())
      fail(Errc::NotDivisible, "u_" + std::to_string(n) + ": v_n u_{n-1} u_{n-3} is not a polynomial");
    u.push_back(poly_exact_div(prod.num(), u_at(n - 4)));
  }
  return u;
}

TauTable tau_table(const Rational& eps, int n_max) {
  if (n_max < 0) fail(Errc::InvalidArgument, "tau_table: n_max must be nonnegative");
  TauTable t;
  t.eps = eps;
  t.u = u_exact(eps, n_max);
  auto v = v_exact(eps, n_max);
  t.tau_data = {Poly(1L), Poly(1L)};  // tau_{-1}, tau_0
  for (int n = 0; n <= n_max; ++n) {
    RatFn next = v[n] * RatFn(t.tau(n) * t.tau(n)) / RatFn(t.tau(n - 1));
    if (!next.is_polynomial())
      fail(Errc::NotDivisible, "tau_" + std::to_string(n + 1) + " is not a polynomial");
    t.tau_data.push_back(next.num());
  }
  for (int n = 1; n <= t.tau_max(); ++n) {
    Poly triple = t.u_at(n - 1) * t.u_at(n - 2) * t.u_at(n - 3);
    if (!(poly_exact_div(t.tau(n), triple) == Poly(1L)))
      fail(Errc::InvariantViolated, "tau_" + std::to_string(n) + " differs from u_{n-1} u_{n-2} u_{n-3}");
  }
  return t;
}

Poly tau_recursion_residual(const TauTable& table, int n) {
  if (n < 1 || n + 2 > table.tau_max()) fail(Errc::InsufficientRange, "tau_recursion_residual: index out of table");
  auto T = [&](int k) -> const Poly& { return table.tau(k); };
  Poly e(Rational(table.eps * (n + 1)));
  return T(n + 2) * T(n) * T(n - 1) * T(n - 1) + T(n + 1) * T(n + 1) * (T(n - 1) * T(n - 1) + T(n) * T(n - 2)) -
         e * T(n + 1) * T(n) * T(n) * T(n - 1);
}

ConservedResidual conserved_residual(const TauTable& table, int n) {
  if (n < 2) fail(Errc::InvalidArgument, "conserved_residual: the five-term form needs n >= 2");
  if (n + 2 > table.tau_max()) fail(Errc::InsufficientRange, "conserved_residual: index out of table");
  auto T = [&](int k) -> const Poly& { return table.tau(k); };
  Poly e(table.eps);
  Poly cube = T(n - 1) * T(n - 1) * T(n - 1);
  Poly res_a = T(n + 2) * T(n) * cube * T(n - 2) + T(n + 1) * T(n + 1) * cube * T(n - 2) -
               T(n + 1) * T(n) * T(n) * T(n) * (T(n - 2) * T(n - 2) + T(n - 1) * T(n - 3)) -
               e * T(n + 1) * T(n) * T(n) * T(n - 1) * T(n - 1) * T(n - 2);
  return {res_a, tau_recursion_residual(table, n)};
}

namespace {

struct Candidate {
  int lifetime;
  std::size_t order;  // flattened (box, point) index, the deterministic tie-break
  std::vector<double> point;
};

struct Box {
  std::vector<double> lo, hi;
};

std::vector<double> grid_point(const Box& box, long index, int grid) {
  std::vector<double> x(box.lo.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    long i = index % grid;
    index /= grid;
    double h = (box.hi[d] - box.lo[d]) / grid;
    x[d] = box.lo[d] + (static_cast<double>(i) + 0.5) * h;
  }
  return x;
}

int seed_lifetime(int p, int q, double eps, const std::vector<double>& seeds, int n_max) {
  for (double s : seeds)
    if (!(s > 0)) return 0;
  try {
    return monomial_pair_iterate(p, q, eps, seeds, n_max).lifetime();
  } catch (const Error&) {
    return 0;
  }
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <class Evaluate>
SeedSearchResult beam_search(int p, int q, double eps, const std::vector<double>& lo, const std::vector<double>& hi,
                             const SeedSearchOptions& opts, Evaluate&& evaluate) {
  if (p < 1 || q <= p) fail(Errc::InvalidArgument, "monomial_seed_search: need 1 <= p < q");
  std::size_t dim = static_cast<std::size_t>(q - 1);
  if (lo.size() != dim || hi.size() != dim)
    fail(Errc::DimensionMismatch, "monomial_seed_search: box must have q - 1 coordinates");
  if (opts.grid < 1 || opts.keep < 1 || opts.levels < 1)
    fail(Errc::InvalidArgument, "monomial_seed_search: grid, keep and levels must be positive");

  SeedSearchResult result;
  std::vector<Box> beam{Box{lo, hi}};
  long per_box = ipow(opts.grid, static_cast<int>(dim));
  for (int level = 0; level < opts.levels; ++level) {
    std::vector<std::vector<double>> points;
    points.reserve(beam.size() * static_cast<std::size_t>(per_box));
    for (const auto& box : beam)
      for (long i = 0; i < per_box; ++i) points.push_back(grid_point(box, i, opts.grid));
    std::vector<int> life(points.size());
    evaluate(points, life, [&](const std::vector<double>& s) { return seed_lifetime(p, q, eps, s, opts.n_max); });
    result.evaluations += static_cast<long>(points.size());

    std::vector<Candidate> cands;
    cands.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) cands.push_back({life[i], i, points[i]});
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      return std::tie(b.lifetime, a.order) < std::tie(a.lifetime, b.order);
    });
    if (cands.front().lifetime > result.lifetime || result.seeds.empty()) {
      result.lifetime = cands.front().lifetime;
      result.seeds = cands.front().point;
    }
    result.best_per_level.push_back(cands.front().lifetime);

    std::vector<Box> next;
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(opts.keep), cands.size());
    for (std::size_t k = 0; k < take; ++k) {
      const Candidate& c = cands[k];
      const Box& parent = beam[c.order / static_cast<std::size_t>(per_box)];
      Box b{std::vector<double>(dim), std::vector<double>(dim)};
      for (std::size_t d = 0; d < dim; ++d) {
        double h = (parent.hi[d] - parent.lo[d]) / opts.grid;
        b.lo[d] = std::max(c.point[d] - opts.spread * h, 0.0);
        b.hi[d] = c.point[d] + opts.spread * h;
      }
      next.push_back(std::move(b));
    }
    beam = std::move(next);
  }
  return result;
}

}  // namespace

SeedSearchResult monomial_seed_search(int p, int q, double eps, const std::vector<double>& lo,
                                      const std::vector<double>& hi, const SeedSearchOptions& opts) {
  return beam_search(p, q, eps, lo, hi, opts, [](const auto& points, std::vector<int>& life, auto&& f) {
    long n = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) life[static_cast<std::size_t>(i)] = f(points[static_cast<std::size_t>(i)]);
  });
}

SeedSearchResult monomial_seed_search_reference(int p, int q, double eps, const std::vector<double>& lo,
                                                const std::vector<double>& hi, const SeedSearchOptions& opts) {
  return beam_search(p, q, eps, lo, hi, opts, [](const auto& points, std::vector<int>& life, auto&& f) {
    for (std::size_t i = 0; i < points.size(); ++i) life[i] = f(points[i]);
  });
}

}  // namespace qms
