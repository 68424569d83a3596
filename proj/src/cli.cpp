#include "qms/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qms/operators.hpp"
#include "qms/parabola.hpp"
#include "qms/surfaces.hpp"
#include "qms/torusdegree.hpp"

namespace qms {

using nlohmann::json;

// ---------------------------------------------------------------- RunConfig

namespace {

const std::string& param_text(const RunConfig& cfg, const std::string& name) {
  auto it = cfg.params.find(name);
  if (it == cfg.params.end()) fail(Errc::InvalidArgument, "unknown parameter '" + name + "'");
  return it->second;
}

double parse_decimal(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  fail(Errc::InvalidArgument, "--" + name + ": '" + text + "' is not a number");
}

}  // namespace

double RunConfig::real(const std::string& name) const {
  const std::string& text = param_text(*this, name);
  if (text.find('/') != std::string::npos) return to_double(parse_rational(text));
  return parse_decimal(name, text);
}

Rational RunConfig::exact(const std::string& name) const {
  const std::string& text = param_text(*this, name);
  try {
    return parse_rational(text);
  } catch (const Error&) {
    fail(Errc::InvalidArgument, "--" + name + ": exact arithmetic needs an integer or p/q, got '" + text + "'");
  }
}

long RunConfig::integer(const std::string& name) const {
  const std::string& text = param_text(*this, name);
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  fail(Errc::InvalidArgument, "--" + name + ": '" + text + "' is not an integer");
}

json RunConfig::echo() const {
  json j;
  j["module"] = module;
  j["op"] = op;
  j["params"] = params;
  j["mode"] = mode == Mode::Exact ? "exact" : "float";
  j["format"] = format == Format::Csv ? "csv" : "json";
  j["seed"] = seed;
  j["sweep"] = sweep;
  return j;
}

// ---------------------------------------------------------------- ResultTable

json complex_json(double re, double im) { return json{{"re", re}, {"im", im}}; }

json ResultTable::to_json() const {
  json rows_j = json::array();
  for (const auto& row : rows) rows_j.push_back(row);
  return json{{"metadata", metadata}, {"summary", summary}, {"columns", columns}, {"rows", rows_j}};
}

ResultTable ResultTable::from_json(const json& j) {
  ResultTable t;
  t.metadata = j.at("metadata");
  t.summary = j.at("summary");
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) t.rows.push_back(row.get<std::vector<json>>());
  return t;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_cell(const json& v) { return csv_escape(v.is_string() ? v.get<std::string>() : v.dump()); }

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(std::move(cur));
  return cells;
}

json csv_value(const std::string& cell) {
  json v = json::parse(cell, nullptr, false);
  if (v.is_discarded()) return cell;
  return v;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::ostringstream os;
  os << "# metadata: " << metadata.dump() << '\n';
  os << "# summary: " << summary.dump() << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_escape(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  return os.str();
}

ResultTable ResultTable::from_csv(const std::string& text) {
  ResultTable t;
  std::istringstream is(text);
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.rfind("# metadata: ", 0) == 0) {
      t.metadata = json::parse(line.substr(12));
    } else if (line.rfind("# summary: ", 0) == 0) {
      t.summary = json::parse(line.substr(11));
    } else if (!header) {
      header = true;
      if (!line.empty()) t.columns = csv_split(line);
    } else {
      std::vector<json> row;
      for (const auto& cell : csv_split(line)) row.push_back(csv_value(cell));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// ---------------------------------------------------------------- commands

namespace {

json rational_cell(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

std::vector<json> poly_row(const std::string& label, const Poly& p) {
  std::vector<json> row{label};
  if (p.is_zero()) row.push_back(0);
  for (const auto& c : p.coefficients()) row.push_back(rational_cell(c));
  return row;
}

Poly parse_poly(const RunConfig& cfg, const std::string& name) {
  const std::string& text = param_text(cfg, name);
  if (text.empty()) fail(Errc::InvalidArgument, "--" + name + " needs comma-separated coefficients (low to high)");
  std::vector<Rational> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(parse_rational(item));
  return Poly(std::move(coeffs));
}

std::vector<double> parse_list(const RunConfig& cfg, const std::string& name) {
  const std::string& text = param_text(cfg, name);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find('/') != std::string::npos)
      out.push_back(to_double(parse_rational(item)));
    else
      out.push_back(parse_decimal(name, item));
  }
  return out;
}

void require_float(const RunConfig& cfg) {
  if (cfg.mode == Mode::Exact)
    fail(Errc::InvalidArgument, cfg.module + " " + cfg.op + " has no exact route; use --mode float");
}

int margin_or(const RunConfig& cfg, int fallback) {
  long m = cfg.integer("margin");
  return m < 0 ? fallback : static_cast<int>(m);
}

int to_int(long v, const char* name) {
  if (v < -(1L << 30) || v > (1L << 30)) fail(Errc::InvalidArgument, std::string("--") + name + " is out of range");
  return static_cast<int>(v);
}

std::string big_str(const BigFloat& x) {
  std::ostringstream os;
  os << std::setprecision(static_cast<int>(x.precision())) << x;
  return os.str();
}

// exact

ResultTable exact_divide(const RunConfig& cfg) {
  Poly a = parse_poly(cfg, "num");
  Poly b = parse_poly(cfg, "den");
  if (b.is_zero()) fail(Errc::ZeroDenominator, "--den is the zero polynomial");
  Poly q = poly_exact_div(a, b);
  ResultTable t;
  t.summary = {{"quotient", q.str()}, {"degree", q.degree()}};
  t.columns = {"label", "coefficients"};
  t.rows.push_back(poly_row("q", q));
  return t;
}

ResultTable exact_reduce(const RunConfig& cfg) {
  RatFn f = ratfn_reduce(parse_poly(cfg, "num"), parse_poly(cfg, "den"));
  ResultTable t;
  t.summary = {{"reduced", f.str()}};
  t.columns = {"label", "coefficients"};
  t.rows.push_back(poly_row("num", f.num()));
  t.rows.push_back(poly_row("den", f.den()));
  return t;
}

// catenoid

ResultTable catenoid_build_cmd(const RunConfig& cfg) {
  int n_min = to_int(cfg.integer("n-min"), "n-min");
  int n_max = to_int(cfg.integer("n-max"), "n-max");
  ResultTable t;
  t.columns = {"n", "r", "z", "res_r", "res_z"};
  if (cfg.mode == Mode::Exact) {
    auto sol = catenoid_build(cfg.exact("c"), cfg.exact("r0"), cfg.exact("r1"), cfg.exact("z0"), n_min, n_max);
    bool all_zero = true;
    for (int n = n_min; n <= n_max; ++n) {
      json rr = nullptr, rz = nullptr;
      if (sol.contains(n - 1) && sol.contains(n + 1)) {
        auto [a, b] = catenoid_residual(sol, n);
        all_zero = all_zero && a == 0 && b == 0;
        rr = rational_cell(a);
        rz = rational_cell(b);
      }
      t.rows.push_back({n, rational_cell(sol.r_at(n)), rational_cell(sol.z_at(n)), rr, rz});
    }
    t.summary = {{"exact_residual_zero", all_zero}};
    return t;
  }
  auto sol = catenoid_build(cfg.real("c"), cfg.real("r0"), cfg.real("r1"), cfg.real("z0"), n_min, n_max);
  double worst = 0;
  for (int n = n_min; n <= n_max; ++n) {
    json rr = nullptr, rz = nullptr;
    if (sol.contains(n - 1) && sol.contains(n + 1)) {
      auto [a, b] = catenoid_residual(sol, n);
      worst = std::max({worst, std::abs(a), std::abs(b)});
      rr = a;
      rz = b;
    }
    t.rows.push_back({n, sol.r_at(n), sol.z_at(n), rr, rz});
  }
  t.summary = {{"max_abs_residual", worst}};
  return t;
}

ResultTable catenoid_classify_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto sol = catenoid_build(cfg.real("c"), cfg.real("r0"), cfg.real("r1"), cfg.real("z0"),
                            to_int(cfg.integer("n-min"), "n-min"), to_int(cfg.integer("n-max"), "n-max"));
  auto cls = catenoid_classify(sol);
  ResultTable t;
  t.summary = {{"n0", cls.n0},
               {"delta", cls.delta},
               {"c", cls.c},
               {"monotone_up_from", cls.monotone_up_from},
               {"monotone_down_to", cls.monotone_down_to},
               {"boundary_warning", cls.boundary_warning}};
  return t;
}

ResultTable catenoid_closed_cmd(const RunConfig& cfg) {
  require_float(cfg);
  double a = cfg.real("a"), hbar = cfg.real("hbar");
  int branch = to_int(cfg.integer("branch"), "branch");
  ResultTable t;
  t.columns = {"n", "r", "z"};
  for (long n = cfg.integer("n-min"); n <= cfg.integer("n-max"); ++n) {
    auto pt = catenoid_closed(a, hbar, static_cast<int>(n), branch);
    t.rows.push_back({n, pt.r, pt.z});
  }
  return t;
}

ResultTable catenoid_asymptotic_cmd(const RunConfig& cfg) {
  require_float(cfg);
  double a = cfg.real("a"), hbar = cfg.real("hbar");
  ResultTable t;
  t.columns = {"n", "r_closed", "r_asymptotic", "difference"};
  for (long n = cfg.integer("n-min"); n <= cfg.integer("n-max"); ++n) {
    if (n == 0) continue;
    double rc = catenoid_closed(a, hbar, static_cast<int>(n)).r;
    double ra = catenoid_asymptotic(a, hbar, static_cast<int>(n));
    t.rows.push_back({n, rc, ra, rc - ra});
  }
  return t;
}

ResultTable catenoid_continuum_cmd(const RunConfig& cfg) {
  require_float(cfg);
  double a = cfg.real("a"), hbar = cfg.real("hbar");
  int n = to_int(cfg.integer("n"), "n");
  double r1 = catenoid_continuum_residual(a, hbar, n);
  double r2 = catenoid_continuum_residual(a, hbar / 2, 2 * n);
  ResultTable t;
  t.summary = {{"residual", r1}, {"residual_half_step", r2}, {"order", std::log2(std::abs(r1 / r2))}};
  return t;
}

// enneper, helicoid, hyperbola

ResultTable enneper_sigma_cmd(const RunConfig& cfg) {
  require_float(cfg);
  double hbar = cfg.real("hbar");
  auto seq = enneper_sigma(hbar, to_int(cfg.integer("n-max"), "n-max"));
  ResultTable t;
  t.columns = {"n", "sigma"};
  for (std::size_t n = 0; n < seq.sigma.size(); ++n) t.rows.push_back({n, seq.sigma[n]});
  if (seq.sigma.size() > 1) t.summary = {{"sigma1_over_2hbar", seq.sigma[1] / (2 * hbar)}};
  return t;
}

ResultTable enneper_closed_cmd(const RunConfig& cfg) {
  require_float(cfg);
  double hbar = cfg.real("hbar"), c = cfg.real("c");
  ResultTable t;
  t.columns = {"n", "sigma_closed"};
  for (long n = 0; n <= cfg.integer("n-max"); ++n) t.rows.push_back({n, enneper_sigma_closed(hbar, c, static_cast<int>(n))});
  return t;
}

ResultTable helicoid_profile_cmd(const RunConfig& cfg) {
  require_float(cfg);
  ResultTable t;
  t.summary = {{"w", helicoid_profile(cfg.real("x"))}};
  return t;
}

ResultTable helicoid_residual_cmd(const RunConfig& cfg) {
  require_float(cfg);
  double x = cfg.real("x"), hbar = cfg.real("hbar");
  double r1 = helicoid_residual(x, hbar);
  double r2 = helicoid_residual(x, hbar / 2);
  ResultTable t;
  t.summary = {{"residual", r1}, {"residual_half_step", r2}, {"order", std::log2(std::abs(r1 / r2))}};
  return t;
}

HyperbolaParams hyperbola_params(const RunConfig& cfg) {
  return {cfg.real("eps"), cfg.real("delta"), cfg.real("c"), to_int(cfg.integer("branch"), "branch")};
}

ResultTable hyperbola_solve_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto params = hyperbola_params(cfg);
  ResultTable t;
  t.columns = {"n", "r", "residual"};
  double worst = 0;
  for (long n = cfg.integer("n-min"); n <= cfg.integer("n-max"); ++n) {
    double r = hyperbola_r(params, static_cast<int>(n));
    double res = hyperbola_residual(params, static_cast<int>(n));
    worst = std::max(worst, std::abs(res));
    t.rows.push_back({n, r, res});
  }
  t.summary = {{"max_abs_residual", worst}};
  return t;
}

// parabola

template <class Real>
ResultTable orbit_table(const ParabolaOrbitT<Real>& orbit, const std::function<json(const Real&)>& cell) {
  ResultTable t;
  t.columns = {"n", "v"};
  for (std::size_t n = 0; n < orbit.v.size(); ++n) t.rows.push_back({n, cell(orbit.v[n])});
  t.summary = {{"first_failure", orbit.first_failure ? json(*orbit.first_failure) : json(nullptr)},
               {"lifetime", orbit.lifetime()}};
  return t;
}

ResultTable parabola_iterate_cmd(const RunConfig& cfg) {
  int n_max = to_int(cfg.integer("n-max"), "n-max");
  if (cfg.mode == Mode::Exact) {
    auto orbit = v_iterate_exact(cfg.exact("eps"), cfg.exact("x"), n_max);
    return orbit_table<Rational>(orbit, [](const Rational& q) { return rational_cell(q); });
  }
  auto orbit = v_iterate(cfg.real("eps"), cfg.real("x"), n_max);
  return orbit_table<double>(orbit, [](const double& v) { return json(v); });
}

ResultTable parabola_shoot_cmd(const RunConfig& cfg) {
  require_float(cfg);
  int n_max = to_int(cfg.integer("n-max"), "n-max");
  unsigned bits = precision_from_env();
  ResultTable t;
  double eps = cfg.real("eps");
  if (bits > 53) {
    BigFloat::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
    const std::string& et = param_text(cfg, "eps");
    BigFloat e = et.find('/') != std::string::npos
                     ? BigFloat(parse_rational(et).get_num().get_str()) / BigFloat(parse_rational(et).get_den().get_str())
                     : BigFloat(et);
    auto res = vhat_bisect<BigFloat>(e, BigFloat(cfg.real("tol")), n_max);
    t.summary = {{"vhat", res.vhat.convert_to<double>()},
                 {"vhat_digits", big_str(res.vhat)},
                 {"bracket", {res.lo.convert_to<double>(), res.hi.convert_to<double>()}},
                 {"survived_steps", res.survived_steps},
                 {"tolerance", res.tolerance.convert_to<double>()},
                 {"iterations", res.iterations}};
  } else {
    auto res = vhat_bisect<double>(eps, cfg.real("tol"), n_max);
    t.summary = {{"vhat", res.vhat},
                 {"bracket", {res.lo, res.hi}},
                 {"survived_steps", res.survived_steps},
                 {"tolerance", res.tolerance},
                 {"iterations", res.iterations}};
  }
  t.summary["series"] = vhat_series(eps);
  t.summary["precision_bits"] = bits;
  return t;
}

ResultTable parabola_series_cmd(const RunConfig& cfg) {
  require_float(cfg);
  ResultTable t;
  t.summary = {{"series", vhat_series(cfg.real("eps"))}};
  return t;
}

ResultTable parabola_closed_cmd(const RunConfig& cfg) {
  require_float(cfg);
  ResultTable t;
  t.summary = {{"v", closed_form_v(to_int(cfg.integer("n"), "n"), cfg.real("hbar"), cfg.real("c"))}};
  return t;
}

ResultTable parabola_endpoints_cmd(const RunConfig& cfg) {
  require_float(cfg);
  int n_max = to_int(cfg.integer("n-max"), "n-max");
  unsigned bits = precision_from_env();
  ResultTable t;
  t.columns = {"n", "c"};
  if (bits > 53) {
    BigFloat::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
    auto c = interval_endpoints<BigFloat>(BigFloat(cfg.real("eps")), n_max);
    for (std::size_t n = 0; n < c.size(); ++n) t.rows.push_back({n, big_str(c[n])});
  } else {
    auto c = interval_endpoints<double>(cfg.real("eps"), n_max);
    for (std::size_t n = 0; n < c.size(); ++n) t.rows.push_back({n, c[n]});
  }
  t.summary = {{"precision_bits", bits}};
  return t;
}

ResultTable parabola_upoly_cmd(const RunConfig& cfg) {
  int n = to_int(cfg.integer("n"), "n");
  auto u = u_exact(cfg.exact("eps"), n);
  ResultTable t;
  t.columns = {"label", "coefficients"};
  for (int k = 0; k <= n; ++k) t.rows.push_back(poly_row("u" + std::to_string(k), u[static_cast<std::size_t>(k)]));
  t.summary = {{"order", "low-to-high"}, {"degree_last", u.back().degree()}};
  return t;
}

ResultTable parabola_tau_cmd(const RunConfig& cfg) {
  int n = to_int(cfg.integer("n"), "n");
  auto table = tau_table(cfg.exact("eps"), n);
  ResultTable t;
  t.columns = {"label", "coefficients"};
  for (int k = -1; k <= table.tau_max(); ++k) t.rows.push_back(poly_row("tau" + std::to_string(k), table.tau(k)));
  t.summary = {{"order", "low-to-high"}, {"factorization_verified", true}};
  return t;
}

ResultTable parabola_conserved_cmd(const RunConfig& cfg) {
  int n = to_int(cfg.integer("n"), "n");
  auto table = tau_table(cfg.exact("eps"), n + 2);
  auto res = conserved_residual(table, n);
  ResultTable t;
  t.summary = {{"res_a", res.res_a.str()},
               {"res_b", res.res_b.str()},
               {"res_a_zero", res.res_a.is_zero()},
               {"res_b_zero", res.res_b.is_zero()}};
  return t;
}

ResultTable parabola_monomial_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto orbit = monomial_pair_iterate(to_int(cfg.integer("p"), "p"), to_int(cfg.integer("q"), "q"), cfg.real("eps"),
                                     parse_list(cfg, "seeds"), to_int(cfg.integer("n-max"), "n-max"));
  return orbit_table<double>(orbit, [](const double& v) { return json(v); });
}

ResultTable parabola_search_cmd(const RunConfig& cfg) {
  require_float(cfg);
  int p = to_int(cfg.integer("p"), "p"), q = to_int(cfg.integer("q"), "q");
  double eps = cfg.real("eps");
  SeedSearchOptions opts;
  opts.levels = to_int(cfg.integer("levels"), "levels");
  opts.n_max = to_int(cfg.integer("n-max"), "n-max");
  std::vector<double> lo(static_cast<std::size_t>(std::max(q - 1, 0)), 0.0);
  std::vector<double> hi(lo.size(), 0.0);
  for (std::size_t d = 0; d < hi.size(); ++d) hi[d] = 2.0 * eps * static_cast<double>(d + 1);
  auto res = monomial_seed_search(p, q, eps, lo, hi, opts);
  ResultTable t;
  t.columns = {"level", "best_lifetime"};
  for (std::size_t l = 0; l < res.best_per_level.size(); ++l) t.rows.push_back({l, res.best_per_level[l]});
  t.summary = {{"seeds", res.seeds}, {"lifetime", res.lifetime}, {"evaluations", res.evaluations}, {"box_hi", hi}};
  return t;
}

// operators

json report_json(const ResidualReport& r) {
  json j;
  j["interior_norm"] = r.interior_norm;
  j["margin"] = r.margin;
  j["interior_norms"] = r.interior_norms;
  j["spectral_norms"] = r.spectral_norms;
  j["names"] = r.names;
  return j;
}

ResultTable operators_embed_cmd(const RunConfig& cfg) {
  require_float(cfg);
  std::string model = param_text(cfg, "model");
  int dim = to_int(cfg.integer("N"), "N");
  SolutionRecord record;
  EmbedModel m;
  if (model == "catenoid") {
    m = EmbedModel::Catenoid;
    int n_min = to_int(cfg.integer("n-min"), "n-min");
    record = catenoid_build(cfg.real("c"), cfg.real("r0"), cfg.real("r1"), cfg.real("z0"), std::min(n_min, 0),
                            std::max(n_min + dim - 1, 1));
  } else if (model == "enneper") {
    m = EmbedModel::Enneper;
    record = enneper_sigma(cfg.real("hbar"), dim);
  } else if (model == "hyperbola") {
    m = EmbedModel::Hyperbola;
    record = HyperbolaWindow{hyperbola_params(cfg), to_int(cfg.integer("n-min"), "n-min")};
  } else if (model == "parabola") {
    m = EmbedModel::Parabola;
    double eps = cfg.real("eps");
    auto shot = vhat_bisect<double>(eps, 1e-300, 1000);
    record = v_iterate(eps, shot.vhat, 1000);
  } else {
    fail(Errc::InvalidArgument, "--model must be catenoid, enneper, hyperbola or parabola");
  }
  auto e = embed(m, record, dim);
  auto rep = embedding_residual(e, record, margin_or(cfg, e.margin));
  ResultTable t;
  t.summary = report_json(rep);
  if (m == EmbedModel::Hyperbola || m == EmbedModel::Parabola) t.summary["commutativity_defect"] = rep.commutativity_defect;
  if (m == EmbedModel::Enneper) {
    json band = json::array();
    for (const auto& r : rep.residuals) band.push_back(band_norm(r, 0, 20));
    t.summary["band_0_20"] = band;
  }
  t.columns = {"residual", "row", "max_abs_entry"};
  for (std::size_t k = 0; k < rep.residuals.size(); ++k) {
    const auto& r = rep.residuals[k];
    for (int i = 0; i < r.dim(); ++i) {
      double row = 0;
      for (int j = 0; j < r.dim(); ++j) row = std::max(row, std::abs(r(i, j)));
      t.rows.push_back({rep.names[k], i, row});
    }
  }
  return t;
}

std::vector<DenseMatrix> pauli_halves() {
  DenseMatrix s1(2), s2(2), s3(2);
  s1(0, 1) = s1(1, 0) = 0.5;
  s2(0, 1) = Complex(0, -0.5);
  s2(1, 0) = Complex(0, 0.5);
  s3(0, 0) = 0.5;
  s3(1, 1) = -0.5;
  return {s1, s2, s3};
}

ResultTable operators_schild_cmd(const RunConfig& cfg) {
  require_float(cfg);
  std::string model = param_text(cfg, "model");
  std::vector<DenseMatrix> xs;
  if (model == "pauli")
    xs = pauli_halves();
  else if (model == "fuzzy")
    xs = fuzzy_sphere(to_int(cfg.integer("N"), "N"));
  else
    fail(Errc::InvalidArgument, "--model must be pauli or fuzzy for operators schild");
  ResultTable t;
  t.summary = {{"schild", schild_matrix(xs)}, {"N", xs.front().dim()}};
  return t;
}

ResultTable operators_selfdual_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto xs = pauli_halves();
  xs.push_back(DenseMatrix(2));
  auto rep = selfdual_residual(xs);
  ResultTable t;
  t.summary = report_json(rep);
  return t;
}

ResultTable operators_moment_cmd(const RunConfig& cfg) {
  require_float(cfg);
  int n = to_int(cfg.integer("n"), "n");
  Rational eps = cfg.exact("eps");
  double e = to_double(eps);
  auto shot = vhat_bisect<double>(e, 1e-300, 1000);
  auto orbit = v_iterate(e, shot.vhat, 1000);
  std::vector<double> v(orbit.v.begin(), orbit.v.begin() + std::min<std::size_t>(orbit.v.size(), n + 2));
  auto w = shift_matrix(v, static_cast<int>(v.size()), +1);
  for (auto& x : w.weights) x = std::sqrt(x);
  auto table = tau_table(eps, n);
  ResultTable t;
  t.columns = {"n", "moment", "tau"};
  for (int k = 1; k <= n; ++k) t.rows.push_back({k, moment(w, k), table.tau(k)(shot.vhat)});
  t.summary = {{"x", shot.vhat}};
  return t;
}

// torus, sphere

ResultTable torus_clockshift_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto cs = clock_shift(to_int(cfg.integer("N"), "N"));
  Complex psi = group_commutator(cs.mats[0], cs.mats[1])(0, 0);
  ResultTable t;
  t.summary = {{"group_commutator_scalar", complex_json(psi.real(), psi.imag())}, {"N", cs.dim}};
  return t;
}

ResultTable torus_schild_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto cs = clock_shift(to_int(cfg.integer("N"), "N"));
  ResultTable t;
  t.summary = {{"schild", unitary_schild(cs)}, {"limit", 4 * std::numbers::pi * std::numbers::pi}, {"N", cs.dim}};
  return t;
}

ResultTable torus_eom_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto cs = clock_shift(to_int(cfg.integer("N"), "N"));
  auto eom = torus_eom_residual(cs);
  ResultTable t;
  t.summary = {{"max_norm", eom.max_norm}, {"norms", eom.max_abs_norms}, {"N", cs.dim}};
  return t;
}

json degree_json(const DegreeReport& r) {
  return {{"trace", complex_json(r.trace_value.real(), r.trace_value.imag())},
          {"k", r.k_estimate},
          {"defect", r.defect},
          {"defect_frobenius", r.defect_frobenius},
          {"N", r.dim}};
}

ResultTable torus_degree_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto cs = clock_shift(to_int(cfg.integer("N"), "N"));
  long power = cfg.integer("p");
  DenseMatrix p2 = DenseMatrix::identity(cs.dim);
  for (long k = 0; k < power; ++k) p2 = matmul(p2, cs.mats[1]);
  auto r = torus_degree(cs.mats[0], p2);
  ResultTable t;
  t.summary = degree_json(r);
  t.summary["bound_satisfied"] = r.bound_satisfied;
  t.summary["convention"] = "Phi1|k> = |k-1 mod N>, Phi2 = diag(omega^k); clock/shift has k = +1";
  return t;
}

ResultTable sphere_fuzzy_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto xs = fuzzy_sphere(to_int(cfg.integer("N"), "N"));
  DenseMatrix cas = matmul(xs[0], xs[0]) + matmul(xs[1], xs[1]) + matmul(xs[2], xs[2]) - DenseMatrix::identity(xs[0].dim());
  ResultTable t;
  t.summary = {{"casimir_deviation", max_abs(cas)}, {"commutator_defect", commutator_defect(xs)}, {"N", xs[0].dim()}};
  return t;
}

ResultTable sphere_degree_cmd(const RunConfig& cfg) {
  require_float(cfg);
  auto xs = fuzzy_sphere(to_int(cfg.integer("N"), "N"));
  ResultTable t;
  t.summary = degree_json(sphere_degree(xs[0], xs[1], xs[2]));
  return t;
}

using Handler = std::function<ResultTable(const RunConfig&)>;

const std::map<std::pair<std::string, std::string>, Handler>& registry() {
  static const std::map<std::pair<std::string, std::string>, Handler> table = {
      {{"exact", "divide"}, exact_divide},
      {{"exact", "reduce"}, exact_reduce},
      {{"catenoid", "build"}, catenoid_build_cmd},
      {{"catenoid", "classify"}, catenoid_classify_cmd},
      {{"catenoid", "closed"}, catenoid_closed_cmd},
      {{"catenoid", "asymptotic"}, catenoid_asymptotic_cmd},
      {{"catenoid", "continuum"}, catenoid_continuum_cmd},
      {{"enneper", "sigma"}, enneper_sigma_cmd},
      {{"enneper", "closed"}, enneper_closed_cmd},
      {{"helicoid", "profile"}, helicoid_profile_cmd},
      {{"helicoid", "residual"}, helicoid_residual_cmd},
      {{"hyperbola", "solve"}, hyperbola_solve_cmd},
      {{"parabola", "iterate"}, parabola_iterate_cmd},
      {{"parabola", "shoot"}, parabola_shoot_cmd},
      {{"parabola", "series"}, parabola_series_cmd},
      {{"parabola", "closed"}, parabola_closed_cmd},
      {{"parabola", "endpoints"}, parabola_endpoints_cmd},
      {{"parabola", "upoly"}, parabola_upoly_cmd},
      {{"parabola", "tau"}, parabola_tau_cmd},
      {{"parabola", "conserved"}, parabola_conserved_cmd},
      {{"parabola", "monomial"}, parabola_monomial_cmd},
      {{"parabola", "search"}, parabola_search_cmd},
      {{"operators", "embed"}, operators_embed_cmd},
      {{"operators", "schild"}, operators_schild_cmd},
      {{"operators", "selfdual"}, operators_selfdual_cmd},
      {{"operators", "moment"}, operators_moment_cmd},
      {{"torus", "clockshift"}, torus_clockshift_cmd},
      {{"torus", "schild"}, torus_schild_cmd},
      {{"torus", "eom"}, torus_eom_cmd},
      {{"torus", "degree"}, torus_degree_cmd},
      {{"sphere", "fuzzy"}, sphere_fuzzy_cmd},
      {{"sphere", "degree"}, sphere_degree_cmd},
  };
  return table;
}

std::string command_list() {
  std::string s;
  for (const auto& [key, _] : registry()) s += "  " + key.first + " " + key.second + "\n";
  return s;
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ResultTable run_sweep(const RunConfig& cfg, const Handler& handler) {
  auto eq = cfg.sweep.find('=');
  if (eq == std::string::npos) fail(Errc::InvalidArgument, "--sweep expects param=v1,v2,...");
  std::string name = cfg.sweep.substr(0, eq);
  if (!cfg.params.count(name)) fail(Errc::InvalidArgument, "--sweep: unknown parameter '" + name + "'");
  std::vector<std::string> values;
  std::stringstream ss(cfg.sweep.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(item);
  if (values.empty()) fail(Errc::InvalidArgument, "--sweep: no values");

  std::vector<std::pair<double, std::string>> points;
  for (const auto& v : values) {
    RunConfig probe = cfg;
    probe.params[name] = v;
    points.emplace_back(probe.real(name), v);
  }
  std::stable_sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<ResultTable> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      RunConfig point = cfg;
      point.params[name] = points[k].second;
      results[k] = handler(point);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ResultTable t;
  t.columns = {name};
  for (const auto& [key, _] : results.front().summary.items()) t.columns.push_back(key);
  for (std::size_t k = 0; k < results.size(); ++k) {
    std::vector<json> row{points[k].second};
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
      const auto& s = results[k].summary;
      row.push_back(s.contains(t.columns[c]) ? s.at(t.columns[c]) : json(nullptr));
    }
    t.rows.push_back(std::move(row));
  }
  t.summary = {{"sweep", name}, {"points", points.size()}};
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Quantized minimal surfaces: recursions, closed forms and matrix residuals", "qms"};
  app.footer("Commands (qms <module> <op>):\n" + command_list());
  app.add_option("module", cfg.module, "module")->required();
  app.add_option("op", cfg.op, "operation")->required();
  for (auto& [name, value] : cfg.params) app.add_option("--" + name, value, name)->capture_default_str();
  std::string mode = "float", format = "json";
  app.add_option("--mode", mode, "float or exact")->check(CLI::IsMember({"float", "exact"}))->capture_default_str();
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized probes")->capture_default_str();
  app.add_option("--sweep", cfg.sweep, "param=v1,v2,... evaluated in parallel");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }
  cfg.mode = mode == "exact" ? Mode::Exact : Mode::Float;
  cfg.format = format == "csv" ? Format::Csv : Format::Json;

  auto it = registry().find({cfg.module, cfg.op});
  if (it == registry().end()) {
    err << "qms: unknown command '" << cfg.module << " " << cfg.op << "'\nAvailable:\n" << command_list();
    return 2;
  }
  ResultTable table;
  unsigned bits = 53;
  try {
    bits = precision_from_env();
    table = cfg.sweep.empty() ? it->second(cfg) : run_sweep(cfg, it->second);
  } catch (const Error& e) {
    err << "qms: " << e.what() << '\n';
    return is_contract_violation(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "qms: internal error: " << e.what() << '\n';
    return 1;
  }
  table.metadata = {{"tool", "qms"},
                    {"version", kToolVersion},
                    {"config", cfg.echo()},
                    {"precision_bits", bits},
                    {"timestamp", utc_timestamp()}};
  if (cfg.format == Format::Csv)
    out << table.to_csv();
  else
    out << table.to_json().dump(2) << '\n';
  return 0;
}

}  // namespace qms
