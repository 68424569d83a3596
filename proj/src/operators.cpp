#include "qms/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qms {

namespace {

inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void require_same_dim(const DenseMatrix& a, const DenseMatrix& b, const char* who) {
  if (a.dim() != b.dim())
    fail(Errc::DimensionMismatch, std::string(who) + ": dimensions " + std::to_string(a.dim()) + " and " +
                                      std::to_string(b.dim()) + " differ");
}

void require_hermitian(const std::vector<DenseMatrix>& xs, const char* who) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) require_same_dim(xs[0], xs[i], who);
    if (!is_hermitian(xs[i])) fail(Errc::NotHermitian, std::string(who) + ": matrix " + std::to_string(i) + " is not hermitian");
  }
}

// Row i of C = A B, accumulated over k in ascending order.
inline void matmul_row(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& c, int i) {
  int n = a.dim();
  for (int k = 0; k < n; ++k) {
    Complex aik = a(i, k);
    if (aik == Complex(0.0, 0.0)) continue;
    for (int j = 0; j < n; ++j) c(i, j) += cmul(aik, b(k, j));
  }
}

std::vector<Complex> matvec(const DenseMatrix& a, const std::vector<Complex>& x) {
  int n = a.dim();
  std::vector<Complex> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Complex s = 0;
    for (int j = 0; j < n; ++j) s += cmul(a(i, j), x[static_cast<std::size_t>(j)]);
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

std::vector<Complex> adjoint_matvec(const DenseMatrix& a, const std::vector<Complex>& x) {
  int n = a.dim();
  std::vector<Complex> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] += cmul(std::conj(a(i, j)), x[static_cast<std::size_t>(i)]);
  return y;
}

double norm2(const std::vector<Complex>& x) {
  double s = 0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

ResidualReport make_report(std::vector<std::string> names, std::vector<DenseMatrix> res, int margin) {
  ResidualReport r;
  r.names = std::move(names);
  r.residuals = std::move(res);
  r.margin = margin;
  for (const auto& m : r.residuals) {
    r.interior_norms.push_back(interior_norm(m, margin));
    r.spectral_norms.push_back(spectral_norm(m));
    r.interior_norm = std::max(r.interior_norm, r.interior_norms.back());
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------- DenseMatrix

DenseMatrix DenseMatrix::identity(int dim) {
  DenseMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const std::vector<Complex>& d) {
  DenseMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

Complex DenseMatrix::trace() const {
  Complex t = 0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(Complex s) {
  for (auto& v : a_) v = cmul(v, s);
  return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return matmul(a, b); }

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a, b, "matmul");
  DenseMatrix c(a.dim());
  int n = a.dim();
#pragma omp parallel for schedule(static) if (n >= 64)
  for (int i = 0; i < n; ++i) matmul_row(a, b, c, i);
  return c;
}

DenseMatrix matmul_reference(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a, b, "matmul_reference");
  DenseMatrix c(a.dim());
  for (int i = 0; i < a.dim(); ++i) matmul_row(a, b, c, i);
  return c;
}

double max_abs(const DenseMatrix& m) {
  double best = 0;
  for (const auto& v : m.data()) best = std::max(best, std::abs(v));
  return best;
}

double frobenius_norm(const DenseMatrix& m) {
  double s = 0;
  for (const auto& v : m.data()) s += std::norm(v);
  return std::sqrt(s);
}

double spectral_norm(const DenseMatrix& m, int iterations, double tol) {
  int n = m.dim();
  if (n == 0) return 0.0;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = Complex(unit(rng), unit(rng) - 1.0);
  double nv = norm2(v);
  for (auto& x : v) x /= nv;
  double sigma = 0;
  for (int it = 0; it < iterations; ++it) {
    auto w = matvec(m, v);
    double s = norm2(w);
    if (s == 0) return 0.0;
    auto u = adjoint_matvec(m, w);
    double nu = norm2(u);
    if (nu == 0) return s;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = u[k] / nu;
    bool done = std::abs(s - sigma) <= tol * s;
    sigma = s;
    if (done) break;
  }
  return std::max(sigma, norm2(matvec(m, v)));
}

double band_norm(const DenseMatrix& m, int lo, int hi) {
  lo = std::max(lo, 0);
  hi = std::min(hi, m.dim());
  double best = 0;
  for (int i = lo; i < hi; ++i)
    for (int j = lo; j < hi; ++j) best = std::max(best, std::abs(m(i, j)));
  return best;
}

double interior_norm(const DenseMatrix& m, int margin) {
  if (margin < 0) fail(Errc::InvalidArgument, "interior_norm: negative margin");
  if (2 * margin >= m.dim()) fail(Errc::InsufficientRange, "interior_norm: margin leaves no interior");
  return band_norm(m, margin, m.dim() - margin);
}

bool is_hermitian(const DenseMatrix& m, double tol) {
  double scale = std::max(1.0, max_abs(m));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol * scale) return false;
  return true;
}

bool is_unitary(const DenseMatrix& m, double tol) {
  return max_abs(matmul(m.adjoint(), m) - DenseMatrix::identity(m.dim())) <= tol;
}

DenseMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::vector<Complex>> cols(static_cast<std::size_t>(dim), std::vector<Complex>(static_cast<std::size_t>(dim)));
  for (auto& c : cols)
    for (auto& x : c) x = Complex(g(rng), g(rng));
  // Modified Gram-Schmidt, twice for orthogonality to rounding.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot = 0;
        for (std::size_t i = 0; i < cols[j].size(); ++i) dot += std::conj(cols[k][i]) * cols[j][i];
        for (std::size_t i = 0; i < cols[j].size(); ++i) cols[j][i] -= dot * cols[k][i];
      }
      double nn = norm2(cols[j]);
      for (auto& x : cols[j]) x /= nn;
    }
  }
  DenseMatrix u(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) u(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return u;
}

DenseMatrix random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  DenseMatrix h(dim);
  for (int i = 0; i < dim; ++i) {
    h(i, i) = g(rng);
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(g(rng), g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

// ---------------------------------------------------------------- shifts

ShiftOperator ShiftOperator::adjoint() const {
  ShiftOperator out{dim, -shift, std::vector<Complex>(static_cast<std::size_t>(dim))};
  for (int m = 0; m < dim; ++m) {
    int n = m - shift;  // original column landing on row m
    if (n >= 0 && n < dim) out.weights[static_cast<std::size_t>(m)] = std::conj(weights[static_cast<std::size_t>(n)]);
  }
  return out;
}

DenseMatrix ShiftOperator::dense() const {
  DenseMatrix m(dim);
  for (int n = 0; n < dim; ++n) {
    int row = n + shift;
    if (row >= 0 && row < dim) m(row, n) = weights[static_cast<std::size_t>(n)];
  }
  return m;
}

std::vector<Complex> ShiftOperator::apply(const std::vector<Complex>& x) const {
  if (static_cast<int>(x.size()) != dim) fail(Errc::DimensionMismatch, "ShiftOperator::apply: vector length");
  std::vector<Complex> y(x.size());
  for (int n = 0; n < dim; ++n) {
    int row = n + shift;
    if (row >= 0 && row < dim) y[static_cast<std::size_t>(row)] += cmul(weights[static_cast<std::size_t>(n)], x[static_cast<std::size_t>(n)]);
  }
  return y;
}

ShiftOperator shift_matrix(const std::vector<Complex>& weights, int dim, int shift) {
  if (weights.empty()) fail(Errc::DimensionTooSmall, "shift_matrix: no weights");
  if (dim < std::abs(shift) + 1) fail(Errc::DimensionTooSmall, "shift_matrix: dim must exceed |shift|");
  if (static_cast<int>(weights.size()) < dim)
    fail(Errc::DimensionTooSmall, "shift_matrix: need one weight per column (" + std::to_string(dim) + ")");
  return {dim, shift, std::vector<Complex>(weights.begin(), weights.begin() + dim)};
}

ShiftOperator shift_matrix(const std::vector<double>& weights, int dim, int shift) {
  return shift_matrix(std::vector<Complex>(weights.begin(), weights.end()), dim, shift);
}

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b) {
  require_same_dim(a, b, "commutator");
  return matmul(a, b) - matmul(b, a);
}

// ---------------------------------------------------------------- residuals

ResidualReport ym_residual(const std::vector<DenseMatrix>& xs, int margin) {
  require_hermitian(xs, "ym_residual");
  std::vector<std::string> names;
  std::vector<DenseMatrix> res;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    DenseMatrix acc(xs[j].dim());
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (i != j) acc += commutator(xs[i], commutator(xs[i], xs[j]));
    names.push_back("X" + std::to_string(j + 1));
    res.push_back(std::move(acc));
  }
  return make_report(std::move(names), std::move(res), margin);
}

ResidualReport wz_residual(const DenseMatrix& w, const DenseMatrix& z, int margin) {
  require_same_dim(w, z, "wz_residual");
  if (!is_hermitian(z)) fail(Errc::NotHermitian, "wz_residual: Z is not hermitian");
  DenseMatrix wd = w.adjoint();
  DenseMatrix dw = 0.5 * commutator(w, commutator(wd, w)) + commutator(z, commutator(z, w));
  DenseMatrix dz = 0.5 * commutator(w, commutator(wd, z)) + 0.5 * commutator(wd, commutator(w, z));
  return make_report({"W", "Z"}, {std::move(dw), std::move(dz)}, margin);
}

ResidualReport hym_residual(const DenseMatrix& z1, const DenseMatrix& z2, double eps, int margin) {
  require_same_dim(z1, z2, "hym_residual");
  DenseMatrix r = commutator(z1.adjoint(), z1) + commutator(z2.adjoint(), z2) - eps * DenseMatrix::identity(z1.dim());
  auto report = make_report({"hym"}, {std::move(r)}, margin);
  report.commutativity_defect = interior_norm(commutator(z1, z2), margin);
  return report;
}

ResidualReport selfdual_residual(const std::vector<DenseMatrix>& xs) {
  if (xs.size() != 4) fail(Errc::InvalidArgument, "selfdual_residual: needs four matrices");
  require_hermitian(xs, "selfdual_residual");
  const auto& x4 = xs[3];
  std::vector<DenseMatrix> res;
  for (int a = 0; a < 3; ++a) {
    int b = (a + 1) % 3;
    int c = (a + 2) % 3;
    res.push_back(commutator(x4, xs[static_cast<std::size_t>(a)]) -
                  commutator(xs[static_cast<std::size_t>(b)], xs[static_cast<std::size_t>(c)]));
  }
  return make_report({"a1", "a2", "a3"}, std::move(res), 0);
}

double schild_matrix(const std::vector<DenseMatrix>& xs) {
  require_hermitian(xs, "schild_matrix");
  if (xs.empty()) return 0.0;
  Complex tr = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      DenseMatrix c = commutator(xs[i], xs[j]);
      tr += matmul(c, c).trace();
    }
  const double two_pi = 2.0 * std::numbers::pi;
  return -two_pi * two_pi * xs[0].dim() * tr.real();
}

double moment(const ShiftOperator& w, int n) {
  if (w.shift != 1) fail(Errc::InvalidArgument, "moment: W must raise the index by one");
  if (n < 1) fail(Errc::InvalidArgument, "moment: n must be at least 1");
  if (w.dim < n + 1) fail(Errc::InsufficientRange, "moment: dimension must be at least n + 1");
  ShiftOperator wd = w.adjoint();
  std::vector<Complex> psi(static_cast<std::size_t>(w.dim));
  psi[0] = 1.0;
  for (int k = n; k >= 1; --k) {
    for (int i = 0; i < k; ++i) psi = w.apply(psi);
    for (int i = 0; i < k; ++i) psi = wd.apply(psi);
  }
  return psi[0].real();
}

// ---------------------------------------------------------------- embeddings

namespace {

std::vector<Complex> sqrt_weights(const std::vector<double>& values) {
  std::vector<Complex> w;
  w.reserve(values.size());
  for (double v : values) w.emplace_back(std::sqrt(v), 0.0);
  return w;
}

}  // namespace

Embedding embed_catenoid(const CatenoidSolution& sol, int dim, int n_lo) {
  if (dim < 2) fail(Errc::DimensionTooSmall, "embed_catenoid: dim must be at least 2");
  if (!sol.contains(n_lo) || !sol.contains(n_lo + dim - 1))
    fail(Errc::InsufficientRange, "embed_catenoid: solution does not cover the requested window");
  std::vector<double> r(static_cast<std::size_t>(dim));
  std::vector<Complex> z(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    r[static_cast<std::size_t>(i)] = sol.r_at(n_lo + i);
    z[static_cast<std::size_t>(i)] = sol.z_at(n_lo + i);
  }
  Embedding e;
  e.model = EmbedModel::Catenoid;
  e.names = {"W", "Z"};
  e.mats = {shift_matrix(sqrt_weights(r), dim, -1).dense(), DenseMatrix::diagonal(z)};
  e.margin = 2;
  return e;
}

Embedding embed_enneper(const SigmaSequence& seq, int dim) {
  if (dim < 2) fail(Errc::DimensionTooSmall, "embed_enneper: dim must be at least 2");
  if (static_cast<int>(seq.sigma.size()) < dim)
    fail(Errc::InsufficientRange, "embed_enneper: sigma sequence shorter than dim");
  std::vector<double> s(seq.sigma.begin(), seq.sigma.begin() + dim);
  DenseMatrix lam = shift_matrix(sqrt_weights(s), dim, -1).dense();
  DenseMatrix lamd = lam.adjoint();
  DenseMatrix lam2 = matmul(lam, lam);
  DenseMatrix lamd2 = matmul(lamd, lamd);
  Embedding e;
  e.model = EmbedModel::Enneper;
  e.names = {"W", "Z"};
  e.mats = {lamd - (1.0 / 3.0) * matmul(lam2, lam), 0.5 * (lam2 + lamd2)};
  e.margin = 6;
  return e;
}

Embedding embed_hyperbola(const HyperbolaWindow& win, int dim) {
  if (dim < 2) fail(Errc::DimensionTooSmall, "embed_hyperbola: dim must be at least 2");
  std::vector<Complex> w1(static_cast<std::size_t>(dim)), w2(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    w1[static_cast<std::size_t>(i)] = std::sqrt(hyperbola_r(win.params, win.n_lo + i));
    w2[static_cast<std::size_t>(i)] = win.params.c_abs / std::sqrt(hyperbola_r(win.params, win.n_lo + i + 1));
  }
  Embedding e;
  e.model = EmbedModel::Hyperbola;
  e.names = {"Z1", "Z2"};
  e.mats = {shift_matrix(w1, dim, -1).dense(), shift_matrix(w2, dim, +1).dense()};
  e.margin = 2;
  return e;
}

Embedding embed_parabola(const ParabolaOrbit& orbit, int dim) {
  if (dim < 2) fail(Errc::DimensionTooSmall, "embed_parabola: dim must be at least 2");
  if (orbit.lifetime() < dim) fail(Errc::InsufficientRange, "embed_parabola: orbit not positive on 0..dim-1");
  std::vector<double> v(orbit.v.begin(), orbit.v.begin() + dim);
  DenseMatrix w = shift_matrix(sqrt_weights(v), dim, +1).dense();
  Embedding e;
  e.model = EmbedModel::Parabola;
  e.names = {"Z1", "Z2"};
  e.mats = {w, matmul(w, w)};
  e.margin = 4;
  return e;
}

Embedding embed(EmbedModel model, const SolutionRecord& record, int dim) {
  auto wrong = [] { fail(Errc::InvalidArgument, "embed: record type does not match the model"); };
  switch (model) {
    case EmbedModel::Catenoid:
      if (auto* s = std::get_if<CatenoidSolution>(&record)) return embed_catenoid(*s, dim, s->n_min);
      break;
    case EmbedModel::Enneper:
      if (auto* s = std::get_if<SigmaSequence>(&record)) return embed_enneper(*s, dim);
      break;
    case EmbedModel::Hyperbola:
      if (auto* s = std::get_if<HyperbolaWindow>(&record)) return embed_hyperbola(*s, dim);
      break;
    case EmbedModel::Parabola:
      if (auto* s = std::get_if<ParabolaOrbit>(&record)) return embed_parabola(*s, dim);
      break;
  }
  wrong();
  return {};
}

ResidualReport embedding_residual(const Embedding& e, const SolutionRecord& record, int margin) {
  switch (e.model) {
    case EmbedModel::Catenoid:
    case EmbedModel::Enneper:
      return wz_residual(e.mats[0], e.mats[1], margin);
    case EmbedModel::Hyperbola:
      return hym_residual(e.mats[0], e.mats[1], std::get<HyperbolaWindow>(record).params.eps, margin);
    case EmbedModel::Parabola:
      return hym_residual(e.mats[0], e.mats[1], std::get<ParabolaOrbit>(record).eps, margin);
  }
  fail(Errc::InvalidArgument, "embedding_residual: unknown model");
}

}  // namespace qms
