#include "qms/torusdegree.hpp"

#include <cmath>
#include <numbers>

namespace qms {

UnitaryTuple make_unitary_tuple(std::vector<DenseMatrix> mats, double tol) {
  UnitaryTuple t;
  if (mats.empty()) return t;
  t.dim = mats.front().dim();
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].dim() != t.dim) fail(Errc::DimensionMismatch, "unitary tuple: dimensions differ");
    if (!is_unitary(mats[i], tol)) fail(Errc::NotUnitary, "unitary tuple: matrix " + std::to_string(i) + " is not unitary");
  }
  t.mats = std::move(mats);
  return t;
}

UnitaryTuple clock_shift(int n) {
  if (n < 2) fail(Errc::DimensionTooSmall, "clock_shift: N must be at least 2");
  DenseMatrix shift(n), clock(n);
  for (int k = 0; k < n; ++k) {
    shift((k + n - 1) % n, k) = 1.0;
    clock(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
  }
  return make_unitary_tuple({shift, clock});
}

DenseMatrix group_commutator(const DenseMatrix& a, const DenseMatrix& b) {
  return matmul(matmul(a, b), matmul(a.adjoint(), b.adjoint()));
}

double unitary_schild(const UnitaryTuple& phis) {
  make_unitary_tuple(phis.mats);  // validates
  Complex sum = 0;
  DenseMatrix two = 2.0 * DenseMatrix::identity(phis.dim);
  for (std::size_t i = 0; i < phis.mats.size(); ++i)
    for (std::size_t j = i + 1; j < phis.mats.size(); ++j)
      sum += (two - group_commutator(phis.mats[i], phis.mats[j]) - group_commutator(phis.mats[j], phis.mats[i])).trace();
  double value = phis.dim * sum.real();
  double imag = phis.dim * sum.imag();
  if (std::abs(imag) > 1e-10 * std::max(1.0, std::abs(value)))
    fail(Errc::InvariantViolated, "unitary_schild: action has an imaginary part " + std::to_string(imag));
  return value;
}

EomResidual torus_eom_residual(const UnitaryTuple& phis) {
  make_unitary_tuple(phis.mats);
  EomResidual out;
  const auto& p = phis.mats;
  for (std::size_t i = 0; i < p.size(); ++i) {
    DenseMatrix acc(phis.dim);
    DenseMatrix pi_inv = p[i].adjoint();
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j == i) continue;
      DenseMatrix pj_inv = p[j].adjoint();
      acc += matmul(matmul(p[i], p[j]), matmul(pi_inv, pj_inv));
      acc -= matmul(matmul(pj_inv, p[i]), matmul(p[j], pi_inv));
      acc += matmul(matmul(p[i], pj_inv), matmul(pi_inv, p[j]));
      acc -= matmul(matmul(p[j], p[i]), matmul(pj_inv, pi_inv));
    }
    out.max_abs_norms.push_back(max_abs(acc));
    out.max_norm = std::max(out.max_norm, out.max_abs_norms.back());
    out.residuals.push_back(std::move(acc));
  }
  return out;
}

DegreeReport torus_degree(const DenseMatrix& p1, const DenseMatrix& p2) {
  auto t = make_unitary_tuple({p1, p2});
  DegreeReport r;
  r.dim = t.dim;
  r.trace_value = (group_commutator(p1, p2) - DenseMatrix::identity(t.dim)).trace();
  r.k_estimate = static_cast<int>(std::lround(r.trace_value.imag() / (2.0 * std::numbers::pi)));
  DenseMatrix c = commutator(p1, p2);
  r.defect = spectral_norm(c);
  r.defect_frobenius = frobenius_norm(c);
  double cconst = t.dim * r.defect;
  r.bound_satisfied = std::abs(r.k_estimate) < cconst / (2.0 * std::numbers::pi);
  return r;
}

std::vector<DenseMatrix> fuzzy_sphere(int n) {
  if (n < 2) fail(Errc::DimensionTooSmall, "fuzzy_sphere: N must be at least 2");
  double j = 0.5 * (n - 1);
  double casimir = j * (j + 1.0);
  double scale = 1.0 / std::sqrt(casimir);
  DenseMatrix x1(n), x2(n), x3(n);
  // Basis |m>, m = j, j-1, ..., -j; index i carries m = j - i.
  for (int i = 0; i < n; ++i) {
    double m = j - i;
    x3(i, i) = m * scale;
    if (i > 0) {
      // L+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index i-1.
      double lp = std::sqrt(casimir - m * (m + 1.0)) * scale;
      x1(i - 1, i) += 0.5 * lp;
      x1(i, i - 1) += 0.5 * lp;
      x2(i - 1, i) += Complex(0.0, -0.5 * lp);
      x2(i, i - 1) += Complex(0.0, 0.5 * lp);
    }
  }
  return {x1, x2, x3};
}

DegreeReport sphere_degree(const DenseMatrix& x1, const DenseMatrix& x2, const DenseMatrix& x3) {
  std::vector<DenseMatrix> xs{x1, x2, x3};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i].dim() != x1.dim()) fail(Errc::DimensionMismatch, "sphere_degree: dimensions differ");
    if (!is_hermitian(xs[i])) fail(Errc::NotHermitian, "sphere_degree: X" + std::to_string(i + 1) + " is not hermitian");
  }
  DenseMatrix constraint = matmul(x1, x1) + matmul(x2, x2) + matmul(x3, x3) - DenseMatrix::identity(x1.dim());
  if (max_abs(constraint) > 1e-10) fail(Errc::ConstraintViolated, "sphere_degree: X1^2 + X2^2 + X3^2 != I");
  DegreeReport r;
  r.dim = x1.dim();
  r.trace_value = matmul(x1, commutator(x2, x3)).trace();
  r.k_estimate = static_cast<int>(std::lround(r.trace_value.imag() * 1.5));
  r.defect = commutator_defect(xs);
  double frob = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = i + 1; k < xs.size(); ++k) frob = std::max(frob, frobenius_norm(commutator(xs[i], xs[k])));
  r.defect_frobenius = frob;
  return r;
}

double commutator_defect(const std::vector<DenseMatrix>& mats) {
  double best = 0;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t k = i + 1; k < mats.size(); ++k) best = std::max(best, spectral_norm(commutator(mats[i], mats[k])));
  return best;
}

}  // namespace qms
