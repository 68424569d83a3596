#pragma once

// Finite truncations of shift operators, commutator residuals of the matrix
// minimal-surface equations, HYM and self-dual checks, Schild actions and the
// per-surface embeddings.

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qms/error.hpp"
#include "qms/parabola.hpp"
#include "qms/surfaces.hpp"

namespace qms {

using Complex = std::complex<double>;

class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}

  static DenseMatrix identity(int dim);
  static DenseMatrix diagonal(const std::vector<Complex>& d);

  int dim() const { return dim_; }
  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const std::vector<Complex>& data() const { return a_; }

  DenseMatrix adjoint() const;
  Complex trace() const;

  DenseMatrix& operator+=(const DenseMatrix& rhs);
  DenseMatrix& operator-=(const DenseMatrix& rhs);
  DenseMatrix& operator*=(Complex s);

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, Complex s) { return a *= s; }
  friend DenseMatrix operator*(Complex s, DenseMatrix a) { return a *= s; }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

 private:
  int dim_ = 0;
  std::vector<Complex> a_;  // row-major
};

// C = A B. The OpenMP kernel and its serial reference agree bit for bit
// (each entry is accumulated in the same order).
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix matmul_reference(const DenseMatrix& a, const DenseMatrix& b);

double max_abs(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);
// Largest singular value by power iteration on A^dagger A.
double spectral_norm(const DenseMatrix& m, int iterations = 50, double tol = 1e-12);
// max |m_ij| over rows and columns in [margin, dim - margin).
double interior_norm(const DenseMatrix& m, int margin);
// max |m_ij| over rows and columns in [lo, hi).
double band_norm(const DenseMatrix& m, int lo, int hi);

bool is_hermitian(const DenseMatrix& m, double tol = 1e-12);
bool is_unitary(const DenseMatrix& m, double tol = 1e-12);

DenseMatrix random_unitary(int dim, std::uint64_t seed);
DenseMatrix random_hermitian(int dim, std::uint64_t seed);

// Entry (n + shift, n) = weights[n] for every column n whose target row fits.
struct ShiftOperator {
  int dim = 0;
  int shift = 0;
  std::vector<Complex> weights;

  ShiftOperator adjoint() const;
  DenseMatrix dense() const;
  std::vector<Complex> apply(const std::vector<Complex>& x) const;
};

ShiftOperator shift_matrix(const std::vector<Complex>& weights, int dim, int shift);
ShiftOperator shift_matrix(const std::vector<double>& weights, int dim, int shift);

DenseMatrix commutator(const DenseMatrix& a, const DenseMatrix& b);

struct ResidualReport {
  std::vector<std::string> names;
  std::vector<DenseMatrix> residuals;
  std::vector<double> interior_norms;  // max-entry, per residual
  std::vector<double> spectral_norms;  // whole matrix, per residual
  double interior_norm = 0.0;          // max over residuals
  int margin = 0;
  double commutativity_defect = 0.0;   // hym only: interior max-entry of [Z1, Z2]
};

// Sum_i [X_i, [X_i, X_j]] for each j.
ResidualReport ym_residual(const std::vector<DenseMatrix>& xs, int margin);
// 1/2 [W, [W^dagger, W]] + [Z, [Z, W]] and 1/2 [W, [W^dagger, Z]] + 1/2 [W^dagger, [W, Z]].
ResidualReport wz_residual(const DenseMatrix& w, const DenseMatrix& z, int margin);
// [Z1^dagger, Z1] + [Z2^dagger, Z2] - eps I.
ResidualReport hym_residual(const DenseMatrix& z1, const DenseMatrix& z2, double eps, int margin);
// [X4, X_a] - [X_b, X_c] for (a, b, c) cyclic.
ResidualReport selfdual_residual(const std::vector<DenseMatrix>& xs);

// -(2 pi)^2 N Tr sum_{i<j} [X_i, X_j]^2.
double schild_matrix(const std::vector<DenseMatrix>& xs);

// <0| W^dagger W (W^dagger)^2 W^2 ... (W^dagger)^n W^n |0> for a raising W.
double moment(const ShiftOperator& w, int n);

// ---------------------------------------------------------------- embeddings

enum class EmbedModel { Catenoid, Enneper, Hyperbola, Parabola };

struct HyperbolaWindow {
  HyperbolaParams params;
  int n_lo = 0;  // physical index of basis vector 0
};

struct Embedding {
  EmbedModel model{};
  std::vector<std::string> names;
  std::vector<DenseMatrix> mats;
  int margin = 0;  // default interior margin for the model's residual
};

// W|i> = sqrt(r_{n_lo+i}) |i-1>, Z = diag(z_{n_lo+i}).
Embedding embed_catenoid(const CatenoidSolution& sol, int dim, int n_lo);
// Lambda|i> = sqrt(sigma_i)|i-1>, W = Lambda^dagger - Lambda^3/3, Z = (Lambda^2 + Lambda^dagger^2)/2.
Embedding embed_enneper(const SigmaSequence& seq, int dim);
// Z1|i> = w_i |i-1>, Z2|i> = |c|/w_{i+1} |i+1>, w_i = sqrt(r_{n_lo+i}).
Embedding embed_hyperbola(const HyperbolaWindow& win, int dim);
// W|i> = sqrt(v_i)|i+1>, Z1 = W, Z2 = W^2.
Embedding embed_parabola(const ParabolaOrbit& orbit, int dim);

using SolutionRecord = std::variant<CatenoidSolution, SigmaSequence, HyperbolaWindow, ParabolaOrbit>;

// Dispatches on the record type; the catenoid window starts at n_min.
Embedding embed(EmbedModel model, const SolutionRecord& record, int dim);

// Residual matching the model: wz for catenoid and Enneper, hym otherwise
// (eps taken from the record).
ResidualReport embedding_residual(const Embedding& e, const SolutionRecord& record, int margin);

}  // namespace qms
