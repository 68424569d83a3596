#pragma once

// Clock and shift unitaries, the unitary Schild action and its equations of
// motion, and the quantum degree of almost-commuting torus and sphere maps.

#include <vector>

#include "qms/operators.hpp"

namespace qms {

struct UnitaryTuple {
  int dim = 0;
  std::vector<DenseMatrix> mats;
};

// Throws NotUnitary unless every matrix satisfies ||U^dagger U - I||_max <= tol.
UnitaryTuple make_unitary_tuple(std::vector<DenseMatrix> mats, double tol = 1e-12);

// Phi1|k> = |k-1 mod N> and Phi2 = diag(omega^k), omega = exp(2 pi i/N).
// With this orientation Phi1 Phi2 Phi1^-1 Phi2^-1 = omega I, so the degree is +1.
UnitaryTuple clock_shift(int n);

// Phi_i Phi_j Phi_i^-1 Phi_j^-1 (inverses taken as adjoints).
DenseMatrix group_commutator(const DenseMatrix& a, const DenseMatrix& b);

double unitary_schild(const UnitaryTuple& phis);

struct EomResidual {
  std::vector<DenseMatrix> residuals;
  std::vector<double> max_abs_norms;
  double max_norm = 0.0;
};

EomResidual torus_eom_residual(const UnitaryTuple& phis);

struct DegreeReport {
  Complex trace_value;
  int k_estimate = 0;
  double defect = 0.0;            // spectral norm
  double defect_frobenius = 0.0;
  int dim = 0;
  bool bound_satisfied = true;    // torus only: |k| < c/(2 pi) with c = N * defect
};

DegreeReport torus_degree(const DenseMatrix& p1, const DenseMatrix& p2);

// Spin-j generators scaled so X1^2 + X2^2 + X3^2 = I, j = (N-1)/2.
std::vector<DenseMatrix> fuzzy_sphere(int n);

DegreeReport sphere_degree(const DenseMatrix& x1, const DenseMatrix& x2, const DenseMatrix& x3);

// Max over pairs of the spectral norm of [A_i, A_j].
double commutator_defect(const std::vector<DenseMatrix>& mats);

}  // namespace qms
