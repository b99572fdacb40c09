// Constructors for the named states used throughout the library and the
// Schmidt-decomposition machinery for bipartite pure states.
#pragma once

#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

/// State vector over a product of parties; unit norm within 1e-12.
struct PureState {
  Vector amplitudes;
  std::vector<int> dims;

  PureState(Vector amps, std::vector<int> dims_);

  HermitianOperator density() const;
  int dim() const { return static_cast<int>(amplitudes.size()); }
};

/// Sorted (descending) nonnegative Schmidt coefficients summing to one.
struct SchmidtVector {
  std::vector<double> coefficients;

  explicit SchmidtVector(std::vector<double> coeffs);

  int rank(double zero_tol = default_tols().schmidt_zero) const;
  double operator[](std::size_t i) const { return coefficients[i]; }
  std::size_t size() const { return coefficients.size(); }
};

struct SchmidtDecomposition {
  SchmidtVector coefficients;
  Matrix a_basis;  // columns: local Schmidt vectors on the A side
  Matrix b_basis;
};

/// |phi^+_d> = sum_i |ii>/sqrt(d) on d x d.
PureState max_entangled(int d);

/// Flip operator F_d = sum_ij |ij><ji|; equals d * PT(phi^+_d).
HermitianOperator flip_operator(int d);

/// Schmidt decomposition across the bipartition whose A side is the listed
/// ascending factor subset; coefficients are squared singular values.
SchmidtDecomposition schmidt(const PureState& psi,
                             std::span<const int> a_factors);
SchmidtDecomposition schmidt(const PureState& psi);  // A = factor 0

/// Werner family rho_d(beta) = (I - ((beta+1)/d) F_d) / (d^2 - (beta+1)),
/// defined for -(d+1) <= beta <= d-1; NPT exactly when beta > 0.
HermitianOperator werner(int d, double beta);

/// Four-qubit equal mixture of Bell-pair products across AB/A'B', stored in
/// factor order (A, B, A', B'). Separable across AA':BB'.
HermitianOperator smolin();

/// a * I/d^2 + (1-a) * phi^+_d.
HermitianOperator isotropic(int d, double a);

/// GHZ_r^(N) = sum_{i<r} |i...i>/sqrt(r) on N parties of local dimension r.
PureState ghz(int parties, int r);

/// (|100> + |010> + |001>)/sqrt(3).
PureState w_state();

/// sum_i sqrt(lambda_i) |ii> on d x d with d = rank(lambda).
PureState pure_from_schmidt(const SchmidtVector& lambda);

Vector basis_ket(int dim, int index);

}  // namespace entkit
