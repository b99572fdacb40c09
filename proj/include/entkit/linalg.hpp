// Dense complex Hermitian matrix core: tensor-factor bookkeeping, partial
// transpose/trace, eigendecomposition and the norms everything else consumes.
#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace entkit {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds shared across the library. Values are relative to
/// the Frobenius norm of the operand unless noted otherwise.
struct Tolerances {
  double hermiticity = 1e-12;
  double eig_reconstruction = 1e-10;
  double psd = 1e-12;            // eigenvalue floor for positivity checks
  double trace_preservation = 1e-10;
  double support = 1e-12;        // absolute eigenvalue threshold for support/rank
  double schmidt_zero = 1e-14;   // SVD noise floor for Schmidt rank
  double duality = 1e-10;
  double separability = 1e-10;
  double dd_switch = 1e-7;       // divided-difference coincidence switch, relative
};

const Tolerances& default_tols();

/// Mixed-radix index arithmetic for a list of tensor-factor dimensions.
class FactorIndexer {
 public:
  explicit FactorIndexer(std::vector<int> dims);

  int side() const { return side_; }
  int factor_count() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }

  void unrank(int linear, std::span<int> multi) const;
  int rank(std::span<const int> multi) const;

 private:
  std::vector<int> dims_;
  std::vector<int> strides_;
  int side_ = 1;
};

/// Dense complex square matrix with declared tensor-factor dimensions.
/// Construction validates Hermiticity (max-abs deviation from the conjugate
/// transpose at most tol.hermiticity * Frobenius norm) and stores the
/// Hermitian part, so downstream arithmetic never accumulates asymmetry.
class HermitianOperator {
 public:
  HermitianOperator(Matrix data, std::vector<int> dims,
                    const Tolerances& tol = default_tols());

  const Matrix& mat() const { return mat_; }
  const std::vector<int>& dims() const { return dims_; }
  int side() const { return static_cast<int>(mat_.rows()); }
  int factor_count() const { return static_cast<int>(dims_.size()); }

  double trace() const { return mat_.trace().real(); }

  HermitianOperator with_dims(std::vector<int> dims) const;

 private:
  Matrix mat_;
  std::vector<int> dims_;
};

/// Eigendecomposition of a Hermitian operator: eigenvalues sorted
/// descending, matching eigenvectors as the columns of `unitary`.
struct Spectrum {
  RealVector eigenvalues;
  Matrix unitary;
};

Matrix kron(const Matrix& a, const Matrix& b);
HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);

/// Transposes the listed tensor factors in the computational basis.
HermitianOperator partial_transpose(const HermitianOperator& x,
                                    std::span<const int> factors);
HermitianOperator partial_transpose(const HermitianOperator& x, int factor);

/// Traces out every factor not listed in `keep` (given ascending).
HermitianOperator partial_trace(const HermitianOperator& x,
                                std::span<const int> keep);

/// Reorders tensor factors: factor j of the result is factor perm[j] of the
/// input.
HermitianOperator permute_factors(const HermitianOperator& x,
                                  std::span<const int> perm);
Matrix permute_factors(const Matrix& x, std::span<const int> dims,
                       std::span<const int> perm);

Spectrum eig_hermitian(const HermitianOperator& a);

double trace_norm(const HermitianOperator& a);
double frobenius_norm(const Matrix& a);
double min_eigenvalue(const HermitianOperator& a);
double operator_norm(const HermitianOperator& a);

/// f(A) through the spectral theorem, keeping only eigenvalues above
/// `support_tol` (pseudo-function on the support).
Matrix spectral_apply(const Spectrum& s, double (*f)(double),
                      double support_tol);
Matrix matrix_power_on_support(const HermitianOperator& a, double exponent,
                               double support_tol = default_tols().support);

/// Projector onto the span of eigenvectors with eigenvalue > support_tol.
Matrix support_projector(const HermitianOperator& a,
                         double support_tol = default_tols().support);

bool is_psd(const HermitianOperator& a, double tol_scale = 1.0);

}  // namespace entkit
