// Divided differences, the Hadamard-product mapping they induce in an
// eigenbasis, and directional derivatives of trace functionals on positive
// semidefinite matrices, including the stationarity test for the separable
// minimizers of the Renyi relative entropies.
#pragma once

#include "entkit/linalg.hpp"
#include "entkit/states.hpp"

namespace entkit {

/// Scalar function on (0, infinity), either log or a real power. Powers
/// x^r with r > -1 satisfy lim t f(t) = 0 at the origin; r = -1 does not,
/// and the derivative formula only lower-bounds in that case.
class ScalarFunction {
 public:
  static ScalarFunction log();
  static ScalarFunction power(double r);

  double value(double x) const;
  double deriv(double x) const;

  bool admissible() const;        // lim_{t -> 0+} t f(t) = 0
  bool lower_bound_only() const;  // power(-1)
  bool is_log() const { return tag_ == Tag::kLog; }
  double exponent() const;

 private:
  enum class Tag { kLog, kPower };
  ScalarFunction(Tag tag, double r) : tag_(tag), r_(r) {}
  Tag tag_;
  double r_;
};

/// First-order divided difference f^[1](x, y) for x, y > 0, switching to
/// f'((x+y)/2) when |x - y| falls below a relative threshold.
double divided_difference(const ScalarFunction& f, double x, double y,
                          const Tolerances& tol = default_tols());

/// Matrix of divided differences over an eigenvalue list (descending),
/// zeroed at any index pair touching a zero eigenvalue.
Eigen::MatrixXd divided_difference_matrix(
    const ScalarFunction& f, const RealVector& eigenvalues,
    double support_tol = default_tols().support);

/// The linear mapping B -> U (D_{f,A} o (U^dag B U)) U^dag in an eigenbasis
/// of PSD A; equals the Frechet derivative of f at A when A is positive
/// definite.
Matrix phi_map(const ScalarFunction& f, const HermitianOperator& a,
               const Matrix& b);
Matrix phi_map_from(const ScalarFunction& f, const Spectrum& spectrum,
                    const Matrix& b,
                    double support_tol = default_tols().support);

struct DerivativeValue {
  double value = 0.0;
  bool lower_bound_only = false;  // power(-1) off-support semantics
};

/// d/dt Tr(P f(A + tB)) at t = 0+, requiring supp(P) within supp(A) and
/// A + tB PSD for small positive t (probed at t = 1e-8).
DerivativeValue directional_derivative(const HermitianOperator& p,
                                       const ScalarFunction& f,
                                       const HermitianOperator& a,
                                       const HermitianOperator& b);

/// d/dt S_alpha(psi || (1-t) sigma + t sigma') at t = 0+, in bits:
/// (1 - <psi| Phi_{f_alpha, sigma}(sigma') |psi> /
///  ((1 - alpha) <psi| sigma^{1-alpha} |psi>)) / ln 2.
/// Lower bound only at alpha = 2.
DerivativeValue optimality_derivative(const PureState& psi,
                                      const HermitianOperator& sigma,
                                      const HermitianOperator& sigma_prime,
                                      double alpha);

/// Same stationarity derivative evaluated in the Schmidt basis for many
/// product directions at once: sigma is the closed-form diagonal minimizer
/// for lambda, directions are |uv><uv| with per-party coefficient vectors.
class OptimalityDerivativeSweep {
 public:
  OptimalityDerivativeSweep(const SchmidtVector& lambda, double alpha);

  double at_product_direction(const Vector& u, const Vector& v) const;
  bool lower_bound_only() const { return lower_bound_only_; }

 private:
  int d_;
  double alpha_;
  bool lower_bound_only_;
  RealVector sqrt_lambda_;
  Eigen::MatrixXd dd_;   // divided differences over sigma's eigenvalues
  double norm_;          // <psi| sigma^{1-alpha} |psi>
};

}  // namespace entkit
