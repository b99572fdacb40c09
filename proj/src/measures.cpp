#include "entkit/measures.hpp"

#include <cmath>

namespace entkit {

namespace {
constexpr double kLn2 = 0.6931471805599453;

double log2_safe(double x) { return std::log(x) / kLn2; }
}  // namespace

double renyi_entropy(const SchmidtVector& lambda, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  if (alpha == 0.0) return log2_safe(double(lambda.rank()));
  if (std::isinf(alpha)) return -log2_safe(lambda[0]);
  if (alpha == 1.0) {
    double h = 0.0;
    for (double l : lambda.coefficients)
      if (l > 0.0) h -= l * log2_safe(l);
    return h;
  }
  double s = 0.0;
  for (double l : lambda.coefficients)
    if (l > 0.0) s += std::pow(l, alpha);
  return log2_safe(s) / (1.0 - alpha);
}

double robustness_pure(const SchmidtVector& lambda) {
  double root_sum = 0.0;
  for (double l : lambda.coefficients) root_sum += std::sqrt(l);
  return root_sum * root_sum - 1.0;
}

double negativity(const HermitianOperator& rho, const Bipartition& bip) {
  const HermitianOperator pt = partial_transpose(rho, bip.a_factors);
  return 0.5 * (trace_norm(pt) - 1.0);
}

ExtendedReal renyi_relative_entropy(const HermitianOperator& rho,
                                    const HermitianOperator& sigma,
                                    double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  const double support_tol = default_tols().support;
  const int n = rho.side();
  if (sigma.side() != n)
    throw std::invalid_argument("operators must share one space");

  const Matrix pi_sigma = support_projector(sigma, support_tol);
  const double leakage =
      ((Matrix::Identity(n, n) - pi_sigma) * rho.mat()).trace().real();
  const bool support_ok = leakage <= 1e-12;

  if (alpha == 1.0) {
    if (!support_ok) return ExtendedReal::inf();
    const Spectrum sr = eig_hermitian(rho);
    double tr_rho_log_rho = 0.0;
    for (int i = 0; i < n; ++i)
      if (sr.eigenvalues(i) > support_tol)
        tr_rho_log_rho += sr.eigenvalues(i) * log2_safe(sr.eigenvalues(i));
    const Spectrum ss = eig_hermitian(sigma);
    double tr_rho_log_sigma = 0.0;
    for (int i = 0; i < n; ++i)
      if (ss.eigenvalues(i) > support_tol) {
        const Vector u = ss.unitary.col(i);
        const double overlap = (u.adjoint() * rho.mat() * u).value().real();
        tr_rho_log_sigma += overlap * log2_safe(ss.eigenvalues(i));
      }
    return ExtendedReal::finite(tr_rho_log_rho - tr_rho_log_sigma);
  }

  if (!support_ok && alpha > 1.0) return ExtendedReal::inf();

  const Matrix rho_a = matrix_power_on_support(rho, alpha, support_tol);
  const Matrix sigma_b =
      matrix_power_on_support(sigma, 1.0 - alpha, support_tol);
  const double overlap = (rho_a * sigma_b).trace().real();
  if (overlap <= 0.0) return ExtendedReal::inf();
  return ExtendedReal::finite(log2_safe(overlap) / (alpha - 1.0));
}

double relative_entropy_of_entanglement_pure(const SchmidtVector& lambda,
                                             double alpha) {
  if (alpha < 0.0 || alpha > 2.0)
    throw std::invalid_argument("closed form holds for alpha in [0, 2]");
  if (alpha == 0.0) return -std::log2(lambda[0]);
  return renyi_entropy(lambda, 1.0 / alpha);
}

HermitianOperator optimal_sigma_alpha(const SchmidtVector& lambda,
                                      double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument(
        "separable minimizer defined for alpha in (0, 2]");
  const int d = lambda.rank();
  double norm = 0.0;
  for (int i = 0; i < d; ++i) norm += std::pow(lambda[i], 1.0 / alpha);
  Matrix sigma = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    sigma(i * d + i, i * d + i) = std::pow(lambda[i], 1.0 / alpha) / norm;
  return HermitianOperator(std::move(sigma), {d, d});
}

}  // namespace entkit
