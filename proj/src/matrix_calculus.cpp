#include "entkit/matrix_calculus.hpp"

#include <cmath>

namespace entkit {

namespace {
constexpr double kLn2 = 0.6931471805599453;
}

ScalarFunction ScalarFunction::log() { return ScalarFunction(Tag::kLog, 0.0); }

ScalarFunction ScalarFunction::power(double r) {
  return ScalarFunction(Tag::kPower, r);
}

double ScalarFunction::value(double x) const {
  if (x <= 0.0) throw std::domain_error("scalar function domain is (0, inf)");
  return tag_ == Tag::kLog ? std::log(x) : std::pow(x, r_);
}

double ScalarFunction::deriv(double x) const {
  if (x <= 0.0) throw std::domain_error("scalar function domain is (0, inf)");
  return tag_ == Tag::kLog ? 1.0 / x : r_ * std::pow(x, r_ - 1.0);
}

bool ScalarFunction::admissible() const {
  return tag_ == Tag::kLog || r_ > -1.0;
}

bool ScalarFunction::lower_bound_only() const {
  return tag_ == Tag::kPower && r_ == -1.0;
}

double ScalarFunction::exponent() const {
  if (tag_ != Tag::kPower)
    throw std::logic_error("exponent only defined for power functions");
  return r_;
}

double divided_difference(const ScalarFunction& f, double x, double y,
                          const Tolerances& tol) {
  if (x <= 0.0 || y <= 0.0)
    throw std::domain_error("divided differences need positive arguments");
  if (std::abs(x - y) < tol.dd_switch * std::max(x, y))
    return f.deriv(0.5 * (x + y));
  // The naive quotient loses roughly half the significant digits near
  // coincidence; expm1/log1p forms keep the shared small parameter in
  // numerator and denominator so the cancellation error drops out.
  if (f.is_log()) {
    const double u = (x - y) / y;
    return std::log1p(u) / (u * y);
  }
  const double r = f.exponent();
  const double t = std::log(y / x);
  if (std::abs(t) > 0.5) return (f.value(x) - f.value(y)) / (x - y);
  return std::pow(x, r - 1.0) * std::expm1(r * t) / std::expm1(t);
}

Eigen::MatrixXd divided_difference_matrix(const ScalarFunction& f,
                                          const RealVector& eigenvalues,
                                          double support_tol) {
  const int n = static_cast<int>(eigenvalues.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (eigenvalues(i) <= support_tol) continue;
    for (int j = 0; j < n; ++j) {
      if (eigenvalues(j) <= support_tol) continue;
      d(i, j) = divided_difference(f, eigenvalues(i), eigenvalues(j));
    }
  }
  return d;
}

Matrix phi_map_from(const ScalarFunction& f, const Spectrum& spectrum,
                    const Matrix& b, double support_tol) {
  const Eigen::MatrixXd d =
      divided_difference_matrix(f, spectrum.eigenvalues, support_tol);
  const Matrix bt = spectrum.unitary.adjoint() * b * spectrum.unitary;
  const Matrix mixed = d.cast<Cplx>().cwiseProduct(bt);
  return spectrum.unitary * mixed * spectrum.unitary.adjoint();
}

Matrix phi_map(const ScalarFunction& f, const HermitianOperator& a,
               const Matrix& b) {
  const Spectrum s = eig_hermitian(a);
  const double scale = std::max(1.0, frobenius_norm(a.mat()));
  if (s.eigenvalues.minCoeff() < -default_tols().psd * scale)
    throw std::domain_error("phi_map requires a PSD base point");
  return phi_map_from(f, s, b);
}

DerivativeValue directional_derivative(const HermitianOperator& p,
                                       const ScalarFunction& f,
                                       const HermitianOperator& a,
                                       const HermitianOperator& b) {
  if (!f.admissible() && !f.lower_bound_only())
    throw std::domain_error("function does not admit directional derivatives");
  const int n = a.side();
  const Matrix pi = support_projector(a);
  const double leakage =
      ((Matrix::Identity(n, n) - pi) * p.mat()).trace().real();
  if (leakage > 1e-12 * std::max(1.0, p.trace()))
    throw std::domain_error("supp(P) must lie within supp(A)");
  const double t_probe = 1e-8;
  const HermitianOperator probe(a.mat() + t_probe * b.mat(), a.dims());
  const double scale =
      std::max(1.0, frobenius_norm(a.mat()) + frobenius_norm(b.mat()));
  if (min_eigenvalue(probe) < -1e-10 * scale)
    throw std::domain_error("A + tB must stay PSD for small positive t");
  const Matrix phi = phi_map(f, a, b.mat());
  return DerivativeValue{(p.mat() * phi).trace().real(),
                         f.lower_bound_only()};
}

DerivativeValue optimality_derivative(const PureState& psi,
                                      const HermitianOperator& sigma,
                                      const HermitianOperator& sigma_prime,
                                      double alpha) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument(
        "stationarity derivative defined for alpha in (0, 2]");
  const int n = sigma.side();
  if (psi.dim() != n || sigma_prime.side() != n)
    throw std::invalid_argument("psi, sigma, sigma' must share one space");
  const Matrix pi = support_projector(sigma);
  const Vector leak = (Matrix::Identity(n, n) - pi) * psi.amplitudes;
  if (leak.squaredNorm() > 1e-12)
    throw std::domain_error("supp(psi) must lie within supp(sigma)");
  // At alpha = 1 the functional is -<psi| log sigma |psi> and the same
  // chain applies with f = log and unit normalization.
  const ScalarFunction f = alpha == 1.0 ? ScalarFunction::log()
                                        : ScalarFunction::power(1.0 - alpha);
  double norm = 1.0;
  double prefactor = 1.0;
  if (alpha != 1.0) {
    const Matrix pow = matrix_power_on_support(sigma, 1.0 - alpha);
    norm = (psi.amplitudes.adjoint() * pow * psi.amplitudes).value().real();
    prefactor = 1.0 - alpha;
  }
  const Matrix phi = phi_map(f, sigma, sigma_prime.mat());
  const double overlap =
      (psi.amplitudes.adjoint() * phi * psi.amplitudes).value().real();
  const double nats = 1.0 - overlap / (prefactor * norm);
  return DerivativeValue{nats / kLn2, alpha == 2.0};
}

OptimalityDerivativeSweep::OptimalityDerivativeSweep(
    const SchmidtVector& lambda, double alpha)
    : d_(lambda.rank()), alpha_(alpha), lower_bound_only_(alpha == 2.0) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument(
        "stationarity derivative defined for alpha in (0, 2]");
  const ScalarFunction f = alpha == 1.0 ? ScalarFunction::log()
                                        : ScalarFunction::power(1.0 - alpha);
  double nl = 0.0;
  for (int i = 0; i < d_; ++i) nl += std::pow(lambda[i], 1.0 / alpha);
  RealVector sig_eigs(d_);
  sqrt_lambda_ = RealVector(d_);
  for (int i = 0; i < d_; ++i) {
    sig_eigs(i) = std::pow(lambda[i], 1.0 / alpha) / nl;
    sqrt_lambda_(i) = std::sqrt(lambda[i]);
  }
  dd_ = divided_difference_matrix(f, sig_eigs, 0.0);
  if (alpha == 1.0) {
    norm_ = 1.0;
  } else {
    dd_ /= (1.0 - alpha);
    norm_ = 0.0;
    for (int i = 0; i < d_; ++i)
      norm_ += lambda[i] * std::pow(sig_eigs(i), 1.0 - alpha);
  }
}

double OptimalityDerivativeSweep::at_product_direction(const Vector& u,
                                                       const Vector& v) const {
  if (u.size() != d_ || v.size() != d_)
    throw std::invalid_argument("direction vectors must match the Schmidt rank");
  Vector z(d_);
  for (int i = 0; i < d_; ++i) z(i) = u(i) * v(i);
  double overlap = 0.0;
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      overlap += sqrt_lambda_(i) * sqrt_lambda_(j) * dd_(i, j) *
                 (z(i) * std::conj(z(j))).real();
  const double nats = 1.0 - overlap / norm_;
  return nats / kLn2;
}

}  // namespace entkit
