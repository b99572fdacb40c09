#include "entkit/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entkit {

namespace {

std::vector<int> b_factors_of(const std::vector<int>& dims,
                              const Bipartition& bip) {
  std::vector<bool> on_a(dims.size(), false);
  for (int f : bip.a_factors) {
    if (f < 0 || f >= static_cast<int>(dims.size()))
      throw std::out_of_range("bipartition factor index out of range");
    on_a[f] = true;
  }
  std::vector<int> b;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (!on_a[k]) b.push_back(k);
  return b;
}

}  // namespace

std::pair<int, int> side_dims(const std::vector<int>& dims,
                              const Bipartition& bip) {
  const std::vector<int> b = b_factors_of(dims, bip);
  int da = 1, db = 1;
  for (int f : bip.a_factors) da *= dims[f];
  for (int f : b) db *= dims[f];
  return {da, db};
}

PptResult ppt_test(const HermitianOperator& rho, const Bipartition& bip) {
  const HermitianOperator pt = partial_transpose(rho, bip.a_factors);
  const double lo = min_eigenvalue(pt);
  const double scale = std::max(1.0, frobenius_norm(rho.mat()));
  SeparabilityVerdict v;
  v.value = lo;
  if (lo < -default_tols().separability * scale) {
    v.status = SepStatus::EntangledCertified;
    v.evidence = "negative partial-transpose eigenvalue";
    return {lo, v};
  }
  auto [da, db] = side_dims(rho.dims(), bip);
  if (da > db) std::swap(da, db);
  if ((da == 2 && db == 2) || (da == 2 && db == 3)) {
    v.status = SepStatus::SeparableCertified;
    v.evidence = "PPT is decisive on 2x2 and 2x3";
  } else {
    v.status = SepStatus::Undecided;
    v.evidence = "PPT is only necessary at these dimensions";
  }
  return {lo, v};
}

SeparabilityVerdict gurvits_ball(const HermitianOperator& rho) {
  const int n = rho.side();
  const Matrix delta = double(n) * rho.mat() - Matrix::Identity(n, n);
  const double norm = frobenius_norm(delta);
  SeparabilityVerdict v;
  v.value = norm;
  if (norm <= 1.0 + 1e-12) {
    v.status = SepStatus::SeparableCertified;
    v.evidence = "inside the Frobenius separable ball";
  } else {
    v.status = SepStatus::Undecided;
    v.evidence = "outside the Frobenius separable ball";
  }
  return v;
}

double pure_plus_noise_threshold(const SchmidtVector& lambda, int d) {
  if (lambda.rank() < 2) return std::numeric_limits<double>::infinity();
  return double(d) * d * std::sqrt(lambda[0] * lambda[1]);
}

bool bell_diagonal_entangled(const std::vector<double>& weights) {
  if (weights.size() != 4)
    throw std::invalid_argument("four Bell weights expected");
  double total = 0.0, top = 0.0;
  for (double w : weights) {
    if (w < -1e-12) throw std::invalid_argument("weights must be nonnegative");
    total += w;
    top = std::max(top, w);
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("weights must sum to one");
  return top > 0.5;
}

Witness witness_from_npt(const HermitianOperator& rho, const Bipartition& bip) {
  const HermitianOperator pt = partial_transpose(rho, bip.a_factors);
  const Spectrum s = eig_hermitian(pt);
  const int n = rho.side();
  const double lo = s.eigenvalues(n - 1);
  const double scale = std::max(1.0, frobenius_norm(rho.mat()));
  if (lo >= -default_tols().separability * scale)
    throw std::domain_error("state is PPT; no witness of this form exists");
  const Vector eta = s.unitary.col(n - 1);
  HermitianOperator proj(eta * eta.adjoint(), rho.dims());
  return Witness{partial_transpose(proj, bip.a_factors), bip};
}

double max_sep_overlap_pure(const PureState& psi,
                            std::span<const int> a_factors) {
  return schmidt(psi, a_factors).coefficients[0];
}

double max_sep_overlap_pure(const PureState& psi) {
  const int a[1] = {0};
  return max_sep_overlap_pure(psi, a);
}

RobustnessSigma robustness_sigma_star(const SchmidtVector& lambda) {
  const int d = lambda.rank();
  if (d < 2)
    throw std::domain_error("robustness noise needs Schmidt rank >= 2");
  double root_sum = 0.0;
  for (int i = 0; i < d; ++i) root_sum += std::sqrt(lambda[i]);
  const double r = root_sum * root_sum - 1.0;

  Matrix sigma = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      sigma(i * d + j, i * d + j) = std::sqrt(lambda[i] * lambda[j]) / r;
    }

  // Certificate: averaging the product vectors
  //   (sum_i lambda_i^{1/4} w^{t_i} |i>) x (sum_j lambda_j^{1/4} w^{-t_j} |j>)
  // over all fourth-root-of-unity tuples t reproduces psi + R sigma*.
  const Cplx w(0.0, 1.0);
  Matrix avg = Matrix::Zero(d * d, d * d);
  int terms = 0;
  std::vector<int> t(d, 0);
  std::vector<Cplx> quarter(d);
  for (int i = 0; i < d; ++i) quarter[i] = std::pow(lambda[i], 0.25);
  while (true) {
    Vector v(d * d);
    for (int i = 0; i < d; ++i) {
      const Cplx ai = quarter[i] * std::pow(w, t[i]);
      for (int j = 0; j < d; ++j)
        v(i * d + j) = ai * quarter[j] * std::conj(std::pow(w, t[j]));
    }
    avg += v * v.adjoint();
    ++terms;
    int k = d - 1;
    while (k >= 0 && t[k] == 3) t[k--] = 0;
    if (k < 0) break;
    ++t[k];
  }
  avg /= double(terms);

  const PureState psi = pure_from_schmidt(lambda);
  const Matrix target = psi.density().mat() + r * sigma;
  RobustnessCertificate cert;
  cert.robustness = r;
  cert.decomposition_residual = frobenius_norm(avg - target);
  cert.product_terms = terms;
  if (cert.decomposition_residual > 1e-10)
    throw std::runtime_error(
        "phase-average certificate failed to reproduce psi + R sigma*");
  return RobustnessSigma{HermitianOperator(std::move(sigma), {d, d}), cert};
}

double ccnr_value(const HermitianOperator& rho, const Bipartition& bip) {
  const std::vector<int> b = b_factors_of(rho.dims(), bip);
  std::vector<int> perm = bip.a_factors;
  perm.insert(perm.end(), b.begin(), b.end());
  const Matrix m = permute_factors(rho.mat(), rho.dims(), perm);
  auto [da, db] = side_dims(rho.dims(), bip);
  Matrix realigned(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l)
          realigned(i * da + j, k * db + l) = m(i * db + k, j * db + l);
  Eigen::JacobiSVD<Matrix> svd(realigned);
  return svd.singularValues().sum();
}

namespace {

/// Detects spectra of the form p psi + (1-p) I/n (one leading eigenvector,
/// flat remainder) and applies the closed-form separability threshold.
SeparabilityVerdict pure_plus_noise_closed_form(const HermitianOperator& rho,
                                                const Bipartition& bip) {
  SeparabilityVerdict v;
  const int n = rho.side();
  if (n < 4) return v;
  const Spectrum s = eig_hermitian(rho);
  const double rest = s.eigenvalues(1);
  for (int i = 2; i < n; ++i)
    if (std::abs(s.eigenvalues(i) - rest) > 1e-11) return v;
  const double p = s.eigenvalues(0) - rest;
  if (p < 1e-11) return v;  // fully mixed; Gurvits already decides
  if (std::abs(rest * n + p - 1.0) > 1e-10) return v;
  PureState psi(s.unitary.col(0), rho.dims());
  const auto sd = schmidt(psi, bip.a_factors);
  if (sd.coefficients.rank() < 2) return v;
  auto [da, db] = side_dims(rho.dims(), bip);
  if (da != db) return v;  // closed form is for d x d with I/d^2 noise
  const double t = pure_plus_noise_threshold(sd.coefficients, da);
  v.value = p * (1.0 + t);
  if (p <= 1.0 / (1.0 + t) + 1e-12) {
    v.status = SepStatus::SeparableCertified;
    v.evidence = "pure-plus-noise closed form";
  }
  return v;
}

}  // namespace

SeparabilityVerdict certify(const HermitianOperator& rho,
                            const Bipartition& bip) {
  SeparabilityVerdict g = gurvits_ball(rho);
  if (g.status == SepStatus::SeparableCertified) return g;

  SeparabilityVerdict noise = pure_plus_noise_closed_form(rho, bip);
  if (noise.status == SepStatus::SeparableCertified) return noise;

  const PptResult ppt = ppt_test(rho, bip);
  if (ppt.verdict.status != SepStatus::Undecided) return ppt.verdict;

  const double ccnr = ccnr_value(rho, bip);
  if (ccnr > 1.0 + 1e-9) {
    SeparabilityVerdict v;
    v.status = SepStatus::EntangledCertified;
    v.evidence = "realignment value above one";
    v.value = ccnr;
    return v;
  }
  SeparabilityVerdict v;
  v.evidence = "no certificate applies";
  v.value = ppt.min_eigenvalue;
  return v;
}

}  // namespace entkit
