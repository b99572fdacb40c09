// Separability and entanglement decision procedures: PPT test, Gurvits ball,
// realignment, closed-form thresholds for pure-plus-noise families, witness
// extraction and the optimal robustness noise state with its product
// certificate.
#pragma once

#include <string>
#include <vector>

#include "entkit/linalg.hpp"
#include "entkit/random.hpp"
#include "entkit/states.hpp"

namespace entkit {

/// Factor indices forming the A side of a bipartition; the rest are B.
struct Bipartition {
  std::vector<int> a_factors;
};

/// Hermitian operator with nonnegative trace against every separable state
/// of the recorded bipartition.
struct Witness {
  HermitianOperator op;
  Bipartition bipartition;
};

enum class SepStatus { SeparableCertified, EntangledCertified, Undecided };

struct SeparabilityVerdict {
  SepStatus status = SepStatus::Undecided;
  std::string evidence;
  double value = 0.0;
};

inline const char* to_string(SepStatus s) {
  switch (s) {
    case SepStatus::SeparableCertified: return "SeparableCertified";
    case SepStatus::EntangledCertified: return "EntangledCertified";
    default: return "Undecided";
  }
}

struct PptResult {
  double min_eigenvalue;
  SeparabilityVerdict verdict;
};

/// NPT certifies entanglement; PPT certifies separability only on 2x2 and
/// 2x3 splits, otherwise the verdict is Undecided.
PptResult ppt_test(const HermitianOperator& rho, const Bipartition& bip);

/// Frobenius-ball certificate: with Delta = n rho - I, separable whenever
/// ||Delta||_F <= 1.
SeparabilityVerdict gurvits_ball(const HermitianOperator& rho);

/// Returns t = d^2 sqrt(lambda1 lambda2); the mixture p psi + (1-p) I/d^2
/// is separable exactly when p <= 1/(1+t). Rank-one input returns +inf.
double pure_plus_noise_threshold(const SchmidtVector& lambda, int d);

/// Bell-diagonal two-qubit state is entangled iff its largest weight
/// exceeds one half.
bool bell_diagonal_entangled(const std::vector<double>& weights);

/// W = PT(|eta><eta|) for a negative-eigenvalue eigenvector eta of the
/// partial transpose; unit Frobenius norm and Tr(W rho) < 0.
Witness witness_from_npt(const HermitianOperator& rho, const Bipartition& bip);

/// Largest Schmidt coefficient: the maximum overlap of a bipartite pure
/// state with any separable state.
double max_sep_overlap_pure(const PureState& psi,
                            std::span<const int> a_factors);
double max_sep_overlap_pure(const PureState& psi);

/// Optimal separable noise for a pure state with Schmidt vector lambda:
/// sigma* = (1/R) sum_{i != j} sqrt(lambda_i lambda_j) |ij><ij| with
/// R = (sum_i sqrt(lambda_i))^2 - 1. The certificate is the explicit
/// product-state decomposition of (psi + R sigma*)/(1+R) obtained by
/// averaging fourth-root-of-unity phase tuples; its residual must vanish
/// before the state is used.
struct RobustnessCertificate {
  double robustness = 0.0;          // R
  double decomposition_residual = 0.0;
  int product_terms = 0;
};

struct RobustnessSigma {
  HermitianOperator sigma;
  RobustnessCertificate certificate;
};

RobustnessSigma robustness_sigma_star(const SchmidtVector& lambda);

/// Sum of singular values of the realigned matrix; a value above one
/// certifies entanglement (works for some PPT entangled states).
double ccnr_value(const HermitianOperator& rho, const Bipartition& bip);

/// Certification ladder: Gurvits ball, pure-plus-noise closed form when the
/// spectrum matches that family, PPT (decisive at 2x2 / 2x3), realignment.
/// Anything undetermined stays Undecided.
SeparabilityVerdict certify(const HermitianOperator& rho,
                            const Bipartition& bip);

/// Dimensions of the two sides of a bipartition.
std::pair<int, int> side_dims(const std::vector<int>& dims,
                              const Bipartition& bip);

}  // namespace entkit
