// Entanglement measures: Renyi entropies of entanglement, robustness,
// negativity, Renyi relative entropies, and the closed-form optimizer for
// the relative entropies of entanglement of pure states.
#pragma once

#include <limits>

#include "entkit/linalg.hpp"
#include "entkit/separability.hpp"
#include "entkit/states.hpp"

namespace entkit {

/// Extended real with an explicit +infinity tag (never a float overflow).
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal inf() { return {0.0, true}; }
  bool is_inf() const { return infinite; }
  double as_double() const {
    return infinite ? std::numeric_limits<double>::infinity() : value;
  }
};

/// Renyi entropy H_alpha of a Schmidt vector, in bits. alpha may be 0, 1 or
/// +infinity; every other nonnegative value uses log2(sum lambda^alpha)/(1-alpha).
double renyi_entropy(const SchmidtVector& lambda, double alpha);

/// (sum_i sqrt(lambda_i))^2 - 1; satisfies E_{1/2} = log2(R + 1).
double robustness_pure(const SchmidtVector& lambda);

/// (||rho^Gamma||_1 - 1)/2; zero on PPT states.
double negativity(const HermitianOperator& rho, const Bipartition& bip);

/// Renyi alpha-relative entropy in bits, with the support condition
/// supp(rho) within supp(sigma) decided by eigenvalue threshold; +infinity
/// when the condition fails and alpha >= 1.
ExtendedReal renyi_relative_entropy(const HermitianOperator& rho,
                                    const HermitianOperator& sigma,
                                    double alpha);

/// Closed form for the Renyi alpha-relative entropy of entanglement of a
/// pure state: equals E_{1/alpha} for alpha in [0,2], with -log2(lambda_1)
/// at alpha = 0.
double relative_entropy_of_entanglement_pure(const SchmidtVector& lambda,
                                             double alpha);

/// The separable minimizer sigma = sum_i lambda_i^{1/alpha} |ii><ii| / N
/// achieving S_alpha(psi || sigma) = E_{1/alpha}(psi), for alpha in (0,2].
HermitianOperator optimal_sigma_alpha(const SchmidtVector& lambda,
                                      double alpha);

}  // namespace entkit
