// Builders for the theorem-specific channels: each returns the channel (and
// two-branch form when applicable) together with the named numeric side
// conditions that certify the construction, so callers can re-verify rather
// than trust the builder.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entkit/channels.hpp"
#include "entkit/separability.hpp"
#include "entkit/states.hpp"

namespace entkit {

/// Thrown when a builder's hypothesis fails (e.g. a robustness budget is
/// exceeded); distinct from invalid arguments so callers can probe the
/// boundary.
class construction_refused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SideCondition {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", "=="
  double tolerance = 0.0;
  bool pass = false;
};

SideCondition make_side(std::string name, double value, std::string relation,
                        double bound, double tolerance);

struct ConstructionResult {
  Channel channel;
  std::optional<TwoBranch> two_branch;
  std::vector<SideCondition> side_conditions;
  std::string claim;

  bool valid() const;
  const SideCondition& side(const std::string& name) const;
};

/// Non-entangling channel mapping phi^+_k to the pure state with Schmidt
/// vector lambda, built from the optimal robustness noise; refuses when
/// R(psi) exceeds k - 1 (the conversion is impossible beyond that budget).
ConstructionResult thm_maxent_to_pure(int k, const SchmidtVector& lambda,
                                      std::uint64_t seed = 1,
                                      int n_samples = 200);

/// Non-entangling channel mapping psi to phi whenever
/// 1 + R(phi) <= 1 / lambda_1(psi); refuses otherwise (the condition is
/// sufficient only).
ConstructionResult thm_pure_to_pure(const SchmidtVector& lambda_in,
                                    const SchmidtVector& lambda_out,
                                    std::uint64_t seed = 1,
                                    int n_samples = 200);

/// Dually non-entangling channel raising Schmidt rank k -> d, built from
/// the Schmidt vectors with delta = d^-4 and epsilon = d^-12.
ConstructionResult thm_dne_schmidt(int k, int d, std::uint64_t seed = 1,
                                   int n_samples = 200);

/// Two-qubit channel that is non-entangling in one copy while two copies
/// acting on the four-qubit Bell-mixture state produce an NPT output.
ConstructionResult superactivation(std::uint64_t seed = 1,
                                   int n_samples = 10000);

/// Dually non-entangling channel from a Frobenius-normalized witness:
/// A = (W + 2I)/3, outputs mixtures of I/4 and phi^+_2.
ConstructionResult witness_channel(const Witness& w, std::uint64_t seed = 1,
                                   int n_samples = 200);

/// PPT-preserving (but not PPT) channel that raises the negativity of the
/// most entangled Werner state by the factor (d-1)/2.
ConstructionResult ppt_preserving_negativity_channel(int d,
                                                     std::uint64_t seed = 1,
                                                     int n_samples = 100);

/// Two local basis indices per side, spanning the two-qubit subspace onto
/// which witnesses are projected.
struct TwoQubitSubspace {
  std::array<int, 2> a_basis{0, 1};
  std::array<int, 2> b_basis{0, 1};
};

struct UndetectedConversionResult {
  bool found = false;
  std::optional<Channel> channel;
  std::optional<HermitianOperator> rho;  // two-qubit output state, embedded
  double negativity = 0.0;
  std::vector<double> witness_traces;
  std::uint64_t seed = 0;
};

/// Searches for a two-qubit entangled state undetected by the projected
/// partial traces of the given Choi-space witnesses and wraps it into the
/// constant channel X -> Tr(X) rho. A miss after the search budget means
/// the search failed, not that no such state exists.
UndetectedConversionResult undetected_conversion(
    const std::vector<Witness>& witnesses, int n_out_factors,
    const TwoQubitSubspace& subspace, std::uint64_t seed = 1,
    int n_restarts = 32);

struct StochasticOmegaResult {
  HermitianOperator omega;
  Channel map;  // completely positive, generally not trace preserving
  Vector psi_perp;
  bool computational_perp = false;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> witness_traces;
  double output_fidelity = 0.0;
};

/// Builds the positive operator Omega whose induced map sends psi exactly
/// to psi_hat while every listed witness evaluates nonnegatively on Omega.
/// Witnesses act on the (out, in) factor ordering of the map's Choi space.
StochasticOmegaResult stochastic_omega(
    const std::vector<HermitianOperator>& witnesses, const PureState& psi,
    const PureState& psi_hat, std::uint64_t seed = 1, int sample_budget = 4000);

/// Werner-based map that is k-non-entangling but not (k+1)-non-entangling
/// for beta in ((d-k-1)/(k+1), (d-k)/k].
ConstructionResult k_ne_channel(int d, int k, double beta,
                                std::uint64_t seed = 1, int n_samples = 300);

enum class KneVerdict { NotKNonEntangling, UndecidedPassed };

struct KneSampleResult {
  KneVerdict verdict = KneVerdict::UndecidedPassed;
  double worst_value = 0.0;  // most negative PT eigenvalue (or CCNR excess)
  int violations = 0;
  std::string evidence;
};

/// Samples k-dimensional co-isometry pairs (plus deterministic adversarial
/// ones) and certifies the projected Choi blocks; a single certified
/// entangled block refutes k-non-entanglement, while a clean sweep is only
/// "undecided-passed" since sampling cannot prove the universal claim.
KneSampleResult k_ne_sampled_test(
    const Channel& ch, int k, int n_samples, std::uint64_t seed,
    const std::vector<std::pair<Matrix, Matrix>>& extra_pairs = {});

}  // namespace entkit
