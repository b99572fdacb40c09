#include "entkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "entkit/constructions.hpp"
#include "entkit/matrix_calculus.hpp"
#include "entkit/measures.hpp"
#include "entkit/random.hpp"

namespace entkit {

namespace {

/// Accumulates named comparisons into a CheckResult. A tolerance override
/// from the config replaces every per-comparison tolerance, so tightening
/// --tol genuinely retests everything.
class Checker {
 public:
  Checker(std::string id, std::string claim, const VerifyConfig& cfg,
          double default_tol)
      : cfg_(cfg) {
    r_.check_id = std::move(id);
    r_.claim = std::move(claim);
    r_.seed = cfg.seed;
    r_.tolerance = cfg.tolerance.value_or(default_tol);
    r_.pass = true;
  }

  void param(const std::string& key, const std::string& value) {
    r_.params[key] = value;
  }
  void param(const std::string& key, double value) {
    std::ostringstream os;
    os << value;
    r_.params[key] = os.str();
  }

  double tol(double fallback) const {
    return cfg_.tolerance.value_or(fallback);
  }

  void equals(const std::string& key, double computed, double expected,
              double tolerance) {
    r_.computed[key] = computed;
    r_.expected[key] = expected;
    if (std::abs(computed - expected) > tol(tolerance)) r_.pass = false;
  }
  void at_most(const std::string& key, double computed, double bound,
               double tolerance) {
    r_.computed[key] = computed;
    r_.expected[key] = bound;
    if (computed > bound + tol(tolerance)) r_.pass = false;
  }
  void at_least(const std::string& key, double computed, double bound,
                double tolerance) {
    r_.computed[key] = computed;
    r_.expected[key] = bound;
    if (computed < bound - tol(tolerance)) r_.pass = false;
  }
  void is_true(const std::string& key, bool value) {
    equals(key, value ? 1.0 : 0.0, 1.0, 0.0);
  }

  void construction(const ConstructionResult& res) {
    for (const SideCondition& s : res.side_conditions) {
      r_.computed[s.name] = s.value;
      r_.expected[s.name] = s.bound;
      bool ok;
      const double t = tol(s.tolerance);
      if (s.relation == "<=")
        ok = s.value <= s.bound + t;
      else if (s.relation == ">=")
        ok = s.value >= s.bound - t;
      else
        ok = std::abs(s.value - s.bound) <= t;
      if (!ok) r_.pass = false;
    }
  }

  CheckResult finish() { return std::move(r_); }

 private:
  const VerifyConfig& cfg_;
  CheckResult r_;
};

int samples_or(const VerifyConfig& cfg, int fallback) {
  return cfg.samples.value_or(fallback);
}

// --------------------------------------------------------------------------
// Individual checks.

CheckResult check_flip_pt(const VerifyConfig& cfg) {
  Checker c("linalg.flip-pt",
            "the flip operator is d times the partial transpose of the "
            "maximally entangled state and squares to the identity",
            cfg, 1e-12);
  double worst_pt = 0.0, worst_sq = 0.0;
  for (int d = 2; d <= 4; ++d) {
    const HermitianOperator f = flip_operator(d);
    const HermitianOperator pt =
        partial_transpose(max_entangled(d).density(), 0);
    worst_pt = std::max(worst_pt,
                        frobenius_norm(f.mat() - double(d) * pt.mat()));
    worst_sq = std::max(
        worst_sq, frobenius_norm(f.mat() * f.mat() -
                                 Matrix::Identity(d * d, d * d)));
  }
  c.at_most("flip-equals-scaled-pt", worst_pt, 0.0, 1e-12);
  c.at_most("flip-squares-to-identity", worst_sq, 0.0, 1e-12);
  const Spectrum s = eig_hermitian(flip_operator(2));
  c.equals("f2-top-eigenvalue", s.eigenvalues(0), 1.0, 1e-12);
  c.equals("f2-bottom-eigenvalue", s.eigenvalues(3), -1.0, 1e-12);
  c.equals("f2-trace", flip_operator(2).trace(), 2.0, 1e-12);
  return c.finish();
}

CheckResult check_two_branch(const VerifyConfig& cfg) {
  Checker c("choi.two-branch-roundtrip",
            "applying a measure-and-prepare channel through its Choi matrix "
            "matches the direct formula, and the dual satisfies the duality "
            "identity",
            cfg, 1e-10);
  Rng rng = rng_stream(cfg.seed, "choi.two-branch-roundtrip");
  const int n = samples_or(cfg, 50);
  double worst_apply = 0.0, worst_dual = 0.0, worst_unital = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    // Random effect: compress a random Hermitian into [0, I].
    HermitianOperator g = random_hermitian({2, 2}, rng);
    const Spectrum s = eig_hermitian(g);
    RealVector clipped(4);
    for (int i = 0; i < 4; ++i)
      clipped(i) = 0.5 + 0.5 * std::tanh(s.eigenvalues(i));
    HermitianOperator effect(
        s.unitary * clipped.cast<Cplx>().asDiagonal() * s.unitary.adjoint(),
        {2, 2});
    TwoBranch tb(effect, random_density({2, 2}, rng),
                 random_density({2, 2}, rng));
    Channel ch = choi_of_two_branch(tb);
    const Matrix id = Matrix::Identity(4, 4);
    for (int i = 0; i < n; ++i) {
      const HermitianOperator x = random_density({2, 2}, rng);
      const HermitianOperator via_choi = apply(ch, x);
      const Matrix direct =
          (effect.mat() * x.mat()).trace() * tb.rho1.mat() +
          ((id - effect.mat()) * x.mat()).trace() * tb.rho2.mat();
      worst_apply =
          std::max(worst_apply, frobenius_norm(via_choi.mat() - direct));
      const HermitianOperator y = random_density({2, 2}, rng);
      const double lhs = (via_choi.mat() * y.mat()).trace().real();
      const double rhs =
          (x.mat() * dual_apply(tb, y).mat()).trace().real();
      worst_dual = std::max(worst_dual, std::abs(lhs - rhs));
    }
    const HermitianOperator dual_id =
        dual_apply(tb, HermitianOperator(id, {2, 2}));
    worst_unital = std::max(worst_unital,
                            frobenius_norm(dual_id.mat() - id));
  }
  c.at_most("apply-vs-direct", worst_apply, 0.0, 1e-10);
  c.at_most("duality-identity", worst_dual, 0.0, 1e-10);
  c.at_most("dual-of-identity", worst_unital, 0.0, 1e-10);
  return c.finish();
}

CheckResult check_maxent_to_pure(const VerifyConfig& cfg) {
  Checker c("maxent-to-pure.robustness-iff",
            "the maximally entangled state converts to a pure target under "
            "a non-entangling channel exactly when the target robustness "
            "fits the budget k - 1",
            cfg, 1e-10);
  const SchmidtVector lam({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0});
  const ConstructionResult res =
      thm_maxent_to_pure(2, lam, cfg.seed, samples_or(cfg, 300));
  c.construction(res);
  c.equals("target-schmidt-rank", double(lam.rank()), 3.0, 0.0);
  c.equals("target-robustness", robustness_pure(lam), 1.0, 1e-12);

  bool refused = false;
  try {
    thm_maxent_to_pure(2, SchmidtVector({1.0 / 3, 1.0 / 3, 1.0 / 3}),
                       cfg.seed, 10);
  } catch (const construction_refused&) {
    refused = true;
  }
  c.is_true("refuses-rank-3-maxent-from-k2", refused);

  const ConstructionResult down =
      thm_maxent_to_pure(3, SchmidtVector({0.5, 0.5}), cfg.seed, 50);
  c.is_true("downhill-conversion-valid", down.valid());

  bool over_refused = false;
  try {
    thm_maxent_to_pure(2, SchmidtVector({0.6, 0.2, 0.2}), cfg.seed, 10);
  } catch (const construction_refused&) {
    over_refused = true;
  }
  c.is_true("refuses-above-budget", over_refused);
  return c.finish();
}

CheckResult check_renyi_increase(const VerifyConfig& cfg) {
  Checker c("renyi.increase-below-half",
            "a Schmidt vector with unit half-entropy has strictly larger "
            "alpha-entropies below one half, and the conversion from the "
            "two-qubit maximally entangled state raises the Schmidt rank",
            cfg, 1e-12);
  const SchmidtVector lam({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0});
  c.equals("half-entropy", renyi_entropy(lam, 0.5), 1.0, 1e-12);
  for (double alpha : {0.1, 0.3, 0.45}) {
    std::ostringstream key;
    key << "entropy-margin-alpha-" << alpha;
    c.at_least(key.str(), renyi_entropy(lam, alpha) - 1.0, 1e-6, 0.0);
  }
  const ConstructionResult res =
      thm_maxent_to_pure(2, lam, cfg.seed, samples_or(cfg, 300));
  c.construction(res);
  const HermitianOperator out =
      apply(res.channel, max_entangled(2).density());
  const Spectrum s = eig_hermitian(out);
  const PureState top(s.unitary.col(0), out.dims());
  c.equals("output-schmidt-rank", double(schmidt(top).coefficients.rank()),
           3.0, 0.0);
  return c.finish();
}

CheckResult check_er_alpha(const VerifyConfig& cfg) {
  Checker c("renyi.ER-alpha-equivalence",
            "for pure states the alpha relative entropy against the "
            "closed-form diagonal separable state equals the (1/alpha) "
            "entropy of entanglement, and the state is stationary against "
            "separable directions",
            cfg, 1e-10);
  std::vector<double> alphas = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  if (cfg.alpha) alphas = {*cfg.alpha};
  Rng rng = rng_stream(cfg.seed, "renyi.ER-alpha-equivalence");
  const int n_states = samples_or(cfg, 100);
  const int n_dirs = 1000;
  double max_gap = 0.0;
  double min_deriv = std::numeric_limits<double>::infinity();
  double max_cross = 0.0;
  for (int i = 0; i < n_states; ++i) {
    const int d = 2 + (i % 5);
    const SchmidtVector lam(random_schmidt_coefficients(d, rng));
    const PureState psi = pure_from_schmidt(lam);
    for (double alpha : alphas) {
      const HermitianOperator sigma = optimal_sigma_alpha(lam, alpha);
      const ExtendedReal s =
          renyi_relative_entropy(psi.density(), sigma, alpha);
      const double e = relative_entropy_of_entanglement_pure(lam, alpha);
      max_gap = std::max(max_gap, std::abs(s.as_double() - e));

      const OptimalityDerivativeSweep sweep(lam, alpha);
      for (int t = 0; t < n_dirs; ++t) {
        const Vector u = random_unit_vector(d, rng);
        const Vector v = random_unit_vector(d, rng);
        const double deriv = sweep.at_product_direction(u, v);
        min_deriv = std::min(min_deriv, deriv);
        // Spot-check the fast path against the generic matrix route.
        if (t == 0 && i % 25 == 0) {
          Vector uv(d * d);
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) uv(a * d + b) = u(a) * v(b);
          const HermitianOperator dir(uv * uv.adjoint(), {d, d});
          const double slow =
              optimality_derivative(psi, sigma, dir, alpha).value;
          max_cross = std::max(max_cross, std::abs(slow - deriv));
        }
      }
    }
  }
  c.param("states", double(n_states));
  c.param("directions", double(n_dirs));
  c.at_most("identity-gap", max_gap, 0.0, 1e-10);
  c.at_least("min-stationarity-derivative", min_deriv, 0.0, 1e-9);
  c.at_most("sweep-vs-generic", max_cross, 0.0, 1e-9);
  return c.finish();
}

CheckResult check_max_overlap(const VerifyConfig& cfg) {
  Checker c("sep.max-overlap-schmidt",
            "the maximal overlap of a bipartite pure state with separable "
            "states is its largest Schmidt coefficient",
            cfg, 1e-10);
  Rng rng = rng_stream(cfg.seed, "sep.max-overlap-schmidt");
  for (int k : {2, 3, 4})
    c.equals("maxent-overlap-k" + std::to_string(k),
             max_sep_overlap_pure(max_entangled(k)), 1.0 / k, 1e-12);

  const SchmidtVector lam({0.8, 0.2});
  const PureState psi = pure_from_schmidt(lam);
  const double bound = max_sep_overlap_pure(psi);
  c.equals("claimed-bound", bound, 0.8, 1e-12);
  double sampled_max = 0.0;
  const int n = samples_or(cfg, 10000);
  for (int i = 0; i < n; ++i) {
    const Vector v = random_product_vector(psi.dims, rng);
    const Cplx amp = (v.adjoint() * psi.amplitudes).value();
    sampled_max = std::max(sampled_max, std::norm(amp));
  }
  c.at_most("sampled-overlap", sampled_max, bound, 1e-10);

  // Alternating ascent over product vectors closes the gap to the bound.
  Matrix m(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m(a, b) = psi.amplitudes(a * 2 + b);
  Vector u = random_unit_vector(2, rng);
  Vector v = random_unit_vector(2, rng);
  for (int iter = 0; iter < 60; ++iter) {
    u = m * v.conjugate();
    u /= u.norm();
    v = m.transpose() * u.conjugate();
    v /= v.norm();
  }
  const double refined =
      std::norm((kron(u, v).adjoint() * psi.amplitudes).value());
  c.at_least("refined-overlap-reaches-bound", refined, bound - 1e-3, 0.0);
  c.at_most("refined-overlap-respects-bound", refined, bound, 1e-10);
  return c.finish();
}

CheckResult check_pure_to_pure(const VerifyConfig& cfg) {
  Checker c("pure-to-pure.sufficient",
            "a non-entangling conversion between pure states exists whenever "
            "one plus the target robustness is at most the reciprocal of "
            "the source's largest Schmidt coefficient",
            cfg, 1e-10);
  const ConstructionResult ok = thm_pure_to_pure(
      SchmidtVector({0.5, 0.5}), SchmidtVector({0.7, 0.3}), cfg.seed,
      samples_or(cfg, 200));
  c.construction(ok);

  bool refused = false;
  try {
    thm_pure_to_pure(SchmidtVector({0.9, 0.1}), SchmidtVector({0.5, 0.5}),
                     cfg.seed, 10);
  } catch (const construction_refused&) {
    refused = true;
  }
  c.is_true("refuses-violated-condition", refused);

  // Uniform input reduces to the maximally entangled source case.
  const SchmidtVector lam({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0});
  const ConstructionResult via_uniform =
      thm_pure_to_pure(SchmidtVector({0.5, 0.5}), lam, cfg.seed, 50);
  const ConstructionResult via_maxent =
      thm_maxent_to_pure(2, lam, cfg.seed, 50);
  c.at_most("uniform-matches-maxent-channel",
            frobenius_norm(via_uniform.channel.choi.mat() -
                           via_maxent.channel.choi.mat()),
            0.0, 1e-12);
  return c.finish();
}

CheckResult check_witness_channel(const VerifyConfig& cfg) {
  Checker c("dne.witness-channel",
            "the channel built from a normalized entanglement witness is "
            "dually non-entangling and sends detected states to entangled "
            "two-qubit states",
            cfg, 1e-10);
  const HermitianOperator rho = isotropic(3, 0.5);
  const Witness w = witness_from_npt(rho, Bipartition{{0}});
  c.equals("witness-frobenius-norm", frobenius_norm(w.op.mat()), 1.0, 1e-12);
  c.at_most("witness-detects", (w.op.mat() * rho.mat()).trace().real(),
            -1e-6, 0.0);
  const ConstructionResult res =
      witness_channel(w, cfg.seed, samples_or(cfg, 200));
  c.construction(res);
  const HermitianOperator out = apply(res.channel, rho);
  const double t =
      (max_entangled(2).density().mat() * out.mat()).trace().real();
  c.at_least("detected-output-overlap", t, 0.5 + 1e-6, 0.0);
  return c.finish();
}

CheckResult check_dne_schmidt(const VerifyConfig& cfg) {
  Checker c("dne.schmidt-rank",
            "dually non-entangling channels raise the Schmidt rank from k "
            "to d for the explicit Schmidt vectors with delta = d^-4 and "
            "epsilon = d^-12",
            cfg, 1e-10);
  std::vector<std::pair<int, int>> pairs = {{2, 3}, {2, 4}, {3, 5}};
  if (cfg.k && cfg.dim) pairs = {{*cfg.k, *cfg.dim}};
  for (auto [k, d] : pairs) {
    const ConstructionResult res =
        thm_dne_schmidt(k, d, cfg.seed, samples_or(cfg, 200));
    const std::string tag = "k" + std::to_string(k) + "-d" + std::to_string(d);
    c.is_true("valid-" + tag, res.valid());
    c.equals("rank-" + tag, res.side("output-schmidt-rank").value, double(d),
             0.0);
    c.at_least("slack1-" + tag, res.side("constants-slack-1").value, 0.0, 0.0);
    c.at_least("slack2-" + tag, res.side("constants-slack-2").value, 0.0, 0.0);
  }
  // Degenerate no-increase case stays valid.
  c.is_true("valid-k2-d2", thm_dne_schmidt(2, 2, cfg.seed, 50).valid());
  return c.finish();
}

CheckResult check_negativity_ratio(const VerifyConfig& cfg) {
  Checker c("negativity.ppt-preserving-ratio",
            "a PPT-preserving channel multiplies the negativity of the most "
            "entangled Werner state by (d-1)/2",
            cfg, 1e-10);
  std::vector<int> ds = {4, 5, 6};
  if (cfg.dim) ds = {*cfg.dim};
  for (int d : ds) {
    const ConstructionResult res = ppt_preserving_negativity_channel(
        d, cfg.seed, samples_or(cfg, 60));
    const std::string tag = "d" + std::to_string(d);
    c.is_true("valid-" + tag, res.valid());
    c.equals("input-negativity-" + tag, res.side("input-negativity").value,
             1.0 / d, 1e-10);
    c.equals("output-negativity-" + tag, res.side("output-negativity").value,
             double(d - 1) / (2.0 * d), 1e-10);
    c.equals("ratio-" + tag, res.side("negativity-ratio").value,
             0.5 * (d - 1), 1e-8);
  }
  return c.finish();
}

CheckResult check_superactivation(const VerifyConfig& cfg) {
  Checker c("superactivation.minus-one-sixteenth",
            "two copies of the non-entangling Bell-projection channel drive "
            "the four-qubit Bell-mixture state to an NPT output with partial "
            "transpose expectation -1/16",
            cfg, 1e-12);
  const ConstructionResult res =
      superactivation(cfg.seed, samples_or(cfg, 10000));
  c.construction(res);
  c.equals("pt-expectation", res.side("pt-expectation").value, -1.0 / 16.0,
           1e-12);
  c.at_most("pt-min-eigenvalue", res.side("pt-min-eigenvalue").value,
            -1.0 / 16.0, 1e-10);
  return c.finish();
}

CheckResult check_smolin(const VerifyConfig& cfg) {
  Checker c("smolin.separable-cut",
            "the four-qubit Bell-mixture state is PPT across the cut "
            "grouping the first parties against the second",
            cfg, 1e-12);
  const HermitianOperator rho = smolin();
  c.equals("trace", rho.trace(), 1.0, 1e-12);
  const Spectrum s = eig_hermitian(rho);
  int rank = 0;
  for (int i = 0; i < 16; ++i)
    if (s.eigenvalues(i) > 1e-10) ++rank;
  c.equals("rank", double(rank), 4.0, 0.0);
  const int aa[2] = {0, 2};
  c.at_least("pt-min-eigenvalue",
             min_eigenvalue(partial_transpose(rho, aa)), 0.0, 1e-12);
  const int perm[4] = {2, 3, 0, 1};
  c.at_most("swap-invariance",
            frobenius_norm(permute_factors(rho, perm).mat() - rho.mat()),
            0.0, 1e-12);
  return c.finish();
}

CheckResult check_distill(const VerifyConfig& cfg) {
  Checker c("distill.npt-to-distillable",
            "every sampled NPT state converts, through the witness channel "
            "of its partial-transpose eigenvector, to an entangled two-qubit "
            "state, and those channels have PPT Choi matrices",
            cfg, 1e-6);
  Rng rng = rng_stream(cfg.seed, "distill.npt-to-distillable");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = samples_or(cfg, 50);
  double min_overlap = 1.0;
  double max_output_pt = -1.0;
  bool all_ppt_maps = true;
  const HermitianOperator phi2 = max_entangled(2).density();
  int produced = 0;
  while (produced < n) {
    HermitianOperator rho = phi2;  // placeholder, reassigned below
    const int family = produced % 3;
    if (family == 2) {
      rho = werner(3, 0.2 + 1.8 * unif(rng));
    } else {
      const std::vector<int> dims =
          family == 0 ? std::vector<int>{2, 2} : std::vector<int>{2, 3};
      bool npt = false;
      for (int attempt = 0; attempt < 400 && !npt; ++attempt) {
        rho = random_density(dims, rng);
        npt = min_eigenvalue(partial_transpose(rho, 0)) < -4e-6;
      }
      if (!npt) continue;
    }
    ++produced;
    const Witness w = witness_from_npt(rho, Bipartition{{0}});
    const ConstructionResult res = witness_channel(w, cfg.seed + produced, 40);
    if (!is_ppt_map(res.channel)) all_ppt_maps = false;
    const HermitianOperator out = apply(res.channel, rho);
    min_overlap =
        std::min(min_overlap, (phi2.mat() * out.mat()).trace().real());
    max_output_pt = std::max(
        max_output_pt, min_eigenvalue(partial_transpose(out, 0)));
  }
  c.param("states", double(n));
  c.at_least("min-maxent-overlap", min_overlap, 0.5 + 1e-9, 0.0);
  c.at_most("max-output-pt-eigenvalue", max_output_pt, -1e-6, 0.0);
  c.is_true("all-choi-ppt", all_ppt_maps);
  return c.finish();
}

CheckResult check_finite_witness(const VerifyConfig& cfg) {
  Checker c("distill.finite-witness",
            "for any finite witness list on the Choi space there is a "
            "two-qubit entangled state whose constant channel is undetected",
            cfg, 1e-10);
  Rng rng = rng_stream(cfg.seed, "distill.finite-witness");
  const std::vector<int> choi_dims = {2, 2, 2, 2};
  const int pt_factors[2] = {0, 2};

  // PSD witnesses detect nothing; the maximally entangled state suffices.
  {
    Vector v = random_unit_vector(16, rng);
    HermitianOperator x(v * v.adjoint(), choi_dims);
    const UndetectedConversionResult res = undetected_conversion(
        {Witness{x, Bipartition{{0, 2}}}}, 2, TwoQubitSubspace{}, cfg.seed, 4);
    c.is_true("psd-witness-found", res.found);
    c.equals("psd-witness-negativity", res.negativity, 0.5, 1e-9);
  }

  std::vector<Witness> witnesses;
  for (int i = 0; i < 10; ++i) {
    Vector v = random_unit_vector(16, rng);
    HermitianOperator x(v * v.adjoint(), choi_dims);
    witnesses.push_back(
        Witness{partial_transpose(x, pt_factors), Bipartition{{0, 2}}});
  }
  const UndetectedConversionResult res = undetected_conversion(
      witnesses, 2, TwoQubitSubspace{}, cfg.seed, 32);
  c.is_true("search-found-state", res.found);
  c.at_least("negativity", res.negativity, 1e-3, 0.0);
  double min_trace = 0.0;
  for (double t : res.witness_traces) min_trace = std::min(min_trace, t);
  c.at_least("min-witness-trace", min_trace, 0.0, 1e-10);
  return c.finish();
}

CheckResult check_stochastic(const VerifyConfig& cfg) {
  Checker c("stochastic.ghz-to-w",
            "a completely positive map undetected by finitely many witnesses "
            "sends the three-qubit GHZ state exactly to the W state",
            cfg, 1e-10);
  const PureState psi = ghz(3, 2);
  const PureState what = w_state();
  Rng rng = rng_stream(cfg.seed, "stochastic.ghz-to-w");
  std::vector<int> choi_dims = {2, 2, 2, 2, 2, 2};
  std::vector<HermitianOperator> witnesses;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 5; ++i) {
    Vector v = random_unit_vector(64, rng);
    HermitianOperator x(v * v.adjoint(), choi_dims);
    std::vector<int> pt;
    for (int party = 0; party < 3; ++party)
      if (coin(rng)) {
        pt.push_back(party);
        pt.push_back(3 + party);
      }
    if (pt.empty()) {
      pt = {0, 3};
    }
    witnesses.push_back(partial_transpose(x, pt));
  }
  const StochasticOmegaResult res =
      stochastic_omega(witnesses, psi, what, cfg.seed, 4000);
  c.at_least("omega-min-eigenvalue", min_eigenvalue(res.omega), 0.0, 1e-10);
  double min_trace = 0.0;
  for (double t : res.witness_traces) min_trace = std::min(min_trace, t);
  c.at_least("min-witness-trace", min_trace, 0.0, 1e-10);
  c.equals("output-fidelity", res.output_fidelity, 1.0, 1e-10);
  const HermitianOperator image = apply(res.map, psi.density());
  c.at_most("image-residual",
            frobenius_norm(image.mat() / image.trace() -
                           what.density().mat()),
            0.0, 1e-10);
  c.is_true("computational-perp", res.computational_perp);
  return c.finish();
}

CheckResult check_isotropic_threshold(const VerifyConfig& cfg) {
  Checker c("isotropic.ppt-threshold",
            "the isotropic family becomes PPT exactly at noise weight "
            "d/(d+1), located by bisection on the minimal partial-transpose "
            "eigenvalue",
            cfg, 1e-9);
  std::vector<int> ds = {2, 3, 4, 5, 6};
  if (cfg.dim) ds = {*cfg.dim};
  for (int d : ds) {
    auto min_pt = [&](double a) {
      return min_eigenvalue(partial_transpose(isotropic(d, a), 0));
    };
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 60; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (min_pt(mid) < 0.0 ? lo : hi) = mid;
    }
    c.equals("threshold-d" + std::to_string(d), 0.5 * (lo + hi),
             double(d) / (d + 1.0), 1e-9);
  }
  return c.finish();
}

CheckResult check_werner(const VerifyConfig& cfg) {
  Checker c("werner.npt-iff",
            "Werner states are unit-trace PSD across the full parameter "
            "range and NPT exactly for beta above zero",
            cfg, 1e-9);
  for (int d = 2; d <= 6; ++d) {
    double worst_trace = 0.0, worst_eig = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double beta =
          -(d + 1.0) + i * (double(d - 1) + d + 1.0) / 19.0;
      const HermitianOperator rho = werner(d, beta);
      worst_trace = std::max(worst_trace, std::abs(rho.trace() - 1.0));
      worst_eig = std::min(worst_eig, min_eigenvalue(rho));
    }
    c.at_most("trace-deviation-d" + std::to_string(d), worst_trace, 0.0,
              1e-12);
    c.at_least("min-eigenvalue-d" + std::to_string(d), worst_eig, 0.0, 1e-12);
  }
  c.at_most("npt-at-positive-beta",
            min_eigenvalue(partial_transpose(werner(3, 0.1), 0)), -1e-4, 0.0);
  c.at_least("ppt-at-negative-beta",
             min_eigenvalue(partial_transpose(werner(3, -0.1), 0)), 0.0,
             1e-12);
  auto min_pt = [&](double beta) {
    return min_eigenvalue(partial_transpose(werner(3, beta), 0));
  };
  double lo = -1.0, hi = 2.0;
  for (int iter = 0; iter < 50; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (min_pt(mid) < 0.0 ? hi : lo) = mid;
  }
  c.equals("npt-boundary", 0.5 * (lo + hi), 0.0, 1e-6);
  // The Werner state at the boundary is separable; PPT alone must stay
  // undecided on a 3x3 split rather than claim a certificate.
  const PptResult at_zero = ppt_test(werner(3, 0.0), Bipartition{{0}});
  c.is_true("ppt-undecided-at-3x3",
            at_zero.verdict.status == SepStatus::Undecided);
  return c.finish();
}

CheckResult check_kne_hierarchy(const VerifyConfig& cfg) {
  Checker c("k-ne.hierarchy",
            "the Werner-based map is k-non-entangling on sampled "
            "k-dimensional projections yet certifiably fails at k+1",
            cfg, 1e-10);
  const int d = cfg.dim.value_or(4);
  const int k = cfg.k.value_or(2);
  const double beta = cfg.beta.value_or(1.0);
  const ConstructionResult res =
      k_ne_channel(d, k, beta, cfg.seed, samples_or(cfg, 300));
  c.construction(res);
  const KneSampleResult at_k =
      k_ne_sampled_test(res.channel, k, samples_or(cfg, 300), cfg.seed);
  c.equals("violations-at-k", double(at_k.violations), 0.0, 0.0);
  const KneSampleResult at_k1 =
      k_ne_sampled_test(res.channel, k + 1, samples_or(cfg, 300), cfg.seed);
  c.is_true("violation-at-k-plus-1",
            at_k1.verdict == KneVerdict::NotKNonEntangling);

  // Second window: d=5, k=2 at the upper boundary beta = 1.5.
  if (!cfg.dim && !cfg.k && !cfg.beta) {
    const ConstructionResult res2 = k_ne_channel(5, 2, 1.5, cfg.seed, 100);
    c.is_true("valid-d5-k2", res2.valid());
    const KneSampleResult v3 =
        k_ne_sampled_test(res2.channel, 3, 100, cfg.seed);
    c.is_true("violation-d5-k3", v3.verdict == KneVerdict::NotKNonEntangling);
  }
  return c.finish();
}

CheckResult check_kne_thresholds(const VerifyConfig& cfg) {
  Checker c("k-ne.werner-projection-thresholds",
            "projected Werner blocks lose their Frobenius-ball certificate "
            "exactly at beta = (d-k)/k and turn NPT at k+1 dimensions "
            "exactly above beta = (d-k-1)/(k+1)",
            cfg, 1e-6);
  const std::vector<std::pair<int, int>> pairs = {
      {4, 2}, {5, 2}, {5, 3}, {6, 3}};
  for (auto [d, k] : pairs) {
    const std::string tag =
        "d" + std::to_string(d) + "-k" + std::to_string(k);
    const Matrix p = Matrix::Identity(d, d).topRows(k);
    const Matrix pq = kron(p, p);
    const Vector phi_unnorm = max_entangled(d).amplitudes * std::sqrt(double(d));
    const Vector psi_vec =
        kron(p.conjugate().eval(), p) * phi_unnorm / double(d);
    const double c_worst = psi_vec.squaredNorm() * double(d);

    // Certificate margin, computed from the worst-case projected block.
    auto cert_margin = [&](double beta) { return c_worst * (beta + 1.0) - 1.0; };
    const Matrix p1 = Matrix::Identity(d, d).topRows(k + 1);
    const Matrix pq1 = kron(p1, p1);
    auto lifted_min_pt = [&](double beta) {
      const HermitianOperator block(
          pq1 * werner(d, beta).mat() * pq1.adjoint(), {k + 1, k + 1});
      return min_eigenvalue(partial_transpose(block, 0));
    };

    const double beta_hi = double(d - 1);
    bool grid_consistent = true;
    for (int i = 0; i < 10; ++i) {
      const double beta = 0.05 + i * (beta_hi - 0.05) / 9.0;
      const bool cert = cert_margin(beta) <= 1e-9;
      const bool below = beta <= double(d - k) / k + 1e-9;
      if (cert != below) grid_consistent = false;
      const bool npt = lifted_min_pt(beta) < -1e-12;
      const bool above = beta > double(d - k - 1) / (k + 1) + 1e-9;
      const bool near1 =
          std::abs(beta - double(d - k - 1) / (k + 1)) < 1e-6;
      if (!near1 && npt != above) grid_consistent = false;
    }
    c.is_true("grid-consistent-" + tag, grid_consistent);

    double lo = 0.0, hi = beta_hi;
    for (int iter = 0; iter < 40; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (cert_margin(mid) <= 0.0 ? lo : hi) = mid;
    }
    c.equals("certificate-boundary-" + tag, 0.5 * (lo + hi),
             double(d - k) / k, 1e-6);

    lo = 0.0;
    hi = beta_hi;
    for (int iter = 0; iter < 40; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (lifted_min_pt(mid) < 0.0 ? hi : lo) = mid;
    }
    c.equals("npt-boundary-" + tag, 0.5 * (lo + hi),
             double(d - k - 1) / (k + 1), 1e-6);
  }
  return c.finish();
}

CheckResult check_kne_complete(const VerifyConfig& cfg) {
  Checker c("k-ne.complete-vs-separable",
            "a separable map passes the sampled projection test at full "
            "local dimension while the swap channel fails it at k = 2",
            cfg, 1e-10);
  // Constant map to a fixed product state: a separable map.
  Matrix prod = Matrix::Zero(4, 4);
  prod(0, 0) = 1.0;
  HermitianOperator sep_choi(kron(prod, Matrix::Identity(4, 4)),
                             {2, 2, 2, 2});
  const Channel sep{std::move(sep_choi), {2, 2}, {2, 2}, {0}, {0}};
  const KneSampleResult sep_res =
      k_ne_sampled_test(sep, 2, samples_or(cfg, 200), cfg.seed);
  c.equals("separable-map-violations", double(sep_res.violations), 0.0, 0.0);

  // Swap channel: Choi maximally entangled across the grouped cut.
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  const Channel id_ch = identity_channel({2, 2});
  HermitianOperator swap_choi(
      kron(swap, Matrix::Identity(4, 4)) * id_ch.choi.mat() *
          kron(swap, Matrix::Identity(4, 4)).adjoint(),
      {2, 2, 2, 2});
  const Channel swap_ch{std::move(swap_choi), {2, 2}, {2, 2}, {0}, {0}};
  c.is_true("swap-is-cptp", is_cptp(swap_ch));
  const KneSampleResult swap_k1 =
      k_ne_sampled_test(swap_ch, 1, samples_or(cfg, 200), cfg.seed);
  c.equals("swap-violations-k1", double(swap_k1.violations), 0.0, 0.0);
  const KneSampleResult swap_k2 =
      k_ne_sampled_test(swap_ch, 2, samples_or(cfg, 200), cfg.seed);
  c.is_true("swap-violation-k2",
            swap_k2.verdict == KneVerdict::NotKNonEntangling);
  return c.finish();
}

CheckResult check_three_ne(const VerifyConfig& cfg) {
  Checker c("k-ne.three-ne-attempt",
            "the witness channel built from a Schmidt-rank-3 projected "
            "Werner eigenvector has a PPT Choi matrix whose 3-dimensional "
            "projection resists the available entanglement certificates",
            cfg, 1e-10);
  const int d = cfg.dim.value_or(4);
  const double beta = cfg.beta.value_or(1.0);
  c.param("d", double(d));
  c.param("beta", beta);
  const HermitianOperator rho = werner(d, beta);

  // eta = (P^T x P^T) phi+_3: Schmidt rank 3, negative direction of the
  // projected partial transpose.
  const Matrix p = Matrix::Identity(d, d).topRows(3);
  const Vector phi3 = max_entangled(3).amplitudes;
  Vector eta = kron(p.transpose().eval(), p.transpose().eval()) * phi3;
  eta /= eta.norm();
  HermitianOperator eta_proj(eta * eta.adjoint(), {d, d});
  const Witness w{partial_transpose(eta_proj, 0), Bipartition{{0}}};
  const double detect = (w.op.mat() * rho.mat()).trace().real();
  c.at_most("witness-detects-werner", detect, -1e-6, 0.0);

  const ConstructionResult res =
      witness_channel(w, cfg.seed, samples_or(cfg, 120));
  c.is_true("channel-valid", res.valid());
  c.is_true("choi-is-ppt", is_ppt_map(res.channel));
  const HermitianOperator out = apply(res.channel, rho);
  c.at_least("detected-output-overlap",
             (max_entangled(2).density().mat() * out.mat()).trace().real(),
             0.5 + 1e-9, 0.0);

  // Project onto the Schmidt bases of eta (the computational 3-space).
  const std::vector<std::pair<Matrix, Matrix>> extra = {{p, p}};
  const KneSampleResult probe =
      k_ne_sampled_test(res.channel, 3, samples_or(cfg, 120), cfg.seed, extra);
  // Best effort: the projected Choi block is PPT, so no certificate is
  // expected to fire; a violation would be a (welcome) surprise but is not
  // required.
  c.param("projected-verdict", probe.verdict == KneVerdict::NotKNonEntangling
                                   ? "NotKNonEntangling"
                                   : "Undecided");
  const Matrix big =
      kron(Matrix::Identity(4, 4), kron(p, p));
  HermitianOperator block(big * res.channel.choi.mat() * big.adjoint(),
                          {2, 2, 3, 3});
  const int aside[2] = {0, 2};
  c.at_least("projected-choi-pt-min-eigenvalue",
             min_eigenvalue(partial_transpose(block, aside)), 0.0, 1e-10);
  HermitianOperator block_norm(block.mat() / block.trace(), block.dims());
  c.param("projected-ccnr",
          ccnr_value(block_norm, Bipartition{{0, 2}}));
  return c.finish();
}

CheckResult check_frechet_fd(const VerifyConfig& cfg) {
  Checker c("frechet.fd-agreement",
            "the divided-difference derivative formula matches one-sided "
            "finite differences of the trace functional on positive "
            "definite instances",
            cfg, 1e-6);
  Rng rng = rng_stream(cfg.seed, "frechet.fd-agreement");
  const int n_cases = samples_or(cfg, 100);
  const double h = 1e-5;
  const std::vector<ScalarFunction> fns = {ScalarFunction::log(),
                                           ScalarFunction::power(0.5),
                                           ScalarFunction::power(-0.5)};
  const std::vector<std::string> fn_names = {"log", "power+0.5", "power-0.5"};
  std::vector<double> worst(fns.size(), 0.0);
  for (int i = 0; i < n_cases; ++i) {
    const int n = 3 + (i % 4);
    HermitianOperator g = random_hermitian({n}, rng);
    const double scale = operator_norm(g);
    HermitianOperator a(
        0.8 * g.mat() / scale + Matrix::Identity(n, n), {n});
    HermitianOperator b = random_hermitian({n}, rng);
    b = HermitianOperator(b.mat() / frobenius_norm(b.mat()), {n});
    const HermitianOperator p = random_density({n}, rng);
    for (std::size_t fi = 0; fi < fns.size(); ++fi) {
      const auto& f = fns[fi];
      auto g_of_t = [&](double t) {
        const Spectrum s = eig_hermitian(
            HermitianOperator(a.mat() + t * b.mat(), a.dims()));
        double acc = 0.0;
        for (int e = 0; e < n; ++e)
          acc += f.value(s.eigenvalues(e)) *
                 (s.unitary.col(e).adjoint() * p.mat() * s.unitary.col(e))
                     .value()
                     .real();
        return acc;
      };
      // Third-order one-sided stencil: only t >= 0 evaluations, so the
      // same oracle serves at the PSD boundary.
      const double fd = (-11.0 * g_of_t(0.0) + 18.0 * g_of_t(h) -
                         9.0 * g_of_t(2.0 * h) + 2.0 * g_of_t(3.0 * h)) /
                        (6.0 * h);
      const double exact = directional_derivative(p, f, a, b).value;
      const double rel =
          std::abs(exact - fd) / std::max(std::abs(exact), 1e-3);
      worst[fi] = std::max(worst[fi], rel);
    }
  }
  for (std::size_t fi = 0; fi < fns.size(); ++fi)
    c.at_most("relative-gap-" + fn_names[fi], worst[fi], 0.0, 1e-6);

  // Phi applied to the base point itself: (1-alpha) sigma^{1-alpha}.
  double worst_base = 0.0;
  for (double alpha : {0.5, 1.5}) {
    const HermitianOperator sigma = random_density({6}, rng);
    const Matrix lhs =
        phi_map(ScalarFunction::power(1.0 - alpha), sigma, sigma.mat());
    const Matrix rhs =
        (1.0 - alpha) * matrix_power_on_support(sigma, 1.0 - alpha);
    worst_base = std::max(worst_base, frobenius_norm(lhs - rhs));
  }
  c.at_most("phi-at-base-point", worst_base, 0.0, 1e-10);

  // Basis independence on a degenerate spectrum.
  {
    RealVector eigs(4);
    eigs << 2.0, 1.0, 1.0, 0.5;
    Matrix u1 = Matrix::Identity(4, 4);
    Matrix rot = Matrix::Identity(4, 4);
    const double th = 0.7;
    rot(1, 1) = std::cos(th);
    rot(1, 2) = -std::sin(th);
    rot(2, 1) = std::sin(th);
    rot(2, 2) = std::cos(th);
    const Spectrum s1{eigs, u1};
    const Spectrum s2{eigs, u1 * rot};
    const HermitianOperator b = random_hermitian({4}, rng);
    const Matrix m1 = phi_map_from(ScalarFunction::log(), s1, b.mat());
    const Matrix m2 = phi_map_from(ScalarFunction::log(), s2, b.mat());
    c.at_most("degenerate-basis-independence", frobenius_norm(m1 - m2), 0.0,
              1e-10);
  }
  return c.finish();
}

CheckResult check_technical_lemma(const VerifyConfig& cfg) {
  Checker c("frechet.technical-lemma",
            "sqrt(pq) f_alpha^[1](p^(1/alpha), q^(1/alpha)) / (1 - alpha) "
            "stays within [0, 1] on the unit square",
            cfg, 1e-12);
  Rng rng = rng_stream(cfg.seed, "frechet.technical-lemma");
  std::uniform_real_distribution<double> unif(1e-6, 1.0);
  const int n = samples_or(cfg, 10000);
  double lo = 1.0, hi = 0.0;
  for (double alpha : {0.25, 0.5, 0.75, 1.5, 1.9, 2.0}) {
    const ScalarFunction f = ScalarFunction::power(1.0 - alpha);
    for (int i = 0; i < n; ++i) {
      const double p = unif(rng), q = unif(rng);
      const double val =
          std::sqrt(p * q) *
          divided_difference(f, std::pow(p, 1.0 / alpha),
                             std::pow(q, 1.0 / alpha)) /
          (1.0 - alpha);
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
  }
  c.param("samples-per-alpha", double(n));
  c.at_least("sweep-minimum", lo, 0.0, 1e-12);
  c.at_most("sweep-maximum", hi, 1.0, 1e-12);
  return c.finish();
}

CheckResult check_xpyp_lemma(const VerifyConfig& cfg) {
  Checker c("frechet.xpyp-lemma",
            "(x^r - y^r) / (r (x - y)) is bounded by the geometric mean "
            "raised to r - 1",
            cfg, 1e-12);
  Rng rng = rng_stream(cfg.seed, "frechet.xpyp-lemma");
  std::uniform_real_distribution<double> unif(1e-4, 2.0);
  std::uniform_real_distribution<double> runif(1e-3, 1.0 - 1e-3);
  const int n = samples_or(cfg, 10000);
  double worst = -1.0;
  for (int i = 0; i < n; ++i) {
    const double x = unif(rng);
    double y = unif(rng);
    if (std::abs(x - y) < 1e-2) y += 0.1;
    const double r = (i % 2 == 0 ? 1.0 : -1.0) * runif(rng);
    const double lhs = (std::pow(x, r) - std::pow(y, r)) / (r * (x - y));
    const double rhs = std::pow(std::sqrt(x * y), r - 1.0);
    worst = std::max(worst, (lhs - rhs) / std::max(1.0, rhs));
  }
  c.param("samples", double(n));
  c.at_most("max-normalized-excess", worst, 0.0, 1e-12);
  return c.finish();
}

CheckResult check_appendix(const VerifyConfig& cfg) {
  Checker c("appendixA.constants",
            "delta = d^-4 and epsilon = d^-12 satisfy both channel "
            "inequalities with nonnegative slack",
            cfg, 1e-15);
  double min_slack1 = 1.0, min_slack2 = 1e9;
  for (int d = 2; d <= 10; ++d) {
    const double delta = std::pow(double(d), -4.0);
    const double eps = std::pow(double(d), -12.0);
    const double dd = double(d) * d;
    const double slack1 =
        1.0 - (1.0 - delta) * (1.0 + dd / std::sqrt(double(d - 1)) *
                                         std::sqrt((1.0 - eps) * eps));
    const double slack2 = 1.0 +
                          1.0 / std::sqrt((1.0 - delta) * delta) -
                          dd * (1.0 - eps);  // k = 2 is the worst case
    min_slack1 = std::min(min_slack1, slack1);
    min_slack2 = std::min(min_slack2, slack2);
    c.at_least("slack1-d" + std::to_string(d), slack1, 0.0, 0.0);
    c.at_least("slack2-d" + std::to_string(d), slack2, 0.0, 0.0);
  }
  c.at_least("min-slack1", min_slack1, 0.0, 0.0);
  c.at_least("min-slack2", min_slack2, 0.0, 0.0);
  return c.finish();
}

}  // namespace

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> registry = [] {
    std::vector<CheckDef> r;
    auto add = [&r](std::string id, std::string desc,
                    std::vector<std::string> covers,
                    CheckResult (*fn)(const VerifyConfig&)) {
      std::string claim = desc;
      r.push_back(CheckDef{std::move(id), std::move(desc), std::move(claim),
                           std::move(covers), fn});
    };
    add("linalg.flip-pt",
        "flip operator versus the partial transpose of the maximally "
        "entangled state",
        {"notation-flip"}, check_flip_pt);
    add("choi.two-branch-roundtrip",
        "Choi application, dual map and duality identity for two-branch "
        "channels",
        {"two-branch-form", "choi-dual-formulas"}, check_two_branch);
    add("maxent-to-pure.robustness-iff",
        "conversion from the maximally entangled state gated by the "
        "robustness budget",
        {"thm-maxent-to-pure"}, check_maxent_to_pure);
    add("renyi.increase-below-half",
        "alpha entropies below one half increase under a non-entangling "
        "conversion",
        {"cor-ealpha-increased"}, check_renyi_increase);
    add("renyi.ER-alpha-equivalence",
        "alpha relative entropy of entanglement equals the (1/alpha) "
        "entropy on pure states",
        {"thm-er-alpha", "optimal-sigma", "directional-derivative"},
        check_er_alpha);
    add("sep.max-overlap-schmidt",
        "maximal separable overlap of a pure state is its top Schmidt "
        "coefficient",
        {"lemma-max-overlap"}, check_max_overlap);
    add("pure-to-pure.sufficient",
        "sufficient robustness condition for pure-to-pure conversion",
        {"thm-pure-to-pure"}, check_pure_to_pure);
    add("dne.witness-channel",
        "witness-built channels are dually non-entangling and convert "
        "detected states",
        {"lemma-witness-channel", "thm-distill-dne"}, check_witness_channel);
    add("dne.schmidt-rank",
        "dually non-entangling Schmidt-rank increase with explicit "
        "constants",
        {"thm-dne-schmidt", "lemma-dne-conditions"}, check_dne_schmidt);
    add("negativity.ppt-preserving-ratio",
        "negativity grows by (d-1)/2 under the PPT-preserving channel",
        {"thm-negativity-ppt-preserving"}, check_negativity_ratio);
    add("superactivation.minus-one-sixteenth",
        "two-copy output of the Bell-projection channel is NPT with "
        "expectation -1/16",
        {"thm-superactivation"}, check_superactivation);
    add("smolin.separable-cut",
        "the four-qubit Bell-mixture state is PPT across the paired cut",
        {"smolin-state"}, check_smolin);
    add("distill.npt-to-distillable",
        "sampled NPT states convert to entangled two-qubit states through "
        "PPT witness channels",
        {"thm-distill-dne", "thm-distill-dne-ppt"}, check_distill);
    add("distill.finite-witness",
        "finite witness lists never block conversion to a distillable "
        "state",
        {"thm-finite-witness"}, check_finite_witness);
    add("stochastic.ghz-to-w",
        "GHZ converts to W under a map undetected by finitely many "
        "witnesses",
        {"thm-stochastic"}, check_stochastic);
    add("isotropic.ppt-threshold",
        "isotropic PPT boundary at d/(d+1) via bisection",
        {"isotropic-ppt"}, check_isotropic_threshold);
    add("werner.npt-iff", "Werner family NPT exactly above beta = 0",
        {"werner-family"}, check_werner);
    add("k-ne.hierarchy",
        "k-non-entangling Werner maps fail at k+1 ancilla dimensions",
        {"thm-k-ne", "lemma-knonent", "lemma-kproject"}, check_kne_hierarchy);
    add("k-ne.werner-projection-thresholds",
        "projected Werner separability and NPT boundaries by bisection",
        {"lemma-kproject"}, check_kne_thresholds);
    add("k-ne.complete-vs-separable",
        "separable maps pass full-dimension projection tests; the swap "
        "channel fails at k = 2",
        {"prop-complete-sep"}, check_kne_complete);
    add("k-ne.three-ne-attempt",
        "best-effort probe of the PPT projected Choi block of the "
        "Schmidt-rank-3 witness channel",
        {"prop-3-ne"}, check_three_ne);
    add("frechet.fd-agreement",
        "directional derivatives match one-sided finite differences",
        {"divided-differences", "phi-map", "directional-derivative"},
        check_frechet_fd);
    add("frechet.technical-lemma",
        "normalized divided differences stay within the unit interval",
        {"lemma-technical", "lemma-pneqq"}, check_technical_lemma);
    add("frechet.xpyp-lemma",
        "power-ratio bound by the geometric mean", {"lemma-xpyp"},
        check_xpyp_lemma);
    add("appendixA.constants",
        "explicit delta and epsilon satisfy both inequalities with slack",
        {"appendix-a"}, check_appendix);
    std::sort(r.begin(), r.end(),
              [](const CheckDef& a, const CheckDef& b) { return a.id < b.id; });
    return r;
  }();
  return registry;
}

std::vector<const CheckDef*> list_checks() {
  std::vector<const CheckDef*> out;
  for (const CheckDef& d : check_registry()) out.push_back(&d);
  return out;
}

CheckResult run_check(const std::string& id, const VerifyConfig& cfg) {
  for (const CheckDef& d : check_registry()) {
    if (d.id != id) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r = d.run(cfg);
    const auto stop = std::chrono::steady_clock::now();
    r.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(stop - start)
            .count();
    return r;
  }
  throw std::out_of_range("unknown check id: " + id);
}

Report run_all(const VerifyConfig& cfg) {
  Report report;
  report.config = cfg;
  for (const CheckDef& d : check_registry())
    report.results.push_back(run_check(d.id, cfg));
  std::sort(report.results.begin(), report.results.end(),
            [](const CheckResult& a, const CheckResult& b) {
              return a.check_id < b.check_id;
            });
  report.total = static_cast<int>(report.results.size());
  for (const CheckResult& r : report.results)
    if (r.pass) ++report.passed;
  return report;
}

Json check_to_json(const CheckResult& r) {
  Json j;
  j["check_id"] = r.check_id;
  j["claim"] = r.claim;
  j["params"] = r.params;
  j["computed"] = r.computed;
  j["expected"] = r.expected;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

Json report_to_json(const Report& report) {
  Json j;
  Json cfg;
  cfg["seed"] = report.config.seed;
  if (report.config.tolerance) cfg["tolerance"] = *report.config.tolerance;
  if (report.config.samples) cfg["samples"] = *report.config.samples;
  if (report.config.dim) cfg["dim"] = *report.config.dim;
  if (report.config.k) cfg["k"] = *report.config.k;
  if (report.config.beta) cfg["beta"] = *report.config.beta;
  if (report.config.alpha) cfg["alpha"] = *report.config.alpha;
  cfg["format"] = report.config.format;
  j["config"] = std::move(cfg);
  Json results = Json::array();
  for (const CheckResult& r : report.results)
    results.push_back(check_to_json(r));
  j["results"] = std::move(results);
  j["summary"] = {{"total", report.total}, {"passed", report.passed}};
  return j;
}

std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << "check_id,key,computed,expected,tolerance,pass,seed\n";
  os.precision(17);
  for (const CheckResult& r : report.results) {
    for (const auto& [key, value] : r.computed) {
      os << r.check_id << ',' << key << ',' << value << ',';
      const auto it = r.expected.find(key);
      if (it != r.expected.end()) os << it->second;
      os << ',' << r.tolerance << ',' << (r.pass ? "true" : "false") << ','
         << r.seed << '\n';
    }
  }
  return os.str();
}

}  // namespace entkit
