#include "entkit/constructions.hpp"

#include <algorithm>
#include <cmath>

#include "entkit/measures.hpp"
#include "entkit/random.hpp"

namespace entkit {

namespace {

HermitianOperator identity_state(const std::vector<int>& dims) {
  const FactorIndexer idx(dims);
  const int n = idx.side();
  return HermitianOperator(Matrix::Identity(n, n) / double(n), dims);
}

double overlap(const HermitianOperator& a, const HermitianOperator& b) {
  return (a.mat() * b.mat()).trace().real();
}

}  // namespace

SideCondition make_side(std::string name, double value, std::string relation,
                        double bound, double tolerance) {
  SideCondition s;
  s.name = std::move(name);
  s.value = value;
  s.bound = bound;
  s.relation = std::move(relation);
  s.tolerance = tolerance;
  if (s.relation == "<=")
    s.pass = value <= bound + tolerance;
  else if (s.relation == ">=")
    s.pass = value >= bound - tolerance;
  else if (s.relation == "==")
    s.pass = std::abs(value - bound) <= tolerance;
  else
    throw std::invalid_argument("unknown side-condition relation");
  return s;
}

bool ConstructionResult::valid() const {
  for (const SideCondition& s : side_conditions)
    if (!s.pass) return false;
  return true;
}

const SideCondition& ConstructionResult::side(const std::string& name) const {
  for (const SideCondition& s : side_conditions)
    if (s.name == name) return s;
  throw std::out_of_range("no side condition named " + name);
}

// ---------------------------------------------------------------------------
// Pure-state conversions driven by the robustness budget.

namespace {

/// Shared body for the two pure-state conversion theorems: the channel
/// Lambda(X) = Tr(effect X) target + Tr((I - effect) X) noise, where the
/// noise is the optimal robustness state of the target. `max_weight` bounds
/// Tr(effect rho) over separable inputs; the output mixture stays separable
/// because max_weight (1 + R) <= 1.
ConstructionResult robustness_conversion(const HermitianOperator& effect,
                                         const SchmidtVector& lambda_out,
                                         double max_weight, std::string claim,
                                         std::uint64_t seed, int n_samples) {
  const PureState target = pure_from_schmidt(lambda_out);
  const double r = robustness_pure(lambda_out);

  HermitianOperator noise = target.density();
  double residual = 0.0;
  if (lambda_out.rank() >= 2) {
    RobustnessSigma rs = robustness_sigma_star(lambda_out);
    noise = std::move(rs.sigma);
    residual = rs.certificate.decomposition_residual;
  }

  TwoBranch tb(effect, target.density(), noise);
  Channel ch = choi_of_two_branch(tb);

  std::vector<SideCondition> conds;
  conds.push_back(make_side("certificate-residual", residual, "<=", 0.0, 1e-10));
  conds.push_back(make_side("cptp", is_cptp(ch) ? 1.0 : 0.0, "==", 1.0, 0.0));

  Rng rng = rng_stream(seed, "robustness-conversion");
  double worst_weight = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const HermitianOperator rho = random_product_state(effect.dims(), rng);
    worst_weight = std::max(worst_weight, overlap(effect, rho));
  }
  conds.push_back(make_side("sampled-branch-weight", worst_weight, "<=",
                            max_weight, 1e-10));
  conds.push_back(make_side("output-mixture-weight", worst_weight * (1.0 + r),
                            "<=", 1.0, 1e-9));

  return ConstructionResult{std::move(ch), std::move(tb), std::move(conds),
                            std::move(claim)};
}

}  // namespace

ConstructionResult thm_maxent_to_pure(int k, const SchmidtVector& lambda,
                                      std::uint64_t seed, int n_samples) {
  if (k < 2) throw std::invalid_argument("source state needs k >= 2");
  const double r = robustness_pure(lambda);
  if (r > double(k - 1) + 1e-12)
    throw construction_refused(
        "target robustness exceeds k - 1; no non-entangling channel maps "
        "phi+_k to this state");
  const PureState source = max_entangled(k);
  ConstructionResult res = robustness_conversion(
      source.density(), lambda, 1.0 / double(k),
      "maximally entangled to pure conversion within the robustness budget",
      seed, n_samples);
  res.side_conditions.push_back(
      make_side("robustness-budget", r, "<=", double(k - 1), 1e-12));
  const HermitianOperator mapped = apply(res.channel, source.density());
  const PureState target = pure_from_schmidt(lambda);
  res.side_conditions.push_back(make_side(
      "maps-source-to-target",
      frobenius_norm(mapped.mat() - target.density().mat()), "<=", 0.0, 1e-10));
  return res;
}

ConstructionResult thm_pure_to_pure(const SchmidtVector& lambda_in,
                                    const SchmidtVector& lambda_out,
                                    std::uint64_t seed, int n_samples) {
  const double r_out = robustness_pure(lambda_out);
  const double lambda1 = lambda_in[0];
  if (1.0 + r_out > 1.0 / lambda1 + 1e-12)
    throw construction_refused(
        "1 + R(target) exceeds 1/lambda_1(source); the sufficient condition "
        "fails (this does not prove the conversion impossible)");
  const PureState source = pure_from_schmidt(lambda_in);
  ConstructionResult res = robustness_conversion(
      source.density(), lambda_out, lambda1,
      "pure-to-pure conversion via the largest Schmidt coefficient", seed,
      n_samples);
  res.side_conditions.push_back(make_side(
      "sufficient-condition", 1.0 + r_out, "<=", 1.0 / lambda1, 1e-12));
  const HermitianOperator mapped = apply(res.channel, source.density());
  const PureState target = pure_from_schmidt(lambda_out);
  res.side_conditions.push_back(make_side(
      "maps-source-to-target",
      frobenius_norm(mapped.mat() - target.density().mat()), "<=", 0.0, 1e-10));
  return res;
}

// ---------------------------------------------------------------------------
// Dually non-entangling Schmidt-rank increase.

ConstructionResult thm_dne_schmidt(int k, int d, std::uint64_t seed,
                                   int n_samples) {
  if (k < 2 || d < 2) throw std::invalid_argument("needs k, d >= 2");
  const double delta = std::pow(double(d), -4.0);
  const double eps = std::pow(double(d), -12.0);

  std::vector<double> lam(k, delta / double(k - 1));
  lam[0] = 1.0 - delta;
  std::vector<double> mu(d, eps / double(d - 1));
  mu[0] = 1.0 - eps;
  const SchmidtVector lambda(std::move(lam));
  const SchmidtVector nu(std::move(mu));

  const PureState psi = pure_from_schmidt(lambda);
  const PureState phi = pure_from_schmidt(nu);

  TwoBranch tb(psi.density(), phi.density(), identity_state({d, d}));
  Channel ch = choi_of_two_branch(tb);

  std::vector<SideCondition> conds;
  const double mu_root = std::sqrt(nu[0] * nu[1]);
  const double lam_root = std::sqrt(lambda[0] * lambda[1]);
  const double dd = double(d) * d;

  conds.push_back(make_side("nonentangling-inequality",
                            lambda[0] * dd * mu_root, "<=", 1.0, 1e-12));
  conds.push_back(make_side("dual-inequality", dd * nu[0], "<=",
                            1.0 + 1.0 / lam_root, 1e-12));
  // Slack of the explicit constants delta = d^-4, epsilon = d^-12.
  const double slack1 =
      1.0 - (1.0 - delta) * (1.0 + dd / std::sqrt(double(d - 1)) *
                                       std::sqrt((1.0 - eps) * eps));
  const double slack2 =
      1.0 + std::sqrt(double(k - 1)) / std::sqrt((1.0 - delta) * delta) -
      dd * (1.0 - eps);
  conds.push_back(make_side("constants-slack-1", slack1, ">=", 0.0, 0.0));
  conds.push_back(make_side("constants-slack-2", slack2, ">=", 0.0, 0.0));

  const HermitianOperator mapped = apply(ch, psi.density());
  conds.push_back(make_side(
      "maps-psi-to-phi", frobenius_norm(mapped.mat() - phi.density().mat()),
      "<=", 0.0, 1e-10));
  const Spectrum out_spec = eig_hermitian(mapped);
  const PureState out_vec(out_spec.unitary.col(0), mapped.dims());
  conds.push_back(make_side("output-schmidt-rank",
                            double(schmidt(out_vec).coefficients.rank()), "==",
                            double(d), 0.0));
  conds.push_back(make_side("cptp", is_cptp(ch) ? 1.0 : 0.0, "==", 1.0, 0.0));

  Rng rng = rng_stream(seed, "dne-schmidt");
  double worst_weight = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const HermitianOperator rho = random_product_state(psi.dims, rng);
    worst_weight = std::max(worst_weight, overlap(psi.density(), rho));
  }
  conds.push_back(make_side("sampled-branch-weight", worst_weight, "<=",
                            lambda[0], 1e-10));
  conds.push_back(make_side("sampled-output-separable",
                            worst_weight * (1.0 + dd * mu_root), "<=", 1.0,
                            1e-9));

  // Dual images (t - 1/d^2) psi + I/d^2 of sampled output states: the
  // unnormalized form I + (d^2 t - 1) psi sits inside the Frobenius
  // separable ball when t <= 1/d^2, and below the pure-plus-noise
  // separability threshold otherwise.
  double worst_dual = 0.0;
  double worst_dual_residual = 0.0;
  int dual_certified = 0;
  const int dual_samples = std::max(20, n_samples / 10);
  const int kk = k * k;
  for (int s = 0; s < dual_samples; ++s) {
    const HermitianOperator y = random_density({d, d}, rng);
    const double t = overlap(phi.density(), y);
    worst_dual = std::max(worst_dual, dd * t);
    const HermitianOperator dual = dual_apply(tb, y);
    const Matrix closed = (t - 1.0 / dd) * psi.density().mat() +
                          (1.0 / dd) * Matrix::Identity(kk, kk);
    worst_dual_residual =
        std::max(worst_dual_residual, frobenius_norm(dual.mat() - closed));
    const bool certified =
        dd * t <= 1.0 + 1e-12
            ? std::abs(dd * t - 1.0) <= 1.0 + 1e-12
            : dd * t <= 1.0 + 1.0 / lam_root + 1e-12;
    if (certified) ++dual_certified;
  }
  conds.push_back(make_side("dual-closed-form-residual", worst_dual_residual,
                            "<=", 0.0, 1e-10));
  conds.push_back(make_side("sampled-dual-weight", worst_dual, "<=",
                            1.0 + 1.0 / lam_root, 1e-9));
  conds.push_back(make_side("sampled-dual-certified", double(dual_certified),
                            "==", double(dual_samples), 0.0));

  return ConstructionResult{
      std::move(ch), std::move(tb), std::move(conds),
      "dually non-entangling channel raising Schmidt rank k to d"};
}

// ---------------------------------------------------------------------------
// Superactivation of non-entangling maps.

ConstructionResult superactivation(std::uint64_t seed, int n_samples) {
  const HermitianOperator phi2 = max_entangled(2).density();
  Matrix off = Matrix::Zero(4, 4);
  off(1, 1) = 0.5;
  off(2, 2) = 0.5;
  const HermitianOperator cross(std::move(off), {2, 2});

  TwoBranch tb(phi2, phi2, cross);
  Channel ch = choi_of_two_branch(tb);

  std::vector<SideCondition> conds;
  conds.push_back(make_side("cptp", is_cptp(ch) ? 1.0 : 0.0, "==", 1.0, 0.0));

  // Single copy: output Bell weights (p, 0, (1-p)/2, (1-p)/2) never reach
  // above one half on sampled separable inputs.
  Rng rng = rng_stream(seed, "superactivation");
  double worst_bell = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const HermitianOperator rho = random_product_state(std::vector<int>{2, 2}, rng);
    const double p = overlap(phi2, rho);
    worst_bell = std::max(worst_bell, std::max(p, 0.5 * (1.0 - p)));
  }
  conds.push_back(
      make_side("single-copy-bell-weight", worst_bell, "<=", 0.5, 1e-10));

  // Two copies on the four-qubit Bell-mixture state, factor order (A,B,A',B').
  const Channel twice = tensor(ch, ch);
  const HermitianOperator out = apply(twice, smolin());
  const Matrix expected =
      0.25 * kron(phi2.mat(), phi2.mat()) +
      (3.0 / 16.0) * kron(2.0 * cross.mat(), 2.0 * cross.mat());
  conds.push_back(make_side("two-copy-output-matches",
                            frobenius_norm(out.mat() - expected), "<=", 0.0,
                            1e-12));

  const int bb[2] = {1, 3};
  const HermitianOperator pt = partial_transpose(out, bb);
  const Vector psi_minus = (basis_ket(4, 1) - basis_ket(4, 2)) / std::sqrt(2.0);
  const Vector probe =
      kron(kron(basis_ket(2, 0), basis_ket(2, 0)).eval(), psi_minus);
  const double expectation =
      (probe.adjoint() * pt.mat() * probe).value().real();
  conds.push_back(
      make_side("pt-expectation", expectation, "==", -1.0 / 16.0, 1e-12));
  conds.push_back(make_side("pt-min-eigenvalue", min_eigenvalue(pt), "<=",
                            -1.0 / 16.0, 1e-10));

  return ConstructionResult{
      std::move(ch), std::move(tb), std::move(conds),
      "two copies of a non-entangling map create entanglement"};
}

// ---------------------------------------------------------------------------
// Witness-driven conversion to a two-qubit entangled state.

ConstructionResult witness_channel(const Witness& w, std::uint64_t seed,
                                   int n_samples) {
  const double wnorm = frobenius_norm(w.op.mat());
  if (wnorm > 1.0 + 1e-12)
    throw std::invalid_argument(
        "witness must be Frobenius-normalized to at most one");
  const int n = w.op.side();
  const Matrix id = Matrix::Identity(n, n);
  HermitianOperator effect((w.op.mat() + 2.0 * id) / 3.0, w.op.dims());

  TwoBranch tb(effect, identity_state({2, 2}), max_entangled(2).density());
  Channel ch = choi_of_two_branch(tb, {0}, w.bipartition.a_factors);

  std::vector<SideCondition> conds;
  conds.push_back(make_side("effect-min-eigenvalue", min_eigenvalue(effect),
                            ">=", 0.0, default_tols().psd * 10));
  conds.push_back(make_side("effect-max-eigenvalue",
                            eig_hermitian(effect).eigenvalues(0), "<=", 1.0,
                            default_tols().psd * 10));
  conds.push_back(make_side("cptp", is_cptp(ch) ? 1.0 : 0.0, "==", 1.0, 0.0));

  Rng rng = rng_stream(seed, "witness-channel");
  double min_effect_weight = 1.0;
  int outputs_certified = 0;
  for (int s = 0; s < n_samples; ++s) {
    const HermitianOperator sigma = random_product_state(w.op.dims(), rng);
    min_effect_weight = std::min(min_effect_weight, overlap(effect, sigma));
    const HermitianOperator out = apply(ch, sigma);
    if (ppt_test(out, Bipartition{{0}}).verdict.status ==
        SepStatus::SeparableCertified)
      ++outputs_certified;
  }
  conds.push_back(make_side("sampled-effect-weight", min_effect_weight, ">=",
                            2.0 / 3.0, 1e-10));
  conds.push_back(make_side("sampled-output-separable",
                            double(outputs_certified), "==", double(n_samples),
                            0.0));

  // Dual image of arbitrary two-qubit states is proportional to I + c W
  // with |c| <= 1/2, inside the Frobenius separable ball.
  const HermitianOperator phi2 = max_entangled(2).density();
  double worst_c = 0.0;
  int dual_certified = 0;
  const int dual_samples = std::max(20, n_samples / 4);
  for (int s = 0; s < dual_samples; ++s) {
    const HermitianOperator sigma = random_density({2, 2}, rng);
    const double t = overlap(phi2, sigma);
    const double c = (0.25 - t) / (0.5 + t);
    worst_c = std::max(worst_c, std::abs(c));
    HermitianOperator dual = dual_apply(tb, sigma);
    const Matrix closed = ((2.0 + 4.0 * t) / 12.0) * (id + c * w.op.mat());
    if (frobenius_norm(dual.mat() - closed) >
        1e-9 * std::max(1.0, dual.trace()))
      throw std::runtime_error("dual closed form mismatch");
    Matrix normalized = dual.mat() / dual.trace();
    if (gurvits_ball(HermitianOperator(std::move(normalized), w.op.dims()))
            .status == SepStatus::SeparableCertified)
      ++dual_certified;
  }
  conds.push_back(
      make_side("dual-mixing-coefficient", worst_c, "<=", 0.5, 1e-10));
  conds.push_back(make_side("sampled-dual-certified", double(dual_certified),
                            "==", double(dual_samples), 0.0));

  return ConstructionResult{
      std::move(ch), std::move(tb), std::move(conds),
      "witness-driven dually non-entangling conversion channel"};
}

// ---------------------------------------------------------------------------
// Negativity increase under a PPT-preserving channel.

ConstructionResult ppt_preserving_negativity_channel(int d, std::uint64_t seed,
                                                     int n_samples) {
  if (d < 2) throw std::invalid_argument("needs d >= 2");
  const int n = d * d;
  const Matrix id = Matrix::Identity(n, n);
  HermitianOperator effect(
      (double(d) * id + flip_operator(d).mat()) / double(d + 1), {d, d});
  TwoBranch tb(effect, identity_state({d, d}), max_entangled(d).density());
  Channel ch = choi_of_two_branch(tb);

  std::vector<SideCondition> conds;
  conds.push_back(make_side("cptp", is_cptp(ch) ? 1.0 : 0.0, "==", 1.0, 0.0));

  const Bipartition bip{{0}};
  const HermitianOperator rho = werner(d, double(d - 1));
  const double n_in = negativity(rho, bip);
  conds.push_back(make_side("input-negativity", n_in, "==", 1.0 / d, 1e-10));

  const HermitianOperator out = apply(ch, rho);
  const Matrix closed =
      (double(d - 1) / double(d + 1)) * id / double(n) +
      (2.0 / double(d + 1)) * max_entangled(d).density().mat();
  conds.push_back(make_side("output-matches-closed-form",
                            frobenius_norm(out.mat() - closed), "<=", 0.0,
                            1e-10));
  const double n_out = negativity(out, bip);
  conds.push_back(make_side("output-negativity", n_out, "==",
                            double(d - 1) / (2.0 * d), 1e-10));
  conds.push_back(
      make_side("negativity-ratio", n_out / n_in, "==", 0.5 * (d - 1), 1e-8));

  // PPT inputs keep Tr(F rho) >= 0, so the first branch weight stays at
  // least d/(d+1) and the output lands in the PPT isotropic ball.
  Rng rng = rng_stream(seed, "ppt-preserving");
  double worst_weight = 1.0;
  double worst_output_pt = 1.0;
  for (int s = 0; s < n_samples; ++s) {
    const HermitianOperator sep = random_separable_state(std::vector<int>{d, d}, 4, rng);
    worst_weight = std::min(worst_weight, overlap(effect, sep));
    const HermitianOperator mapped = apply(ch, sep);
    worst_output_pt = std::min(
        worst_output_pt, min_eigenvalue(partial_transpose(mapped, 0)));
  }
  conds.push_back(make_side("sampled-ppt-input-weight", worst_weight, ">=",
                            double(d) / (d + 1.0), 1e-10));
  conds.push_back(
      make_side("sampled-output-ppt", worst_output_pt, ">=", 0.0, 1e-10));

  const HermitianOperator choi_pt =
      partial_transpose(ch.choi, ch.a_side_choi_factors());
  const double pt_lo = min_eigenvalue(choi_pt);
  conds.push_back(
      make_side("choi-pt-min-eigenvalue", pt_lo, "<=", -1e-9, 0.0));
  conds.push_back(make_side(
      "is-ppt-map",
      pt_lo >= -default_tols().psd *
                   std::max(1.0, frobenius_norm(ch.choi.mat()))
          ? 1.0
          : 0.0,
      "==", 0.0, 0.0));

  return ConstructionResult{
      std::move(ch), std::move(tb), std::move(conds),
      "PPT-preserving channel increasing negativity by (d-1)/2"};
}

// ---------------------------------------------------------------------------
// Conversion undetected by finitely many witnesses.

namespace {

double negativity_2q(const Matrix& rho) {
  HermitianOperator op(rho, {2, 2});
  return negativity(op, Bipartition{{0}});
}

Matrix project_to_density(const Matrix& m) {
  HermitianOperator h(0.5 * (m + m.adjoint().eval()), {2, 2});
  Spectrum s = eig_hermitian(h);
  RealVector clipped = s.eigenvalues.cwiseMax(0.0);
  const double tr = clipped.sum();
  if (tr <= 0.0) return Matrix::Identity(4, 4) / 4.0;
  clipped /= tr;
  return s.unitary * clipped.cast<Cplx>().asDiagonal() * s.unitary.adjoint();
}

}  // namespace

UndetectedConversionResult undetected_conversion(
    const std::vector<Witness>& witnesses, int n_out_factors,
    const TwoQubitSubspace& subspace, std::uint64_t seed, int n_restarts) {
  if (witnesses.empty())
    throw std::invalid_argument("witness list must be nonempty");
  if (n_out_factors != 2)
    throw std::invalid_argument("output space must have two factors (A2, B2)");
  const std::vector<int>& full_dims = witnesses.front().op.dims();
  if (full_dims.size() != 4)
    throw std::invalid_argument(
        "witnesses must live on a four-factor (A2, B2, A1, B1) space");
  std::vector<int> out_dims(full_dims.begin(), full_dims.begin() + 2);
  std::vector<int> in_dims(full_dims.begin() + 2, full_dims.end());
  const int d_a = out_dims[0], d_b = out_dims[1];
  for (int i = 0; i < 2; ++i)
    if (subspace.a_basis[i] < 0 || subspace.a_basis[i] >= d_a ||
        subspace.b_basis[i] < 0 || subspace.b_basis[i] >= d_b)
      throw std::out_of_range("subspace basis index out of range");

  // Isometry embedding the two-qubit subspace into the output space.
  Matrix embed = Matrix::Zero(d_a * d_b, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      embed(subspace.a_basis[i] * d_b + subspace.b_basis[j], i * 2 + j) = 1.0;

  std::vector<Matrix> projected;  // witnesses compressed to the subspace
  const int keep[2] = {0, 1};
  for (const Witness& w : witnesses) {
    if (w.op.dims() != full_dims)
      throw std::invalid_argument("witnesses must share one Choi space");
    const HermitianOperator reduced = partial_trace(w.op, keep);
    projected.push_back(embed.adjoint() * reduced.mat() * embed);
  }

  auto feasible = [&](const Matrix& rho) {
    for (const Matrix& v : projected)
      if ((v * rho).trace().real() < -1e-12) return false;
    return true;
  };

  UndetectedConversionResult res;
  res.seed = seed;

  Matrix best;
  double best_neg = -1.0;
  const Matrix phi2 = max_entangled(2).density().mat();
  if (feasible(phi2)) {
    best = phi2;
    best_neg = negativity_2q(phi2);
  }

  Rng rng = rng_stream(seed, "undetected-conversion");
  const Matrix mixer = Matrix::Identity(4, 4) / 4.0;
  for (int restart = 0; restart < n_restarts && best_neg < 0.45; ++restart) {
    Matrix rho = random_density({2, 2}, rng).mat();
    // Pull an infeasible start toward the maximally mixed state, which
    // every projected witness accepts.
    for (int bis = 0; bis < 60 && !feasible(rho); ++bis)
      rho = 0.5 * (rho + mixer);
    if (!feasible(rho)) continue;
    double step = 0.25;
    for (int iter = 0; iter < 160; ++iter) {
      HermitianOperator h(rho, {2, 2});
      const HermitianOperator pt = partial_transpose(h, 0);
      const Spectrum s = eig_hermitian(pt);
      Matrix sign = Matrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i)
        sign += (s.eigenvalues(i) >= 0 ? 1.0 : -1.0) * s.unitary.col(i) *
                s.unitary.col(i).adjoint();
      const HermitianOperator grad_pt(0.5 * sign, {2, 2});
      const Matrix grad = partial_transpose(grad_pt, 0).mat();
      Matrix candidate = project_to_density(rho + step * grad);
      if (!feasible(candidate)) {
        // Back off along the segment to the last feasible point.
        double lo = 0.0, hi = 1.0;
        for (int bis = 0; bis < 40; ++bis) {
          const double mid = 0.5 * (lo + hi);
          if (feasible(rho + mid * (candidate - rho)))
            lo = mid;
          else
            hi = mid;
        }
        candidate = rho + lo * (candidate - rho);
      }
      if (negativity_2q(candidate) <= negativity_2q(rho) + 1e-12) {
        step *= 0.5;
        if (step < 1e-4) break;
      } else {
        rho = candidate;
      }
    }
    const double neg = negativity_2q(rho);
    if (feasible(rho) && neg > best_neg) {
      best = rho;
      best_neg = neg;
    }
  }

  if (best_neg <= 1e-6) return res;  // search failed; not a nonexistence proof

  const Matrix rho_emb = embed * best * embed.adjoint();

  const FactorIndexer in_idx(in_dims);
  std::vector<int> choi_dims = out_dims;
  choi_dims.insert(choi_dims.end(), in_dims.begin(), in_dims.end());
  HermitianOperator choi(
      kron(rho_emb, Matrix::Identity(in_idx.side(), in_idx.side())),
      choi_dims);
  Channel ch{std::move(choi), in_dims, out_dims, {0}, {0}};

  res.found = true;
  res.negativity = best_neg;
  for (const Witness& w : witnesses)
    res.witness_traces.push_back((w.op.mat() * ch.choi.mat()).trace().real());
  res.rho = HermitianOperator(rho_emb, out_dims);
  res.channel = std::move(ch);
  return res;
}

// ---------------------------------------------------------------------------
// Stochastic conversion undetected by witnesses.

namespace {

/// (I otimes <p|) W (I otimes |p>), an operator on the out space.
Matrix contract_in_vector(const Matrix& w, int d_out, const Vector& p) {
  const int d_in = static_cast<int>(p.size());
  Matrix r = Matrix::Zero(d_out, d_out);
  for (int x = 0; x < d_out; ++x)
    for (int y = 0; y < d_out; ++y) {
      Cplx acc = 0.0;
      for (int m = 0; m < d_in; ++m)
        for (int mp = 0; mp < d_in; ++mp)
          acc += std::conj(p(m)) * w(x * d_in + m, y * d_in + mp) * p(mp);
      r(x, y) = acc;
    }
  return r;
}

}  // namespace

StochasticOmegaResult stochastic_omega(
    const std::vector<HermitianOperator>& witnesses, const PureState& psi,
    const PureState& psi_hat, std::uint64_t seed, int sample_budget) {
  const FactorIndexer in_idx(psi.dims);
  const FactorIndexer out_idx(psi_hat.dims);
  const int d_in = in_idx.side();
  const int d_out = out_idx.side();
  std::vector<int> choi_dims = psi_hat.dims;
  choi_dims.insert(choi_dims.end(), psi.dims.begin(), psi.dims.end());
  for (const HermitianOperator& w : witnesses)
    if (w.dims() != choi_dims)
      throw std::invalid_argument("witness dims must match (out, in) factors");

  const Vector psi_star = psi.amplitudes.conjugate();

  // Product vector orthogonal to psi*: prefer a computational basis one,
  // otherwise rotate the first party against the contraction of psi* with
  // |0...0> on the remaining parties.
  Vector perp;
  bool computational = false;
  for (int m = 0; m < d_in && !computational; ++m) {
    if (std::abs(psi_star(m)) <= 1e-14) {
      perp = basis_ket(d_in, m);
      computational = true;
    }
  }
  if (!computational) {
    const int d1 = psi.dims[0];
    const int rest = d_in / d1;
    Vector v(d1);
    for (int i = 0; i < d1; ++i) v(i) = psi_star(i * rest);
    Vector u;
    if (v.norm() <= 1e-14) {
      u = basis_ket(d1, 0);
    } else {
      v /= v.norm();
      int pick = 0;
      double smallest = 2.0;
      for (int i = 0; i < d1; ++i)
        if (std::abs(v(i)) < smallest) {
          smallest = std::abs(v(i));
          pick = i;
        }
      u = basis_ket(d1, pick) - std::conj(v(pick)) * v;
      u /= u.norm();
    }
    perp = Vector::Zero(d_in);
    for (int i = 0; i < d1; ++i) perp(i * rest) = u(i);
  }

  const Matrix p_perp = perp * perp.adjoint();
  const Matrix id_in = Matrix::Identity(d_in, d_in);

  const int n_w = static_cast<int>(witnesses.size());
  std::vector<Matrix> r_ops(n_w), s_ops(n_w);
  std::vector<int> out_keep;
  for (int k = 0; k < static_cast<int>(psi_hat.dims.size()); ++k)
    out_keep.push_back(k);
  for (int i = 0; i < n_w; ++i) {
    r_ops[i] = contract_in_vector(witnesses[i].mat(), d_out, perp);
    const HermitianOperator traced = partial_trace(
        HermitianOperator(witnesses[i].mat(), choi_dims), out_keep);
    s_ops[i] = traced.mat() - r_ops[i];
  }

  double b = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_w; ++i) {
    const double bi =
        (psi_hat.amplitudes.adjoint() * s_ops[i] * psi_hat.amplitudes)
            .value()
            .real();
    b = std::min(b, bi);
  }

  Matrix omega = Matrix::Zero(d_out, d_out);
  double a = 0.0;
  if (b < 0.0) {
    Rng rng = rng_stream(seed, "stochastic-omega");
    for (int i = 0; i < n_w; ++i) {
      const double rn = frobenius_norm(r_ops[i]);
      if (rn <= 1e-13) continue;  // contracted witness vanishes; see below
      double best_val = -1.0;
      Matrix best_rho;
      for (int s = 0; s < sample_budget; ++s) {
        const Vector v = random_product_vector(psi_hat.dims, rng);
        const double val = (v.adjoint() * r_ops[i] * v).value().real();
        if (val > best_val) {
          best_val = val;
          best_rho = v * v.adjoint();
        }
        if (best_val > 0.05 * rn) break;
      }
      if (best_val <= 0.0)
        throw std::runtime_error(
            "stochastic omega: no product state with positive witness "
            "contraction found within budget (seed " +
            std::to_string(seed) + ")");
      omega += best_rho;
    }
    a = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_w; ++i) {
      if (frobenius_norm(r_ops[i]) <= 1e-13) continue;
      a = std::min(a, (r_ops[i] * omega).trace().real());
    }
    if (!(a > 0.0))
      throw std::runtime_error(
          "stochastic omega: contracted witness sum is not strictly "
          "positive (seed " +
          std::to_string(seed) + ")");
  }

  const double coeff = b < 0.0 ? -b / a : 0.0;
  const Matrix psi_hat_rho =
      psi_hat.amplitudes * psi_hat.amplitudes.adjoint();
  Matrix omega_full =
      coeff * kron(omega, p_perp) + kron(psi_hat_rho, id_in - p_perp);
  HermitianOperator omega_op(std::move(omega_full), choi_dims);

  Channel map{omega_op, psi.dims, psi_hat.dims, {}, {}};

  StochasticOmegaResult res{std::move(omega_op),
                            std::move(map),
                            perp,
                            computational,
                            a,
                            b,
                            {},
                            0.0};
  for (int i = 0; i < n_w; ++i)
    res.witness_traces.push_back(
        (witnesses[i].mat() * res.omega.mat()).trace().real());

  const HermitianOperator image = apply(res.map, psi.density());
  const double tr = image.trace();
  res.output_fidelity =
      tr > 0.0
          ? (psi_hat.amplitudes.adjoint() * image.mat() * psi_hat.amplitudes)
                    .value()
                    .real() /
                tr
          : 0.0;
  return res;
}

// ---------------------------------------------------------------------------
// k-non-entangling Werner maps.

ConstructionResult k_ne_channel(int d, int k, double beta, std::uint64_t seed,
                                int n_samples) {
  if (k < 2 || k >= d) throw std::invalid_argument("needs 2 <= k < d");
  const double lower = double(d - (k + 1)) / double(k + 1);
  const double upper = double(d - k) / double(k);
  if (!(beta > lower) || beta > upper + 1e-12)
    throw std::invalid_argument(
        "beta must lie in ((d-(k+1))/(k+1), (d-k)/k]");

  const HermitianOperator rho_w = werner(d, beta);
  Matrix ket00 = Matrix::Zero(4, 4);
  ket00(0, 0) = 1.0;
  Matrix ket11 = Matrix::Zero(4, 4);
  ket11(3, 3) = 1.0;
  TwoBranch tb(rho_w, HermitianOperator(std::move(ket00), {2, 2}),
               HermitianOperator(std::move(ket11), {2, 2}));
  Channel ch = choi_of_two_branch(tb);

  std::vector<SideCondition> conds;
  conds.push_back(make_side("cptp", is_cptp(ch) ? 1.0 : 0.0, "==", 1.0, 0.0));

  const Vector phi_vec = max_entangled(d).amplitudes * std::sqrt(double(d));
  const double scale = 1.0 / (double(d) * d - (beta + 1.0));

  // Sampled k-dimensional projections plus the adversarial P = Q case: the
  // projected Werner block is I - c (beta+1) PT(psi) with c <= k/d, and the
  // Frobenius ball certifies it separable whenever c (beta+1) <= 1.
  Rng rng = rng_stream(seed, "k-ne-channel");
  double worst_c_amount = 0.0;
  double worst_residual = 0.0;
  for (int s = 0; s <= n_samples; ++s) {
    Matrix p, q;
    if (s == 0) {
      p = Matrix::Identity(d, d).topRows(k);
      q = p;
    } else {
      p = random_co_isometry(k, d, rng);
      q = random_co_isometry(k, d, rng);
    }
    const Matrix pq = kron(p, q);
    const Matrix block = pq * rho_w.mat() * pq.adjoint();
    const Vector psi_vec = kron(p.conjugate().eval(), q) * phi_vec / double(d);
    const double c = psi_vec.squaredNorm() * double(d);
    worst_c_amount = std::max(worst_c_amount, c * (beta + 1.0));
    const Vector psi_n = psi_vec / psi_vec.norm();
    const HermitianOperator psi_proj(psi_n * psi_n.adjoint(), {k, k});
    const Matrix closed =
        scale * (Matrix::Identity(k * k, k * k) -
                 c * (beta + 1.0) * partial_transpose(psi_proj, 0).mat());
    worst_residual = std::max(worst_residual, frobenius_norm(block - closed));
  }
  conds.push_back(make_side("projected-block-identity", worst_residual, "<=",
                            0.0, 1e-10));
  conds.push_back(make_side("projected-gurvits", worst_c_amount, "<=", 1.0,
                            1e-10));

  // P = Q on k+1 dimensions: the projected partial transpose dips negative.
  {
    const Matrix p = Matrix::Identity(d, d).topRows(k + 1);
    const Matrix pq = kron(p, p);
    const HermitianOperator block(pq * rho_w.mat() * pq.adjoint(),
                                  {k + 1, k + 1});
    const double lo = min_eigenvalue(partial_transpose(block, 0));
    const double expected =
        scale * (1.0 - double(k + 1) / double(d) * (beta + 1.0));
    conds.push_back(
        make_side("lifted-pt-min-eigenvalue", lo, "==", expected, 1e-10));
    conds.push_back(make_side("lifted-pt-negative", lo, "<=", 0.0, 0.0));
  }

  return ConstructionResult{
      std::move(ch), std::move(tb), std::move(conds),
      "k-non-entangling Werner map that fails at k+1 ancilla dimensions"};
}

KneSampleResult k_ne_sampled_test(
    const Channel& ch, int k, int n_samples, std::uint64_t seed,
    const std::vector<std::pair<Matrix, Matrix>>& extra_pairs) {
  if (ch.in_dims.size() != 2 || ch.in_dims[0] != ch.in_dims[1])
    throw std::invalid_argument("sampled test expects a d x d input space");
  const int d = ch.in_dims[0];
  if (k < 1 || k > d) throw std::invalid_argument("needs 1 <= k <= d");
  const int n_out = static_cast<int>(ch.out_dims.size());
  const int d_out = ch.out_dim();
  const Matrix id_out = Matrix::Identity(d_out, d_out);

  std::vector<int> block_dims = ch.out_dims;
  block_dims.push_back(k);
  block_dims.push_back(k);
  Bipartition bip;
  bip.a_factors = ch.out_a;
  bip.a_factors.push_back(n_out);

  KneSampleResult res;
  Rng rng = rng_stream(seed, "k-ne-sampled");
  for (int s = -1 - static_cast<int>(extra_pairs.size()); s < n_samples; ++s) {
    Matrix p, q;
    if (s == -1) {
      p = Matrix::Identity(d, d).topRows(k);
      q = p;
    } else if (s < -1) {
      const auto& pair = extra_pairs[static_cast<std::size_t>(-s - 2)];
      p = pair.first;
      q = pair.second;
    } else {
      p = random_co_isometry(k, d, rng);
      q = random_co_isometry(k, d, rng);
    }
    const Matrix big = kron(id_out, kron(p, q));
    Matrix block = big * ch.choi.mat() * big.adjoint();
    const double tr = block.trace().real();
    if (tr <= 1e-14) continue;
    block /= tr;
    const SeparabilityVerdict v =
        certify(HermitianOperator(std::move(block), block_dims), bip);
    if (v.status == SepStatus::EntangledCertified) {
      ++res.violations;
      if (v.value < res.worst_value) {
        res.worst_value = v.value;
        res.evidence = v.evidence;
      }
      res.verdict = KneVerdict::NotKNonEntangling;
    }
  }
  return res;
}

}  // namespace entkit
