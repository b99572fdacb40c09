#include <doctest.h>

#include <cmath>

#include "entkit/measures.hpp"
#include "entkit/random.hpp"
#include "entkit/separability.hpp"

using namespace entkit;

TEST_CASE("ppt test verdicts") {
  const Bipartition bip{{0}};
  const auto bell = ppt_test(max_entangled(2).density(), bip);
  CHECK(bell.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(bell.verdict.status == SepStatus::EntangledCertified);

  // Isotropic state exactly at the threshold: PT minimum vanishes.
  const auto boundary = ppt_test(isotropic(2, 2.0 / 3.0), bip);
  CHECK(std::abs(boundary.min_eigenvalue) < 1e-10);
  CHECK(boundary.verdict.status == SepStatus::SeparableCertified);

  // Separable Werner state on 3x3: PPT alone cannot certify.
  const auto w = ppt_test(werner(3, 0.0), bip);
  CHECK(w.verdict.status == SepStatus::Undecided);
}

TEST_CASE("gurvits ball") {
  CHECK(gurvits_ball(HermitianOperator(Matrix::Identity(6, 6) / 6.0, {2, 3}))
            .status == SepStatus::SeparableCertified);

  // (I + psi) / (n + 1) for pure psi is inside the ball.
  Rng rng = rng_stream(61, "gurvits");
  const Vector v = random_unit_vector(9, rng);
  HermitianOperator mixed(
      (Matrix::Identity(9, 9) + v * v.adjoint()) / 10.0, {3, 3});
  CHECK(gurvits_ball(mixed).status == SepStatus::SeparableCertified);

  // The Bell state sits far outside: ||4 phi - I||_F = sqrt(12).
  const auto bell = gurvits_ball(max_entangled(2).density());
  CHECK(bell.status == SepStatus::Undecided);
  CHECK(bell.value == doctest::Approx(std::sqrt(12.0)).epsilon(1e-12));
}

TEST_CASE("pure plus noise threshold") {
  CHECK(pure_plus_noise_threshold(SchmidtVector({0.5, 0.5}), 2) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(pure_plus_noise_threshold(SchmidtVector({1.0, 0.0}), 2)));

  const SchmidtVector lam({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0});
  CHECK(pure_plus_noise_threshold(lam, 3) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("pure plus noise threshold agrees with PT bisection") {
  Rng rng = rng_stream(67, "noise-bisect");
  for (int trial = 0; trial < 6; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const SchmidtVector lam(random_schmidt_coefficients(d, rng, 5e-2));
    const PureState psi = pure_from_schmidt(lam);
    const double threshold = pure_plus_noise_threshold(lam, d);
    const double closed = 1.0 / (1.0 + threshold);
    auto min_pt = [&](double p) {
      HermitianOperator rho(
          p * psi.density().mat() +
              (1.0 - p) * Matrix::Identity(d * d, d * d) / double(d * d),
          {d, d});
      return min_eigenvalue(partial_transpose(rho, 0));
    };
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 40; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (min_pt(mid) < 0.0 ? hi : lo) = mid;
    }
    const double bisected = 0.5 * (lo + hi);
    if (d == 2) {
      CHECK(bisected == doctest::Approx(closed).epsilon(1e-6));
    } else {
      // On 3x3 PPT is only necessary: the NPT region must not intrude on
      // the certified-separable side.
      CHECK(bisected >= closed - 1e-6);
    }
  }
}

TEST_CASE("bell diagonal entanglement criterion") {
  CHECK(bell_diagonal_entangled({1.0, 0.0, 0.0, 0.0}));
  CHECK_FALSE(bell_diagonal_entangled({0.5, 0.5, 0.0, 0.0}));
  CHECK(bell_diagonal_entangled({0.6, 0.2, 0.1, 0.1}));
  CHECK_THROWS_AS(bell_diagonal_entangled({0.9, 0.3, 0.0, 0.0}),
                  std::invalid_argument);

  // Weight-1/2 mixture flips exactly at PT eigenvalue zero.
  const Vector plus = max_entangled(2).amplitudes;
  Matrix d = Matrix::Zero(4, 4);
  d(1, 1) = 0.5;
  d(2, 2) = 0.5;
  HermitianOperator rho(0.5 * (plus * plus.adjoint()) + 0.5 * d.eval(),
                        {2, 2});
  CHECK(std::abs(min_eigenvalue(partial_transpose(rho, 0))) < 1e-12);

  HermitianOperator rho2(0.6 * (plus * plus.adjoint()) + 0.4 * d.eval(),
                         {2, 2});
  CHECK(ppt_test(rho2, Bipartition{{0}}).verdict.status ==
        SepStatus::EntangledCertified);
}

TEST_CASE("witness from NPT state") {
  const Bipartition bip{{0}};
  const Witness w = witness_from_npt(max_entangled(2).density(), bip);
  CHECK(frobenius_norm(w.op.mat()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((w.op.mat() * max_entangled(2).density().mat()).trace().real() ==
        doctest::Approx(-0.5).epsilon(1e-12));

  // The negative direction of the Bell state's partial transpose is the
  // singlet; the witness is its partial transpose.
  const Vector singlet = (basis_ket(4, 1) - basis_ket(4, 2)) / std::sqrt(2.0);
  HermitianOperator proj(singlet * singlet.adjoint(), {2, 2});
  CHECK(frobenius_norm(w.op.mat() - partial_transpose(proj, 0).mat()) <
        1e-10);

  const Witness w2 = witness_from_npt(werner(4, 1.0), bip);
  CHECK((w2.op.mat() * werner(4, 1.0).mat()).trace().real() < -1e-6);

  CHECK_THROWS_AS(witness_from_npt(werner(3, -0.5), bip), std::domain_error);
}

TEST_CASE("witness positivity on sampled separable states") {
  Rng rng = rng_stream(71, "witness-positive");
  int produced = 0;
  while (produced < 50) {
    std::vector<int> dims = (produced % 2 == 0) ? std::vector<int>{2, 2}
                                                : std::vector<int>{3, 3};
    HermitianOperator rho = random_density(dims, rng);
    const HermitianOperator pt = partial_transpose(rho, 0);
    if (min_eigenvalue(pt) > -1e-6) continue;
    ++produced;
    const Witness w = witness_from_npt(rho, Bipartition{{0}});
    CHECK(frobenius_norm(w.op.mat()) == doctest::Approx(1.0).epsilon(1e-12));
    for (int s = 0; s < 200; ++s) {
      const HermitianOperator sep = random_product_state(dims, rng);
      CHECK((w.op.mat() * sep.mat()).trace().real() >= -1e-10);
    }
  }
}

TEST_CASE("maximal separable overlap equals top Schmidt coefficient") {
  for (int k : {2, 3, 4})
    CHECK(max_sep_overlap_pure(max_entangled(k)) ==
          doctest::Approx(1.0 / k).epsilon(1e-12));

  Vector prod = Vector::Zero(6);
  prod(1) = 1.0;
  CHECK(max_sep_overlap_pure(PureState(prod, {2, 3})) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Rng rng = rng_stream(73, "overlap");
  const PureState psi = pure_from_schmidt(SchmidtVector({0.8, 0.2}));
  double best = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vector v = random_product_vector(psi.dims, rng);
    best = std::max(best, std::norm((v.adjoint() * psi.amplitudes).value()));
  }
  CHECK(best <= 0.8 + 1e-10);

  // Alternating ascent over product vectors from a random start reaches the
  // bound (independent of the SVD route).
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
  CHECK(refined == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(refined <= 0.8 + 1e-10);
}

TEST_CASE("robustness noise state and its certificate") {
  // Bell state: sigma* mixes the two off-diagonal computational products.
  const auto rs = robustness_sigma_star(SchmidtVector({0.5, 0.5}));
  CHECK(rs.certificate.robustness == doctest::Approx(1.0).epsilon(1e-12));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 0.5;
  expected(2, 2) = 0.5;
  CHECK(frobenius_norm(rs.sigma.mat() - expected) < 1e-12);
  CHECK(rs.certificate.decomposition_residual <= 1e-10);

  // (phi + sigma*) / 2 sits exactly on the PPT boundary.
  HermitianOperator mix(
      0.5 * max_entangled(2).density().mat() + 0.5 * rs.sigma.mat(), {2, 2});
  CHECK(std::abs(min_eigenvalue(partial_transpose(mix, 0))) < 1e-12);

  // R(phi+_k) = k - 1 through the same normalization.
  for (int k : {2, 3, 4}) {
    std::vector<double> lam(k, 1.0 / k);
    const auto r = robustness_sigma_star(SchmidtVector(lam));
    CHECK(r.certificate.robustness ==
          doctest::Approx(double(k - 1)).epsilon(1e-12));
  }

  // Non-uniform coefficients: the phase average still reproduces the
  // mixture exactly.
  const auto r2 = robustness_sigma_star(SchmidtVector({0.5, 0.3, 0.2}));
  CHECK(r2.certificate.decomposition_residual <= 1e-10);
  CHECK(r2.certificate.product_terms == 64);

  CHECK_THROWS_AS(robustness_sigma_star(SchmidtVector({1.0})),
                  std::domain_error);
}

TEST_CASE("robustness certificate convex-combination identity") {
  Rng rng = rng_stream(79, "robustness-convex");
  const SchmidtVector lam({0.6, 0.25, 0.15});
  const auto rs = robustness_sigma_star(lam);
  const double r = rs.certificate.robustness;
  const HermitianOperator psi = pure_from_schmidt(lam).density();
  const Matrix boundary = (psi.mat() + r * rs.sigma.mat()) / (1.0 + r);
  std::uniform_real_distribution<double> unif(0.0, 1.0 / (1.0 + r));
  for (int i = 0; i < 20; ++i) {
    const double p = unif(rng);
    const Matrix direct = p * psi.mat() + (1.0 - p) * rs.sigma.mat();
    const double w = p * (1.0 + r);
    CHECK(w >= 0.0);
    CHECK(w <= 1.0);
    const Matrix convex = w * boundary + (1.0 - w) * rs.sigma.mat();
    CHECK(frobenius_norm(direct - convex) < 1e-12);
  }
}

TEST_CASE("ccnr realignment values") {
  const Bipartition bip{{0}};
  Rng rng = rng_stream(83, "ccnr");
  const HermitianOperator prod =
      random_product_state(std::vector<int>{2, 2}, rng);
  CHECK(ccnr_value(prod, bip) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(ccnr_value(max_entangled(2).density(), bip) ==
        doctest::Approx(2.0).epsilon(1e-10));

  CHECK(ccnr_value(HermitianOperator(Matrix::Identity(4, 4) / 4.0, {2, 2}),
                   bip) <= 1.0);
}

TEST_CASE("certification ladder cross-checks") {
  const Bipartition bip{{0}};
  // Every separable certificate must be PPT.
  Rng rng = rng_stream(89, "ladder");
  for (int i = 0; i < 40; ++i) {
    const HermitianOperator rho = random_density({2, 2}, rng);
    const auto verdict = certify(rho, bip);
    if (verdict.status == SepStatus::SeparableCertified)
      CHECK(min_eigenvalue(partial_transpose(rho, 0)) >= -1e-10);
    if (verdict.status == SepStatus::EntangledCertified)
      CHECK(min_eigenvalue(partial_transpose(rho, 0)) < 1e-12);
  }
  // Pure-plus-noise family detection on a 3x3 instance.
  const SchmidtVector lam({0.5, 0.3, 0.2});
  const PureState psi = pure_from_schmidt(lam);
  const double p_sep =
      0.9 / (1.0 + pure_plus_noise_threshold(lam, 3));
  HermitianOperator rho(
      p_sep * psi.density().mat() +
          (1.0 - p_sep) * Matrix::Identity(9, 9) / 9.0,
      {3, 3});
  CHECK(certify(rho, bip).status == SepStatus::SeparableCertified);
}
