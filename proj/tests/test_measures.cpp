#include <doctest.h>

#include <cmath>

#include "entkit/measures.hpp"
#include "entkit/random.hpp"

using namespace entkit;

TEST_CASE("renyi entropy special cases and flat vectors") {
  for (int k : {2, 3, 5}) {
    std::vector<double> lam(k, 1.0 / k);
    const SchmidtVector v(lam);
    const double expected = std::log2(double(k));
    for (double alpha :
         {0.0, 0.3, 1.0, 2.0, std::numeric_limits<double>::infinity()})
      CHECK(renyi_entropy(v, alpha) ==
            doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK_THROWS_AS(renyi_entropy(SchmidtVector({1.0}), -0.5),
                  std::invalid_argument);
}

TEST_CASE("the rank-raising Schmidt vector has unit half-entropy") {
  const SchmidtVector lam({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0});
  CHECK(renyi_entropy(lam, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  // E_2 = log2(324/258) by direct arithmetic on the coefficients.
  CHECK(renyi_entropy(lam, 2.0) ==
        doctest::Approx(std::log2(324.0 / 258.0)).epsilon(1e-12));
}

TEST_CASE("renyi entropy is continuous at alpha = 1 and monotone in alpha") {
  Rng rng = rng_stream(97, "renyi-continuity");
  for (int trial = 0; trial < 30; ++trial) {
    const SchmidtVector lam(random_schmidt_coefficients(2 + trial % 5, rng));
    const double h1 = renyi_entropy(lam, 1.0);
    CHECK(std::abs(renyi_entropy(lam, 1.0 + 1e-6) - h1) <= 1e-5);
    CHECK(std::abs(renyi_entropy(lam, 1.0 - 1e-6) - h1) <= 1e-5);
    double prev = renyi_entropy(lam, 0.0);
    for (int g = 1; g <= 20; ++g) {
      const double alpha = 0.2 * g;
      const double cur = renyi_entropy(lam, alpha);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("robustness of pure states") {
  for (int k : {2, 3, 4, 6}) {
    std::vector<double> lam(k, 1.0 / k);
    CHECK(robustness_pure(SchmidtVector(lam)) ==
          doctest::Approx(double(k - 1)).epsilon(1e-12));
  }
  CHECK(robustness_pure(SchmidtVector({1.0})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(robustness_pure(SchmidtVector({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0})) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // E_{1/2} = log2(R + 1) exactly.
  Rng rng = rng_stream(101, "robustness-identity");
  for (int trial = 0; trial < 50; ++trial) {
    const SchmidtVector lam(random_schmidt_coefficients(2 + trial % 5, rng));
    CHECK(renyi_entropy(lam, 0.5) ==
          doctest::Approx(std::log2(robustness_pure(lam) + 1.0))
              .epsilon(1e-12));
  }
}

TEST_CASE("negativity values") {
  const Bipartition bip{{0}};
  for (int d : {2, 3, 4, 5})
    CHECK(negativity(max_entangled(d).density(), bip) ==
          doctest::Approx(0.5 * (d - 1)).epsilon(1e-10));
  for (int d : {3, 4, 5, 6})
    CHECK(negativity(werner(d, double(d - 1)), bip) ==
          doctest::Approx(1.0 / d).epsilon(1e-10));
  CHECK(std::abs(negativity(werner(3, -0.5), bip)) < 1e-12);
  CHECK(std::abs(negativity(isotropic(3, 0.9), bip)) < 1e-12);
}

TEST_CASE("renyi relative entropy basics") {
  Rng rng = rng_stream(103, "relative-entropy");
  for (double alpha : {0.3, 1.0, 1.7}) {
    const HermitianOperator rho = random_density({2, 2}, rng);
    CHECK(std::abs(renyi_relative_entropy(rho, rho, alpha).as_double()) <
          1e-10);
  }

  // alpha = 1 equals the standard relative entropy on full-support pairs.
  const HermitianOperator rho = random_density({3}, rng);
  const HermitianOperator sigma = random_density({3}, rng);
  const Spectrum sr = eig_hermitian(rho);
  const Spectrum ss = eig_hermitian(sigma);
  double expected = 0.0;
  for (int i = 0; i < 3; ++i)
    expected += sr.eigenvalues(i) * std::log2(sr.eigenvalues(i));
  for (int i = 0; i < 3; ++i) {
    const double overlap =
        (ss.unitary.col(i).adjoint() * rho.mat() * ss.unitary.col(i))
            .value()
            .real();
    expected -= overlap * std::log2(ss.eigenvalues(i));
  }
  CHECK(renyi_relative_entropy(rho, sigma, 1.0).as_double() ==
        doctest::Approx(expected).epsilon(1e-10));

  // Support violation with alpha >= 1 is infinite.
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const HermitianOperator a(p0, {2}), b(p1, {2});
  CHECK(renyi_relative_entropy(a, b, 1.0).is_inf());
  CHECK(renyi_relative_entropy(a, b, 1.5).is_inf());
  CHECK(renyi_relative_entropy(a, b, 0.5).is_inf());  // orthogonal supports

  CHECK_THROWS_AS(renyi_relative_entropy(a, a, -1.0), std::invalid_argument);
}

TEST_CASE("pure-state relative entropy reduces to the sigma overlap form") {
  // psi = phi+_2 against the diagonal computational mixture at alpha = 1/2.
  const PureState psi = max_entangled(2);
  Matrix diag = Matrix::Zero(4, 4);
  diag(0, 0) = 0.5;
  diag(3, 3) = 0.5;
  const HermitianOperator sigma(diag, {2, 2});
  const ExtendedReal s =
      renyi_relative_entropy(psi.density(), sigma, 0.5);
  CHECK(s.as_double() == doctest::Approx(1.0).epsilon(1e-10));

  // General route matches the <psi| sigma^{1-alpha} |psi> reduction.
  Rng rng = rng_stream(107, "pure-reduction");
  for (double alpha : {0.3, 0.6, 1.4, 2.0}) {
    const SchmidtVector lam(random_schmidt_coefficients(3, rng));
    const PureState p = pure_from_schmidt(lam);
    const HermitianOperator sig = random_density({3, 3}, rng);
    const Matrix pow = matrix_power_on_support(sig, 1.0 - alpha);
    const double overlap =
        (p.amplitudes.adjoint() * pow * p.amplitudes).value().real();
    const double reduced = std::log2(overlap) / (alpha - 1.0);
    CHECK(renyi_relative_entropy(p.density(), sig, alpha).as_double() ==
          doctest::Approx(reduced).epsilon(1e-9));
  }
}

TEST_CASE("closed-form relative entropy of entanglement for pure states") {
  const SchmidtVector lam({16.0 / 18.0, 1.0 / 18.0, 1.0 / 18.0});
  CHECK(relative_entropy_of_entanglement_pure(lam, 0.0) ==
        doctest::Approx(-std::log2(16.0 / 18.0)).epsilon(1e-12));
  CHECK(relative_entropy_of_entanglement_pure(lam, 1.0) ==
        doctest::Approx(renyi_entropy(lam, 1.0)).epsilon(1e-12));
  CHECK(relative_entropy_of_entanglement_pure(lam, 0.5) ==
        doctest::Approx(renyi_entropy(lam, 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(relative_entropy_of_entanglement_pure(lam, 2.5),
                  std::invalid_argument);
}

TEST_CASE("optimal sigma achieves the closed form") {
  // alpha = 1: sigma carries the Schmidt weights and S_1 = H(lambda).
  const SchmidtVector lam({0.7, 0.2, 0.1});
  const PureState psi = pure_from_schmidt(lam);
  const HermitianOperator sigma1 = optimal_sigma_alpha(lam, 1.0);
  CHECK(renyi_relative_entropy(psi.density(), sigma1, 1.0).as_double() ==
        doctest::Approx(renyi_entropy(lam, 1.0)).epsilon(1e-10));

  // alpha = 2, lambda = (3/4, 1/4): sigma carries the square roots,
  // weights (sqrt(3), 1)/(sqrt(3) + 1). That choice, and no other diagonal
  // reweighting, reproduces E_{1/2} (checked below against the entropy).
  const SchmidtVector lam2({0.75, 0.25});
  const HermitianOperator sigma2 = optimal_sigma_alpha(lam2, 2.0);
  const double s3 = std::sqrt(3.0);
  CHECK(sigma2.mat()(0, 0).real() ==
        doctest::Approx(s3 / (s3 + 1.0)).epsilon(1e-12));
  CHECK(sigma2.mat()(3, 3).real() ==
        doctest::Approx(1.0 / (s3 + 1.0)).epsilon(1e-12));
  const PureState psi2 = pure_from_schmidt(lam2);
  CHECK(renyi_relative_entropy(psi2.density(), sigma2, 2.0).as_double() ==
        doctest::Approx(renyi_entropy(lam2, 0.5)).epsilon(1e-10));

  // Uniform coefficients give the normalized projector onto the diagonal.
  const HermitianOperator sigma3 =
      optimal_sigma_alpha(SchmidtVector({0.5, 0.5}), 0.7);
  CHECK(sigma3.mat()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sigma3.mat()(3, 3).real() == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(optimal_sigma_alpha(lam, 0.0), std::invalid_argument);
}

TEST_CASE("extended reals carry an explicit infinity tag") {
  CHECK(ExtendedReal::inf().is_inf());
  CHECK(std::isinf(ExtendedReal::inf().as_double()));
  CHECK_FALSE(ExtendedReal::finite(3.0).is_inf());
  CHECK(ExtendedReal::finite(3.0).as_double() == 3.0);
}
