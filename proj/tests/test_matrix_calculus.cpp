#include <doctest.h>

#include <cmath>

#include "entkit/matrix_calculus.hpp"
#include "entkit/measures.hpp"
#include "entkit/random.hpp"

using namespace entkit;

namespace {
constexpr double kLn2 = 0.6931471805599453;

// Independent finite-difference oracle: third-order one-sided stencil.
double fd_trace_derivative(const HermitianOperator& p, const ScalarFunction& f,
                           const HermitianOperator& a,
                           const HermitianOperator& b, double h) {
  auto g = [&](double t) {
    const Spectrum s =
        eig_hermitian(HermitianOperator(a.mat() + t * b.mat(), a.dims()));
    double acc = 0.0;
    for (int i = 0; i < a.side(); ++i)
      acc += f.value(s.eigenvalues(i)) *
             (s.unitary.col(i).adjoint() * p.mat() * s.unitary.col(i))
                 .value()
                 .real();
    return acc;
  };
  return (-11.0 * g(0.0) + 18.0 * g(h) - 9.0 * g(2.0 * h) + 2.0 * g(3.0 * h)) /
         (6.0 * h);
}
}  // namespace

TEST_CASE("divided differences") {
  const ScalarFunction lg = ScalarFunction::log();
  CHECK(divided_difference(lg, 2.0, 2.0) == doctest::Approx(0.5));
  CHECK(divided_difference(ScalarFunction::power(0.5), 4.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(divided_difference(lg, -1.0, 2.0), std::domain_error);

  // Continuity across the coincidence switch: at the switch separation the
  // quotient and the midpoint derivative agree to second order.
  const double x = 1.3;
  for (const ScalarFunction& f :
       {ScalarFunction::log(), ScalarFunction::power(-0.5)}) {
    const double y = x * (1.0 + 1e-7);
    const double quotient = (f.value(x) - f.value(y)) / (x - y);
    const double midpoint = f.deriv(0.5 * (x + y));
    CHECK(std::abs(quotient - midpoint) < 1e-8);
  }
}

TEST_CASE("scalar function admissibility flags") {
  CHECK(ScalarFunction::log().admissible());
  CHECK(ScalarFunction::power(0.5).admissible());
  CHECK(ScalarFunction::power(-0.5).admissible());
  CHECK_FALSE(ScalarFunction::power(-1.0).admissible());
  CHECK(ScalarFunction::power(-1.0).lower_bound_only());
  CHECK_FALSE(ScalarFunction::power(-0.5).lower_bound_only());
}

TEST_CASE("technical lemma inequality sweep") {
  Rng rng = rng_stream(109, "technical");
  std::uniform_real_distribution<double> unif(1e-6, 1.0);
  for (double alpha : {0.25, 0.5, 0.75, 1.5, 1.9, 2.0}) {
    const ScalarFunction f = ScalarFunction::power(1.0 - alpha);
    for (int i = 0; i < 10000; ++i) {
      const double p = unif(rng), q = unif(rng);
      const double val =
          std::sqrt(p * q) *
          divided_difference(f, std::pow(p, 1.0 / alpha),
                             std::pow(q, 1.0 / alpha)) /
          (1.0 - alpha);
      CHECK(val >= -1e-12);
      CHECK(val <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("power ratio bound by the geometric mean") {
  Rng rng = rng_stream(113, "xpyp");
  std::uniform_real_distribution<double> unif(1e-4, 2.0);
  std::uniform_real_distribution<double> runif(1e-3, 1.0 - 1e-3);
  for (int i = 0; i < 10000; ++i) {
    const double x = unif(rng);
    double y = unif(rng);
    if (std::abs(x - y) < 1e-2) y += 0.1;
    const double r = (i % 2 == 0 ? 1.0 : -1.0) * runif(rng);
    const double lhs = (std::pow(x, r) - std::pow(y, r)) / (r * (x - y));
    const double rhs = std::pow(std::sqrt(x * y), r - 1.0);
    CHECK(lhs <= rhs + 1e-12 * std::max(1.0, rhs));
  }
}

TEST_CASE("phi map on commuting inputs acts entrywise") {
  RealVector eigs(3);
  eigs << 2.0, 1.0, 0.5;
  Matrix a = Matrix::Zero(3, 3);
  Matrix b = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    a(i, i) = eigs(i);
    b(i, i) = double(i) - 1.0;
  }
  const Matrix out =
      phi_map(ScalarFunction::log(), HermitianOperator(a, {3}), b);
  for (int i = 0; i < 3; ++i)
    CHECK(out(i, i).real() ==
          doctest::Approx(b(i, i).real() / a(i, i).real()).epsilon(1e-12));
}

TEST_CASE("phi map at the base point gives (1 - alpha) sigma^(1 - alpha)") {
  Rng rng = rng_stream(127, "phi-base");
  for (double alpha : {0.4, 1.3, 2.0}) {
    const HermitianOperator sigma = random_density({2, 2}, rng);
    const Matrix lhs =
        phi_map(ScalarFunction::power(1.0 - alpha), sigma, sigma.mat());
    const Matrix rhs =
        (1.0 - alpha) * matrix_power_on_support(sigma, 1.0 - alpha);
    CHECK(frobenius_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("phi map is linear and basis independent") {
  Rng rng = rng_stream(131, "phi-linear");
  const HermitianOperator a = random_density({4}, rng);
  const HermitianOperator b = random_hermitian({4}, rng);
  const HermitianOperator c = random_hermitian({4}, rng);
  const ScalarFunction f = ScalarFunction::power(0.5);
  const Matrix lhs = phi_map(f, a, 2.0 * b.mat() - 0.7 * c.mat());
  const Matrix rhs = 2.0 * phi_map(f, a, b.mat()) - 0.7 * phi_map(f, a, c.mat());
  CHECK(frobenius_norm(lhs - rhs) < 1e-10);

  // Two eigenbases of a degenerate matrix give the same map.
  RealVector eigs(4);
  eigs << 1.5, 1.0, 1.0, 0.25;
  Matrix rot = Matrix::Identity(4, 4);
  rot(1, 1) = std::cos(0.3);
  rot(1, 2) = -std::sin(0.3);
  rot(2, 1) = std::sin(0.3);
  rot(2, 2) = std::cos(0.3);
  const Spectrum s1{eigs, Matrix::Identity(4, 4)};
  const Spectrum s2{eigs, rot};
  const Matrix m1 = phi_map_from(f, s1, b.mat());
  const Matrix m2 = phi_map_from(f, s2, b.mat());
  CHECK(frobenius_norm(m1 - m2) < 1e-10);
}

TEST_CASE("directional derivative matches finite differences") {
  Rng rng = rng_stream(137, "dd-fd");
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 3;
    HermitianOperator g = random_hermitian({n}, rng);
    HermitianOperator a(0.8 * g.mat() / operator_norm(g) +
                            Matrix::Identity(n, n),
                        {n});
    HermitianOperator braw = random_hermitian({n}, rng);
    const HermitianOperator b(braw.mat() / frobenius_norm(braw.mat()), {n});
    const HermitianOperator p = random_density({n}, rng);
    for (const ScalarFunction& f :
         {ScalarFunction::log(), ScalarFunction::power(0.5),
          ScalarFunction::power(-0.5)}) {
      const double exact = directional_derivative(p, f, a, b).value;
      const double fd = fd_trace_derivative(p, f, a, b, 1e-5);
      CHECK(std::abs(exact - fd) <=
            1e-6 * std::max(std::abs(exact), 1e-3));
    }
  }
}

TEST_CASE("directional derivative of zero direction vanishes") {
  Rng rng = rng_stream(139, "dd-zero");
  const HermitianOperator a = random_density({3}, rng);
  const HermitianOperator zero(Matrix::Zero(3, 3), {3});
  CHECK(directional_derivative(a, ScalarFunction::log(), a, zero).value ==
        doctest::Approx(0.0));
}

TEST_CASE("rank-deficient base point: formula lower-bounds the derivative") {
  // A = diag(1, 0), B = [[0, 1], [1, 1]] keeps A + tB PSD for small t; the
  // true one-sided derivative of Tr(P (A + tB)^-1) is 1, the formula gives 0.
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  Matrix b = Matrix::Zero(2, 2);
  b(0, 1) = b(1, 0) = 1.0;
  b(1, 1) = 1.0;
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  const HermitianOperator pa(a, {2}), pb(b, {2}), pp(p, {2});
  const ScalarFunction inv = ScalarFunction::power(-1.0);
  const DerivativeValue dv = directional_derivative(pp, inv, pa, pb);
  CHECK(dv.lower_bound_only);
  CHECK(dv.value == doctest::Approx(0.0));

  // One-sided finite difference of the true functional exceeds it. At
  // t = 0 the functional is the support-restricted value.
  auto g = [&](double t) {
    const HermitianOperator at(a + t * b, std::vector<int>{2});
    const Spectrum s = eig_hermitian(at);
    double acc = 0.0;
    for (int i = 0; i < 2; ++i) {
      if (s.eigenvalues(i) <= 1e-12) continue;
      acc += (1.0 / s.eigenvalues(i)) *
             (s.unitary.col(i).adjoint() * p * s.unitary.col(i)).value().real();
    }
    return acc;
  };
  const double h = 1e-6;
  const double fd = (g(h) - g(0.0)) / h;
  CHECK(fd > dv.value + 0.5);
  CHECK(fd == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("directional derivative precondition failures") {
  Rng rng = rng_stream(149, "dd-pre");
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const HermitianOperator pa(a, {2});
  const HermitianOperator full = random_density({2}, rng);
  // P leaks outside supp(A).
  CHECK_THROWS_AS(
      directional_derivative(full, ScalarFunction::log(), pa, pa),
      std::domain_error);
  // A + tB dips below zero.
  Matrix down = Matrix::Zero(2, 2);
  down(1, 1) = -1.0;
  const HermitianOperator pp(a, {2});
  CHECK_THROWS_AS(directional_derivative(pp, ScalarFunction::log(), pa,
                                         HermitianOperator(down, {2})),
                  std::domain_error);
}

TEST_CASE("stationarity derivative: optimal sigma against product directions") {
  Rng rng = rng_stream(151, "stationarity");
  for (double alpha : {0.3, 0.7, 1.0, 1.5, 2.0}) {
    for (int trial = 0; trial < 3; ++trial) {
      const int d = 2 + trial;
      const SchmidtVector lam(random_schmidt_coefficients(d, rng));
      const PureState psi = pure_from_schmidt(lam);
      const HermitianOperator sigma = optimal_sigma_alpha(lam, alpha);
      const OptimalityDerivativeSweep sweep(lam, alpha);
      for (int i = 0; i < 200; ++i) {
        const Vector u = random_unit_vector(d, rng);
        const Vector v = random_unit_vector(d, rng);
        CHECK(sweep.at_product_direction(u, v) >= -1e-9);
      }
      // Stationary at sigma itself.
      CHECK(optimality_derivative(psi, sigma, sigma, alpha).value ==
            doctest::Approx(0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("sweep agrees with the generic matrix route") {
  Rng rng = rng_stream(157, "sweep-generic");
  const SchmidtVector lam({0.6, 0.3, 0.1});
  const PureState psi = pure_from_schmidt(lam);
  for (double alpha : {0.4, 1.0, 1.6, 2.0}) {
    const HermitianOperator sigma = optimal_sigma_alpha(lam, alpha);
    const OptimalityDerivativeSweep sweep(lam, alpha);
    for (int i = 0; i < 10; ++i) {
      const Vector u = random_unit_vector(3, rng);
      const Vector v = random_unit_vector(3, rng);
      Vector uv(9);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) uv(a * 3 + b) = u(a) * v(b);
      const HermitianOperator dir(uv * uv.adjoint(), {3, 3});
      const double fast = sweep.at_product_direction(u, v);
      const double slow = optimality_derivative(psi, sigma, dir, alpha).value;
      CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
    }
  }
}

TEST_CASE("stationarity derivative is a true derivative of S_alpha") {
  // Finite differences of S_alpha(psi || (1-t) sigma + t sigma') in t. For
  // alpha above one a direction leaving the support of sigma injects a
  // t^(3-alpha) term that ruins polynomial stencils, so the alpha = 1.5
  // probe uses a direction inside the support.
  Rng rng = rng_stream(163, "stationarity-fd");
  const SchmidtVector lam({0.5, 0.3, 0.2});
  const PureState psi = pure_from_schmidt(lam);
  for (double alpha : {0.4, 1.0, 1.5}) {
    const HermitianOperator sigma = optimal_sigma_alpha(lam, alpha);
    Vector u, v;
    if (alpha > 1.0) {
      u = basis_ket(3, 1);
      v = basis_ket(3, 1);
    } else {
      u = random_unit_vector(3, rng);
      v = random_unit_vector(3, rng);
    }
    Vector uv(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) uv(a * 3 + b) = u(a) * v(b);
    const HermitianOperator dir(uv * uv.adjoint(), {3, 3});
    auto s_of_t = [&](double t) {
      HermitianOperator mix((1.0 - t) * sigma.mat() + t * dir.mat(), {3, 3});
      return renyi_relative_entropy(psi.density(), mix, alpha).as_double();
    };
    const double h = 1e-6;
    const double fd =
        (-3.0 * s_of_t(0.0) + 4.0 * s_of_t(h) - s_of_t(2.0 * h)) / (2.0 * h);
    const double exact = optimality_derivative(psi, sigma, dir, alpha).value;
    CHECK(exact == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("perturbed diagonal weights admit a descent direction") {
  // Off-optimal diagonal sigma: some Schmidt-basis product direction has a
  // strictly negative derivative, certifying non-optimality.
  const SchmidtVector lam({0.7, 0.3});
  const PureState psi = pure_from_schmidt(lam);
  const double alpha = 0.5;
  Matrix bad = Matrix::Zero(4, 4);
  bad(0, 0) = 0.5;
  bad(3, 3) = 0.5;  // optimal weights would be (0.845, 0.155)
  const HermitianOperator sigma(bad, {2, 2});
  double most_negative = 1.0;
  for (int i = 0; i < 2; ++i) {
    Vector u = basis_ket(2, i), v = basis_ket(2, i);
    Vector uv = Vector::Zero(4);
    uv(i * 2 + i) = 1.0;
    const HermitianOperator dir(uv * uv.adjoint(), {2, 2});
    most_negative = std::min(
        most_negative, optimality_derivative(psi, sigma, dir, alpha).value);
  }
  CHECK(most_negative < -1e-3);
}

TEST_CASE("bit conversion of the stationarity derivative is exact") {
  // The nats-to-bits boundary: recompute one derivative by hand in nats.
  const SchmidtVector lam({0.75, 0.25});
  const PureState psi = pure_from_schmidt(lam);
  const double alpha = 2.0;
  const HermitianOperator sigma = optimal_sigma_alpha(lam, alpha);
  Vector uv = Vector::Zero(4);
  uv(0) = 1.0;
  const HermitianOperator dir(uv * uv.adjoint(), {2, 2});
  const Matrix pow = matrix_power_on_support(sigma, 1.0 - alpha);
  const double norm =
      (psi.amplitudes.adjoint() * pow * psi.amplitudes).value().real();
  const Matrix phi =
      phi_map(ScalarFunction::power(1.0 - alpha), sigma, dir.mat());
  const double overlap =
      (psi.amplitudes.adjoint() * phi * psi.amplitudes).value().real();
  const double nats = 1.0 - overlap / ((1.0 - alpha) * norm);
  CHECK(optimality_derivative(psi, sigma, dir, alpha).value ==
        doctest::Approx(nats / kLn2).epsilon(1e-12));
}
