#include <doctest.h>

#include "entkit/linalg.hpp"
#include "entkit/random.hpp"
#include "entkit/states.hpp"

using namespace entkit;

TEST_CASE("kron identity and diagonal cases") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(frobenius_norm(kron(i2, i2) - Matrix::Identity(4, 4)) == 0.0);

  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK(frobenius_norm(kron(a, b) - expected) == 0.0);
}

TEST_CASE("kron dimension arithmetic and associativity") {
  Rng rng = rng_stream(11, "kron");
  const HermitianOperator a = random_hermitian({3}, rng);
  const HermitianOperator b = random_hermitian({4}, rng);
  const HermitianOperator c = random_hermitian({2}, rng);
  CHECK(kron(a, b).side() == 12);
  const Matrix lhs = kron(kron(a.mat(), b.mat()), c.mat());
  const Matrix rhs = kron(a.mat(), kron(b.mat(), c.mat()));
  CHECK(frobenius_norm(lhs - rhs) < 1e-12);
}

TEST_CASE("hermiticity is enforced at construction") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianOperator(bad, {2}), std::invalid_argument);
  CHECK_THROWS_AS(HermitianOperator(Matrix::Identity(4, 4), {3}),
                  std::invalid_argument);
}

TEST_CASE("partial transpose of the maximally entangled state is the flip") {
  for (int d : {2, 3, 4}) {
    const HermitianOperator pt =
        partial_transpose(max_entangled(d).density(), 0);
    CHECK(frobenius_norm(double(d) * pt.mat() - flip_operator(d).mat()) <
          1e-12);
    const HermitianOperator pt2 =
        partial_transpose(max_entangled(d).density(), 1);
    CHECK(frobenius_norm(pt.mat() - pt2.mat()) < 1e-12);
  }
}

TEST_CASE("partial transpose properties on random operators") {
  Rng rng = rng_stream(5, "pt-properties");
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> dims;
    switch (trial % 4) {
      case 0: dims = {2, 3}; break;
      case 1: dims = {3, 3}; break;
      case 2: dims = {2, 2, 3}; break;
      default: dims = {6, 6}; break;
    }
    const HermitianOperator x = random_hermitian(dims, rng);
    const int f = trial % static_cast<int>(dims.size());
    const HermitianOperator pt = partial_transpose(x, f);
    CHECK(frobenius_norm(partial_transpose(pt, f).mat() - x.mat()) < 1e-12);
    CHECK(pt.trace() == doctest::Approx(x.trace()).epsilon(1e-12));
  }
}

TEST_CASE("partial transpose rejects an out-of-range factor") {
  Rng rng = rng_stream(3, "pt-oor");
  const HermitianOperator x = random_hermitian({2, 2}, rng);
  CHECK_THROWS_AS(partial_transpose(x, 2), std::out_of_range);
  CHECK_THROWS_AS(partial_transpose(x, -1), std::out_of_range);
}

TEST_CASE("partial transpose of a product transposes one factor") {
  Rng rng = rng_stream(7, "pt-product");
  const HermitianOperator a = random_hermitian({3}, rng);
  const HermitianOperator b = random_hermitian({4}, rng);
  const HermitianOperator joint = kron(a, b);
  const HermitianOperator pt = partial_transpose(joint, 0);
  CHECK(frobenius_norm(pt.mat() - kron(a.mat().transpose().eval(), b.mat())) <
        1e-12);
}

TEST_CASE("partial trace product and identity cases") {
  Rng rng = rng_stream(9, "ptrace");
  const HermitianOperator rho = random_density({3}, rng);
  const HermitianOperator sigma = random_density({4}, rng);
  const HermitianOperator joint = kron(rho, sigma);
  const int keep_first[1] = {0};
  const HermitianOperator reduced = partial_trace(joint, keep_first);
  CHECK(frobenius_norm(reduced.mat() - rho.mat()) < 1e-12);

  const int keep_all[2] = {0, 1};
  CHECK(frobenius_norm(partial_trace(joint, keep_all).mat() - joint.mat()) ==
        0.0);

  // Reduction of the maximally entangled state is maximally mixed.
  for (int d : {2, 3, 5}) {
    const HermitianOperator half =
        partial_trace(max_entangled(d).density(), keep_first);
    CHECK(frobenius_norm(half.mat() - Matrix::Identity(d, d) / double(d)) <
          1e-12);
  }
  CHECK_THROWS_AS(partial_trace(joint, std::vector<int>{2}),
                  std::out_of_range);
}

TEST_CASE("eigendecomposition reconstructs and sorts descending") {
  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = 1.0;
  diag(2, 2) = 2.0;
  const Spectrum s = eig_hermitian(HermitianOperator(diag, {3}));
  CHECK(s.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(1.0));

  Rng rng = rng_stream(13, "eig");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + 15 * (trial % 5);
    const HermitianOperator a = random_hermitian({n}, rng);
    const Spectrum sp = eig_hermitian(a);
    const Matrix rebuilt = sp.unitary *
                           sp.eigenvalues.cast<Cplx>().asDiagonal() *
                           sp.unitary.adjoint();
    const double scale = std::max(1.0, frobenius_norm(a.mat()));
    CHECK(frobenius_norm(rebuilt - a.mat()) / scale < 1e-10);
    CHECK(frobenius_norm(sp.unitary * sp.unitary.adjoint() -
                         Matrix::Identity(n, n)) < 1e-10);
    CHECK(sp.eigenvalues.sum() == doctest::Approx(a.trace()).epsilon(1e-10));
  }
}

TEST_CASE("flip operator eigenvalues are plus and minus one") {
  const Spectrum s = eig_hermitian(flip_operator(2));
  CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(1.0));
  CHECK(s.eigenvalues(3) == doctest::Approx(-1.0));
}

TEST_CASE("norms") {
  Rng rng = rng_stream(17, "norms");
  const HermitianOperator rho = random_density({2, 3}, rng);
  CHECK(trace_norm(rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(frobenius_norm(random_product_state(std::vector<int>{2, 2}, rng).mat()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // Trace norm of the partially transposed maximally entangled state is d.
  for (int d : {2, 3, 4}) {
    const HermitianOperator pt =
        partial_transpose(max_entangled(d).density(), 0);
    CHECK(trace_norm(pt) == doctest::Approx(double(d)).epsilon(1e-12));
  }

  Matrix diag = Matrix::Zero(3, 3);
  diag(0, 0) = 3.0;
  diag(1, 1) = -4.0;
  diag(2, 2) = 2.0;
  const HermitianOperator a(diag, {3});
  CHECK(operator_norm(a) == doctest::Approx(4.0));
  CHECK(min_eigenvalue(a) == doctest::Approx(-4.0));
  CHECK(trace_norm(a) == doctest::Approx(9.0));
  CHECK(operator_norm(flip_operator(3)) == doctest::Approx(1.0));
}

TEST_CASE("permute factors round trip") {
  Rng rng = rng_stream(19, "permute");
  const HermitianOperator x = random_hermitian({2, 3, 2}, rng);
  const int perm[3] = {2, 0, 1};
  const HermitianOperator y = permute_factors(x, perm);
  CHECK(y.dims() == std::vector<int>{2, 2, 3});
  const int inverse[3] = {1, 2, 0};
  CHECK(frobenius_norm(permute_factors(y, inverse).mat() - x.mat()) < 1e-12);

  // Permuting a product rearranges its factors.
  const HermitianOperator a = random_hermitian({2}, rng);
  const HermitianOperator b = random_hermitian({3}, rng);
  const int swap[2] = {1, 0};
  CHECK(frobenius_norm(permute_factors(kron(a, b), swap).mat() -
                       kron(b, a).mat()) < 1e-12);
}
