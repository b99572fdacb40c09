#include "entkit/random.hpp"

#include <functional>

namespace entkit {

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng rng_stream(std::uint64_t seed, const std::string& stream_id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream_id) h = (h ^ c) * 0x100000001b3ULL;
  return Rng(splitmix64(seed) ^ splitmix64(h));
}

Vector random_unit_vector(int dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Cplx(gauss(rng), gauss(rng));
  return v / v.norm();
}

Vector random_product_vector(std::span<const int> dims, Rng& rng) {
  Vector v = random_unit_vector(dims[0], rng);
  for (std::size_t k = 1; k < dims.size(); ++k) {
    Vector w = random_unit_vector(dims[k], rng);
    Vector joint(v.size() * w.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      joint.segment(i * w.size(), w.size()) = v(i) * w;
    v.swap(joint);
  }
  return v;
}

HermitianOperator random_product_state(std::span<const int> dims, Rng& rng) {
  Vector v = random_product_vector(dims, rng);
  return HermitianOperator(v * v.adjoint(),
                           std::vector<int>(dims.begin(), dims.end()));
}

HermitianOperator random_separable_state(std::span<const int> dims, int n_terms,
                                         Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> w(n_terms);
  double total = 0.0;
  for (double& x : w) {
    x = unif(rng) + 1e-6;
    total += x;
  }
  const FactorIndexer idx(std::vector<int>(dims.begin(), dims.end()));
  Matrix acc = Matrix::Zero(idx.side(), idx.side());
  for (int t = 0; t < n_terms; ++t) {
    Vector v = random_product_vector(dims, rng);
    acc += (w[t] / total) * (v * v.adjoint());
  }
  return HermitianOperator(std::move(acc),
                           std::vector<int>(dims.begin(), dims.end()));
}

HermitianOperator random_density(std::vector<int> dims, Rng& rng) {
  const FactorIndexer idx(dims);
  const int n = idx.side();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Cplx(gauss(rng), gauss(rng));
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianOperator(std::move(rho), std::move(dims));
}

HermitianOperator random_hermitian(std::vector<int> dims, Rng& rng) {
  const FactorIndexer idx(dims);
  const int n = idx.side();
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Cplx(gauss(rng), gauss(rng));
  return HermitianOperator(0.5 * (g + g.adjoint().eval()), std::move(dims));
}

Matrix random_co_isometry(int k, int d, Rng& rng) {
  if (k > d) throw std::invalid_argument("co-isometry needs k <= d");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(d, k);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < k; ++j) g(i, j) = Cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, k);
  // Fix the phase of each column so the sample is independent of the QR
  // sign convention.
  Matrix r = q.adjoint() * g;
  for (int j = 0; j < k; ++j) {
    Cplx ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q.adjoint();  // k x d, P P^dagger = I_k
}

std::vector<double> random_schmidt_coefficients(int d, Rng& rng,
                                                double floor_value) {
  std::exponential_distribution<double> expd(1.0);
  std::vector<double> lam(d);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    double total = 0.0;
    for (double& x : lam) {
      x = expd(rng);
      total += x;
    }
    for (double& x : lam) x /= total;
    std::sort(lam.begin(), lam.end(), std::greater<>());
    if (lam.back() >= floor_value) return lam;
  }
  throw std::runtime_error("failed to sample Schmidt coefficients above floor");
}

}  // namespace entkit
