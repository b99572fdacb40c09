#include "entkit/states.hpp"

#include <algorithm>
#include <cmath>

namespace entkit {

PureState::PureState(Vector amps, std::vector<int> dims_)
    : amplitudes(std::move(amps)), dims(std::move(dims_)) {
  const FactorIndexer idx(dims);
  if (idx.side() != amplitudes.size())
    throw std::invalid_argument("amplitude length must match product of dims");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("pure state must have unit norm");
}

HermitianOperator PureState::density() const {
  return HermitianOperator(amplitudes * amplitudes.adjoint(), dims);
}

SchmidtVector::SchmidtVector(std::vector<double> coeffs)
    : coefficients(std::move(coeffs)) {
  if (coefficients.empty())
    throw std::invalid_argument("Schmidt vector must be nonempty");
  double total = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] < -1e-14)
      throw std::invalid_argument("Schmidt coefficients must be nonnegative");
    if (i > 0 && coefficients[i] > coefficients[i - 1] + 1e-14)
      throw std::invalid_argument("Schmidt coefficients must be sorted descending");
    total += coefficients[i];
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("Schmidt coefficients must sum to one");
}

int SchmidtVector::rank(double zero_tol) const {
  int r = 0;
  for (double c : coefficients)
    if (c > zero_tol) ++r;
  return r;
}

Vector basis_ket(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

PureState max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled needs d >= 2");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(double(d));
  return PureState(std::move(v), {d, d});
}

HermitianOperator flip_operator(int d) {
  if (d < 2) throw std::invalid_argument("flip_operator needs d >= 2");
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return HermitianOperator(std::move(f), {d, d});
}

SchmidtDecomposition schmidt(const PureState& psi,
                             std::span<const int> a_factors) {
  const FactorIndexer idx(psi.dims);
  const int m = idx.factor_count();
  std::vector<bool> on_a(m, false);
  for (int f : a_factors) {
    if (f < 0 || f >= m) throw std::out_of_range("factor index out of range");
    on_a[f] = true;
  }
  std::vector<int> a_pos, b_pos, a_dims, b_dims;
  for (int k = 0; k < m; ++k) {
    if (on_a[k]) {
      a_pos.push_back(k);
      a_dims.push_back(psi.dims[k]);
    } else {
      b_pos.push_back(k);
      b_dims.push_back(psi.dims[k]);
    }
  }
  if (a_pos.empty() || b_pos.empty())
    throw std::invalid_argument("bipartition must split the factors");
  const FactorIndexer aidx(a_dims), bidx(b_dims);
  Matrix amp(aidx.side(), bidx.side());
  std::vector<int> full(m), am(a_pos.size()), bm(b_pos.size());
  for (int i = 0; i < aidx.side(); ++i) {
    aidx.unrank(i, am);
    for (int j = 0; j < bidx.side(); ++j) {
      bidx.unrank(j, bm);
      for (std::size_t k = 0; k < a_pos.size(); ++k) full[a_pos[k]] = am[k];
      for (std::size_t k = 0; k < b_pos.size(); ++k) full[b_pos[k]] = bm[k];
      amp(i, j) = psi.amplitudes(idx.rank(full));
    }
  }
  Eigen::JacobiSVD<Matrix> svd(amp, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int r = static_cast<int>(svd.singularValues().size());
  std::vector<double> coeffs(r);
  for (int i = 0; i < r; ++i) {
    double s = svd.singularValues()(i);
    coeffs[i] = s * s;
  }
  // Squared singular values of a unit vector sum to one up to roundoff;
  // renormalize so the SchmidtVector invariant holds exactly.
  double total = 0.0;
  for (double c : coeffs) total += c;
  for (double& c : coeffs) c /= total;
  return SchmidtDecomposition{SchmidtVector(std::move(coeffs)),
                              svd.matrixU(), svd.matrixV().conjugate()};
}

SchmidtDecomposition schmidt(const PureState& psi) {
  const int a[1] = {0};
  return schmidt(psi, a);
}

HermitianOperator werner(int d, double beta) {
  if (d < 2) throw std::invalid_argument("werner needs d >= 2");
  if (beta < -(d + 1.0) - 1e-12 || beta > d - 1.0 + 1e-12)
    throw std::invalid_argument("werner beta out of range");
  const Matrix f = flip_operator(d).mat();
  Matrix rho = Matrix::Identity(d * d, d * d) - ((beta + 1.0) / d) * f;
  rho /= (double(d) * d - (beta + 1.0));
  return HermitianOperator(std::move(rho), {d, d});
}

namespace {
Vector bell_vector(int which) {
  // 0: phi+, 1: phi-, 2: psi+, 3: psi-
  Vector v = Vector::Zero(4);
  const double s = 1.0 / std::sqrt(2.0);
  switch (which) {
    case 0: v(0) = s; v(3) = s; break;
    case 1: v(0) = s; v(3) = -s; break;
    case 2: v(1) = s; v(2) = s; break;
    default: v(1) = s; v(2) = -s; break;
  }
  return v;
}
}  // namespace

HermitianOperator smolin() {
  Matrix acc = Matrix::Zero(16, 16);
  for (int k = 0; k < 4; ++k) {
    Vector b = bell_vector(k);
    Matrix proj = b * b.adjoint();
    acc += 0.25 * kron(proj, proj);
  }
  return HermitianOperator(std::move(acc), {2, 2, 2, 2});
}

HermitianOperator isotropic(int d, double a) {
  if (a < -1e-15 || a > 1.0 + 1e-15)
    throw std::invalid_argument("isotropic weight must lie in [0, 1]");
  Matrix rho = (a / (double(d) * d)) * Matrix::Identity(d * d, d * d) +
               (1.0 - a) * max_entangled(d).density().mat();
  return HermitianOperator(std::move(rho), {d, d});
}

PureState ghz(int parties, int r) {
  if (parties < 2) throw std::invalid_argument("ghz needs at least 2 parties");
  if (r < 2) throw std::invalid_argument("ghz needs r >= 2");
  std::vector<int> dims(parties, r);
  const FactorIndexer idx(dims);
  Vector v = Vector::Zero(idx.side());
  std::vector<int> multi(parties);
  for (int i = 0; i < r; ++i) {
    std::fill(multi.begin(), multi.end(), i);
    v(idx.rank(multi)) = 1.0 / std::sqrt(double(r));
  }
  return PureState(std::move(v), std::move(dims));
}

PureState w_state() {
  Vector v = Vector::Zero(8);
  const double s = 1.0 / std::sqrt(3.0);
  v(0b100) = s;
  v(0b010) = s;
  v(0b001) = s;
  return PureState(std::move(v), {2, 2, 2});
}

PureState pure_from_schmidt(const SchmidtVector& lambda) {
  const int d = lambda.rank();
  if (d < 1) throw std::invalid_argument("Schmidt vector has empty support");
  Vector v = Vector::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = std::sqrt(lambda[i]);
  v /= v.norm();
  return PureState(std::move(v), {d, d});
}

}  // namespace entkit
