#include "entkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entkit {

const Tolerances& default_tols() {
  static const Tolerances tols{};
  return tols;
}

FactorIndexer::FactorIndexer(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("dims must be nonempty");
  strides_.assign(dims_.size(), 1);
  for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k) {
    strides_[k] = strides_[k + 1] * dims_[k + 1];
  }
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("factor dimensions must be positive");
    side_ *= d;
  }
}

void FactorIndexer::unrank(int linear, std::span<int> multi) const {
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    multi[k] = linear / strides_[k];
    linear -= multi[k] * strides_[k];
  }
}

int FactorIndexer::rank(std::span<const int> multi) const {
  int linear = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) linear += multi[k] * strides_[k];
  return linear;
}

HermitianOperator::HermitianOperator(Matrix data, std::vector<int> dims,
                                     const Tolerances& tol)
    : mat_(std::move(data)), dims_(std::move(dims)) {
  if (mat_.rows() != mat_.cols())
    throw std::invalid_argument("operator matrix must be square");
  int prod = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("factor dimensions must be positive");
    prod *= d;
  }
  if (prod != mat_.rows())
    throw std::invalid_argument("product of dims must equal the side length");
  const double scale = mat_.norm();
  const double dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol.hermiticity * scale)
    throw std::invalid_argument("matrix is not Hermitian within tolerance");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

HermitianOperator HermitianOperator::with_dims(std::vector<int> dims) const {
  return HermitianOperator(mat_, std::move(dims));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return HermitianOperator(kron(a.mat(), b.mat()), std::move(dims));
}

HermitianOperator partial_transpose(const HermitianOperator& x,
                                    std::span<const int> factors) {
  const FactorIndexer idx(x.dims());
  const int m = idx.factor_count();
  std::vector<bool> flip(m, false);
  for (int f : factors) {
    if (f < 0 || f >= m) throw std::out_of_range("factor index out of range");
    flip[f] = true;
  }
  const int n = idx.side();
  Matrix out(n, n);
  std::vector<int> r(m), c(m), rr(m), cc(m);
  for (int i = 0; i < n; ++i) {
    idx.unrank(i, r);
    for (int j = 0; j < n; ++j) {
      idx.unrank(j, c);
      for (int k = 0; k < m; ++k) {
        rr[k] = flip[k] ? c[k] : r[k];
        cc[k] = flip[k] ? r[k] : c[k];
      }
      out(idx.rank(rr), idx.rank(cc)) = x.mat()(i, j);
    }
  }
  return HermitianOperator(std::move(out), x.dims());
}

HermitianOperator partial_transpose(const HermitianOperator& x, int factor) {
  const int f[1] = {factor};
  return partial_transpose(x, f);
}

HermitianOperator partial_trace(const HermitianOperator& x,
                                std::span<const int> keep) {
  const FactorIndexer idx(x.dims());
  const int m = idx.factor_count();
  if (keep.empty()) throw std::invalid_argument("keep must be nonempty");
  std::vector<bool> kept(m, false);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    int f = keep[k];
    if (f < 0 || f >= m) throw std::out_of_range("factor index out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw std::invalid_argument("keep indices must be strictly ascending");
    kept[f] = true;
  }
  std::vector<int> keep_dims, trace_dims;
  std::vector<int> keep_pos, trace_pos;
  for (int k = 0; k < m; ++k) {
    if (kept[k]) {
      keep_dims.push_back(x.dims()[k]);
      keep_pos.push_back(k);
    } else {
      trace_dims.push_back(x.dims()[k]);
      trace_pos.push_back(k);
    }
  }
  const FactorIndexer kidx(keep_dims);
  Matrix out = Matrix::Zero(kidx.side(), kidx.side());
  if (trace_dims.empty()) {
    out = x.mat();
    return HermitianOperator(std::move(out), keep_dims);
  }
  const FactorIndexer tidx(trace_dims);
  std::vector<int> a(keep_pos.size()), b(keep_pos.size()), t(trace_pos.size());
  std::vector<int> full_r(m), full_c(m);
  for (int i = 0; i < kidx.side(); ++i) {
    kidx.unrank(i, a);
    for (int j = 0; j < kidx.side(); ++j) {
      kidx.unrank(j, b);
      Cplx acc = 0.0;
      for (int s = 0; s < tidx.side(); ++s) {
        tidx.unrank(s, t);
        for (std::size_t k = 0; k < keep_pos.size(); ++k) {
          full_r[keep_pos[k]] = a[k];
          full_c[keep_pos[k]] = b[k];
        }
        for (std::size_t k = 0; k < trace_pos.size(); ++k) {
          full_r[trace_pos[k]] = t[k];
          full_c[trace_pos[k]] = t[k];
        }
        acc += x.mat()(idx.rank(full_r), idx.rank(full_c));
      }
      out(i, j) = acc;
    }
  }
  return HermitianOperator(std::move(out), keep_dims);
}

Matrix permute_factors(const Matrix& x, std::span<const int> dims,
                       std::span<const int> perm) {
  const FactorIndexer idx(std::vector<int>(dims.begin(), dims.end()));
  const int m = idx.factor_count();
  if (static_cast<int>(perm.size()) != m)
    throw std::invalid_argument("perm size must match factor count");
  std::vector<bool> seen(m, false);
  std::vector<int> new_dims(m);
  for (int j = 0; j < m; ++j) {
    if (perm[j] < 0 || perm[j] >= m || seen[perm[j]])
      throw std::invalid_argument("perm must be a permutation of factor indices");
    seen[perm[j]] = true;
    new_dims[j] = dims[perm[j]];
  }
  const FactorIndexer nidx(new_dims);
  const int n = idx.side();
  std::vector<int> map(n);
  std::vector<int> nm(m), om(m);
  for (int i = 0; i < n; ++i) {
    nidx.unrank(i, nm);
    for (int j = 0; j < m; ++j) om[perm[j]] = nm[j];
    map[i] = idx.rank(om);
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = x(map[i], map[j]);
  return out;
}

HermitianOperator permute_factors(const HermitianOperator& x,
                                  std::span<const int> perm) {
  std::vector<int> new_dims(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) new_dims[j] = x.dims()[perm[j]];
  return HermitianOperator(permute_factors(x.mat(), x.dims(), perm),
                           std::move(new_dims));
}

Spectrum eig_hermitian(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed to converge");
  const int n = a.side();
  Spectrum s;
  s.eigenvalues = RealVector(n);
  s.unitary = Matrix(n, n);
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < n; ++i) {
    s.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    s.unitary.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return s;
}

double trace_norm(const HermitianOperator& a) {
  return eig_hermitian(a).eigenvalues.cwiseAbs().sum();
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

double min_eigenvalue(const HermitianOperator& a) {
  return eig_hermitian(a).eigenvalues.minCoeff();
}

double operator_norm(const HermitianOperator& a) {
  return eig_hermitian(a).eigenvalues.cwiseAbs().maxCoeff();
}

Matrix spectral_apply(const Spectrum& s, double (*f)(double),
                      double support_tol) {
  const int n = static_cast<int>(s.eigenvalues.size());
  RealVector vals = RealVector::Zero(n);
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues(i) > support_tol) vals(i) = f(s.eigenvalues(i));
  return s.unitary * vals.asDiagonal() * s.unitary.adjoint();
}

Matrix matrix_power_on_support(const HermitianOperator& a, double exponent,
                               double support_tol) {
  const Spectrum s = eig_hermitian(a);
  const int n = static_cast<int>(s.eigenvalues.size());
  RealVector vals = RealVector::Zero(n);
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues(i) > support_tol)
      vals(i) = std::pow(s.eigenvalues(i), exponent);
  return s.unitary * vals.asDiagonal() * s.unitary.adjoint();
}

Matrix support_projector(const HermitianOperator& a, double support_tol) {
  const Spectrum s = eig_hermitian(a);
  const int n = static_cast<int>(s.eigenvalues.size());
  RealVector vals = RealVector::Zero(n);
  for (int i = 0; i < n; ++i)
    if (s.eigenvalues(i) > support_tol) vals(i) = 1.0;
  return s.unitary * vals.asDiagonal() * s.unitary.adjoint();
}

bool is_psd(const HermitianOperator& a, double tol_scale) {
  return min_eigenvalue(a) >= -default_tols().psd * tol_scale *
                                  std::max(1.0, frobenius_norm(a.mat()));
}

}  // namespace entkit
