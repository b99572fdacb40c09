#include "entkit/channels.hpp"

#include <cmath>

namespace entkit {

TwoBranch::TwoBranch(HermitianOperator a, HermitianOperator r1,
                     HermitianOperator r2)
    : effect(std::move(a)), rho1(std::move(r1)), rho2(std::move(r2)) {
  if (rho1.side() != rho2.side())
    throw std::invalid_argument("branch states must share one output space");
  const double scale = std::max(1.0, frobenius_norm(effect.mat()));
  const double lo = min_eigenvalue(effect);
  const HermitianOperator complement(
      Matrix::Identity(effect.side(), effect.side()) - effect.mat(),
      effect.dims());
  if (lo < -default_tols().psd * scale ||
      min_eigenvalue(complement) < -default_tols().psd * scale)
    throw std::invalid_argument("effect must satisfy 0 <= A <= I");
  for (const HermitianOperator* rho : {&rho1, &rho2}) {
    if (std::abs(rho->trace() - 1.0) > 1e-10 || !is_psd(*rho))
      throw std::invalid_argument("branch outputs must be unit-trace PSD");
  }
}

std::vector<int> Channel::a_side_choi_factors() const {
  std::vector<int> f = out_a;
  const int shift = static_cast<int>(out_dims.size());
  for (int k : in_a) f.push_back(shift + k);
  return f;
}

int Channel::in_dim() const {
  int n = 1;
  for (int d : in_dims) n *= d;
  return n;
}

int Channel::out_dim() const {
  int n = 1;
  for (int d : out_dims) n *= d;
  return n;
}

Channel choi_of_two_branch(const TwoBranch& tb, std::vector<int> out_a,
                           std::vector<int> in_a) {
  const Matrix id = Matrix::Identity(tb.effect.side(), tb.effect.side());
  Matrix choi = kron(tb.rho1.mat(), tb.effect.mat().transpose()) +
                kron(tb.rho2.mat(), (id - tb.effect.mat()).transpose());
  std::vector<int> dims = tb.rho1.dims();
  dims.insert(dims.end(), tb.effect.dims().begin(), tb.effect.dims().end());
  return Channel{HermitianOperator(std::move(choi), std::move(dims)),
                 tb.effect.dims(), tb.rho1.dims(), std::move(out_a),
                 std::move(in_a)};
}

Channel identity_channel(std::vector<int> dims, std::vector<int> a_side) {
  const FactorIndexer idx(dims);
  const int n = idx.side();
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) choi(i * n + i, j * n + j) = 1.0;
  std::vector<int> full = dims;
  full.insert(full.end(), dims.begin(), dims.end());
  return Channel{HermitianOperator(std::move(choi), std::move(full)), dims,
                 dims, a_side, a_side};
}

HermitianOperator apply(const Channel& ch, const HermitianOperator& x) {
  if (x.dims() != ch.in_dims)
    throw std::invalid_argument("input dims do not match channel input");
  const int d_out = ch.out_dim();
  const int d_in = ch.in_dim();
  // Tr_in(J (I otimes X^T)) contracted entrywise:
  // out(i, j) = sum_{t,s} J[(i,t),(j,s)] X(t,s).
  Matrix out = Matrix::Zero(d_out, d_out);
  const Matrix& j_mat = ch.choi.mat();
  for (int i = 0; i < d_out; ++i)
    for (int j = 0; j < d_out; ++j) {
      Cplx acc = 0.0;
      for (int t = 0; t < d_in; ++t)
        for (int s = 0; s < d_in; ++s)
          acc += j_mat(i * d_in + t, j * d_in + s) * x.mat()(t, s);
      out(i, j) = acc;
    }
  // The result of a CP map applied to Hermitian input is Hermitian up to
  // roundoff; the constructor symmetrizes.
  return HermitianOperator(std::move(out), ch.out_dims);
}

HermitianOperator dual_apply(const TwoBranch& tb, const HermitianOperator& y) {
  if (y.side() != tb.rho1.side())
    throw std::invalid_argument("dual input dims do not match channel output");
  const double w1 = (tb.rho1.mat() * y.mat()).trace().real();
  const double w2 = (tb.rho2.mat() * y.mat()).trace().real();
  const Matrix id = Matrix::Identity(tb.effect.side(), tb.effect.side());
  return HermitianOperator(
      w1 * tb.effect.mat() + w2 * (id - tb.effect.mat()), tb.effect.dims());
}

Channel tensor(const Channel& c1, const Channel& c2) {
  const HermitianOperator joint = kron(c1.choi, c2.choi);
  // kron gives factor order (out1, in1, out2, in2); reorder to
  // (out1, out2, in1, in2).
  const int o1 = static_cast<int>(c1.out_dims.size());
  const int i1 = static_cast<int>(c1.in_dims.size());
  const int o2 = static_cast<int>(c2.out_dims.size());
  const int i2 = static_cast<int>(c2.in_dims.size());
  std::vector<int> perm;
  for (int k = 0; k < o1; ++k) perm.push_back(k);
  for (int k = 0; k < o2; ++k) perm.push_back(o1 + i1 + k);
  for (int k = 0; k < i1; ++k) perm.push_back(o1 + k);
  for (int k = 0; k < i2; ++k) perm.push_back(o1 + i1 + o2 + k);
  HermitianOperator choi = permute_factors(joint, perm);

  std::vector<int> out_dims = c1.out_dims;
  out_dims.insert(out_dims.end(), c2.out_dims.begin(), c2.out_dims.end());
  std::vector<int> in_dims = c1.in_dims;
  in_dims.insert(in_dims.end(), c2.in_dims.begin(), c2.in_dims.end());
  std::vector<int> out_a = c1.out_a;
  for (int k : c2.out_a) out_a.push_back(o1 + k);
  std::vector<int> in_a = c1.in_a;
  for (int k : c2.in_a) in_a.push_back(i1 + k);
  return Channel{std::move(choi), std::move(in_dims), std::move(out_dims),
                 std::move(out_a), std::move(in_a)};
}

bool is_cptp(const Channel& ch, const Tolerances& tol) {
  const double scale = std::max(1.0, frobenius_norm(ch.choi.mat()));
  if (min_eigenvalue(ch.choi) < -tol.psd * scale) return false;
  std::vector<int> keep;
  const int n_out = static_cast<int>(ch.out_dims.size());
  for (std::size_t k = 0; k < ch.in_dims.size(); ++k)
    keep.push_back(n_out + static_cast<int>(k));
  const HermitianOperator reduced = partial_trace(ch.choi, keep);
  const Matrix id = Matrix::Identity(ch.in_dim(), ch.in_dim());
  return (reduced.mat() - id).cwiseAbs().maxCoeff() <= tol.trace_preservation;
}

bool is_ppt_map(const Channel& ch, const Tolerances& tol) {
  const std::vector<int> a = ch.a_side_choi_factors();
  const HermitianOperator pt = partial_transpose(ch.choi, a);
  const double scale = std::max(1.0, frobenius_norm(ch.choi.mat()));
  return min_eigenvalue(pt) >= -tol.psd * scale;
}

}  // namespace entkit
