// Channel representation and algebra: Choi matrices, application, duals,
// tensor products, and the CPTP / PPT-map predicates.
#pragma once

#include <optional>
#include <vector>

#include "entkit/linalg.hpp"

namespace entkit {

/// Measure-and-prepare form Lambda(X) = Tr(AX) rho1 + Tr((I-A)X) rho2,
/// CPTP whenever 0 <= A <= I and rho1, rho2 are states.
struct TwoBranch {
  HermitianOperator effect;  // A
  HermitianOperator rho1;
  HermitianOperator rho2;

  TwoBranch(HermitianOperator a, HermitianOperator r1, HermitianOperator r2);
};

/// Completely positive map represented by its Choi matrix over
/// output-then-input factors, with the factor indices belonging to the
/// A party recorded for partial-transpose and separability tests
/// (the A2A1 : B2B1 split).
struct Channel {
  HermitianOperator choi;  // dims = out_dims ++ in_dims
  std::vector<int> in_dims;
  std::vector<int> out_dims;
  std::vector<int> out_a;  // indices into out_dims on the A side
  std::vector<int> in_a;   // indices into in_dims on the A side

  /// A-side factor indices into the Choi dims (out factors first).
  std::vector<int> a_side_choi_factors() const;
  int in_dim() const;
  int out_dim() const;
};

Channel choi_of_two_branch(const TwoBranch& tb,
                           std::vector<int> out_a = {0},
                           std::vector<int> in_a = {0});

Channel identity_channel(std::vector<int> dims, std::vector<int> a_side = {0});

/// Lambda(X) = Tr_in(J (I_out otimes X^T)).
HermitianOperator apply(const Channel& ch, const HermitianOperator& x);

/// Dual of a two-branch map: Lambda*(Y) = Tr(rho1 Y) A + Tr(rho2 Y)(I - A).
HermitianOperator dual_apply(const TwoBranch& tb, const HermitianOperator& y);

/// Tensor of two channels with Choi factors reordered to
/// (out1 out2 : in1 in2).
Channel tensor(const Channel& c1, const Channel& c2);

bool is_cptp(const Channel& ch, const Tolerances& tol = default_tols());

/// True when the partial transpose of the Choi matrix over the A-side
/// factors is positive semidefinite.
bool is_ppt_map(const Channel& ch, const Tolerances& tol = default_tols());

}  // namespace entkit
