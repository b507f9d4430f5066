#pragma once

#include "fdn/model.hpp"
#include "fdn/roots.hpp"

#include <Eigen/SparseCore>

namespace fdn {

// Dense eigensolves of the transition matrix are limited to this order.
inline constexpr long kStateSpaceEigMaxOrder = 512;

// Single-sample recursion s(n+1) = A_hat s(n) + b_hat x(n),
// y(n) = c_hat^T s(n) + d_hat x(n), equivalent to the delay-line form.
//
// State layout: delay line i occupies the contiguous slot range layout[i];
// the slot at offset k holds the line value that emerges k samples from
// now (oldest first). Each shift row of A_hat carries a single unit entry;
// the last row of every line couples the heads through the feedback matrix.
//
// The embedding is an independent pole oracle and reference simulator
// only. It does not support a delay-independent energy argument: a
// diagonal weighting of the state does not commute with the shift
// structure, so losslessness is always decided through the certificate
// machinery instead.
struct StateSpace {
  Eigen::SparseMatrix<Cplx> a_hat;
  CVec b_hat;
  CVec c_hat;
  Cplx d_hat{0.0, 0.0};
  std::vector<std::pair<long, long>> layout;  // per line (offset, length)

  long order() const { return a_hat.rows(); }
};

StateSpace build_statespace(const FdnSystem& sys);

// Advances the state one sample in place and returns the output. Cost is
// proportional to the nonzeros of A_hat, never order^2.
Cplx statespace_step(const StateSpace& ss, CVec& state, Cplx x);

// System poles as eigenvalues of the (densified) transition matrix.
RootSet statespace_poles(const FdnSystem& sys);
RootSet statespace_poles(const StateSpace& ss);

}  // namespace fdn
