#pragma once

#include "fdn/model.hpp"

#include <optional>

namespace fdn {

// Sorted distinct 0-based row/column indices selecting a principal submatrix.
using IndexSet = std::vector<int>;

// Exhaustive principal-minor assembly is limited to 2^N subsets.
inline constexpr int kMinorEnumerationMaxN = 20;
// Evaluation-interpolation bound on the system order.
inline constexpr long kOracleMaxOrder = 4096;

// det A(I), the determinant of the submatrix with rows and columns I.
// The empty set yields 1.
Cplx principal_minor(const Mat& a, const IndexSet& indices);

// Generalized characteristic polynomial p(z) = det[diag(z^{m_i}) - A],
// assembled coefficient-by-coefficient from principal minors: coefficient k
// sums (-1)^{N-|I|} det A(I^c) over the subsets I whose delays add up to k.
// Monic of degree sum(m). Requires N <= kMinorEnumerationMaxN.
Poly generalized_charpoly(const Mat& a, const DelayVec& m);

// Same polynomial by an independent route: evaluate the determinant at the
// (sum(m)+1)-th roots of unity and interpolate by inverse DFT.
Poly charpoly_oracle(const Mat& a, const DelayVec& m);

// Monic polynomial whose roots are the transfer-function zeros, i.e. the
// roots of det[A - b(1/d)c^T - diag(z^{m_i})]. That determinant equals
// (-1)^N p(z) of the rank-one-corrected matrix; the sign is discarded by
// monic normalization. Requires d != 0.
Poly zeros_poly(const FdnSystem& sys);

// If there is a unimodular eps with c_{n-j} = eps * conj(c_j) for all j
// (within tol * max|c|), returns it; otherwise nullopt.
std::optional<Cplx> is_self_inversive(const Poly& p, double tol = 1e-9);

}  // namespace fdn
