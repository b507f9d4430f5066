#pragma once

#include "fdn/model.hpp"
#include "fdn/structure.hpp"

#include <optional>

namespace fdn {

struct UnilosslessOptions {
  double tol = 1e-8;       // relative tolerance for Perron value and residual
  double zero_tol = 0.0;   // structural-zero threshold for the decomposition
};

// Per irreducible-block diagnostics. residual is relative:
// ||B diag(e) B^H - diag(e)||_F / ||diag(e)||_F for the Perron candidate e.
struct BlockReport {
  std::vector<int> indices;  // original matrix indices of the block
  double perron = 0.0;       // Perron value of M = |b_ij|^2
  double residual = 0.0;
  std::optional<RVec> certificate_e;  // positive, normalized e[0] = 1
  bool pass = false;
};

struct UnilosslessReport {
  bool unilossless = false;
  std::vector<BlockReport> blocks;
  BlockDecomposition decomposition;
  UnilosslessOptions options;
};

// Searches for a positive diagonal certificate E = diag(e) with
// B E B^H = E. The diagonal of that identity forces M e = e for
// M = |b_ij|^2, so the Perron vector of M is the only candidate; it is
// accepted when the Perron value is 1 and the full residual vanishes
// (both within tol). B must be irreducible.
std::optional<RVec> unitary_similarity_certificate(const Mat& b,
                                                   double tol = 1e-8);

// Decomposes A into irreducible blocks and certifies each one. Scalar
// blocks pass iff their entry is unimodular within tol; larger blocks iff
// a positive certificate exists. The verdict is the conjunction.
UnilosslessReport is_unilossless(const Mat& a, UnilosslessOptions opts = {});

// E^{-1} A E for diagonal E given by its diagonal entries.
Mat diagonal_conjugate(const Mat& a, const CVec& e);

// diag(gamma^{-m_1}, ..., gamma^{-m_N}) * A for unimodular gamma. With this
// orientation r is a root of the rotated polynomial iff r*gamma is a root
// of the original one.
Mat rotate_feedback(const Mat& a, Cplx gamma, const DelayVec& m);

// Gain transport under diagonal similarity: b' = E b, c' = E^{-1} c.
// The zeros polynomial of (E^{-1}AE, b, c) equals that of (A, b', c').
std::pair<CVec, CVec> io_gain_transform(const CVec& b, const CVec& c,
                                        const CVec& e);

}  // namespace fdn
