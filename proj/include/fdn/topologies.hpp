#pragma once

#include "fdn/model.hpp"

#include <array>
#include <cstdint>

namespace fdn {

// Matrix exponential by scaling-and-squaring with a fixed [10/10] Pade
// approximant. Accurate to ~1e-13 relative for ||M|| up to several units.
Mat expm(const Mat& m);

// Feedback-feedforward comb filter (z^{-m} - g_f) / (1 - g_b z^{-m}).
Cplx comb_filter_eval(int m, Cplx g_b, Cplx g_f, Cplx z);

// Four parallel combs (gains g[0..3], delays m[0..3]) followed by two
// serial allpasses (g[4], g[5]); the classic two-stage reverberator as a
// 6-line FDN. The transfer function factors into the comb-sum times the
// allpass product.
FdnSystem schroeder(const std::array<double, 6>& g,
                    const std::array<int, 6>& m);

struct AllpassFdn {
  Mat a_ap;       // 2N x 2N
  DelayVec m_ap;  // [m, m_prime]
};

// Embeds an FDN whose delays are extended by comb allpasses (gains g,
// allpass delays m_prime) into a standard FDN of twice the size:
// A_ap = [[-A G, A], [I - G^2, G]]. Requires |g_i| < 1 so the similarity
// factor sqrt(I - G^2) stays nonsingular.
AllpassFdn allpass_fdn(const Mat& a, const std::vector<double>& g,
                       const DelayVec& m, const DelayVec& m_prime);

// Scattering junction matrices: (2/<1,y>) 1 y^T - I, which is diagonally
// similar to unitary, and the Householder reflection (2/||y||^2) y y^T - I.
Mat sdn_even(const RVec& y);
Mat sdn_householder(const RVec& y);

// exp(iM) for real M; satisfies A A^* = I (conjugate-involutory).
Mat conjugate_involutory(const Eigen::MatrixXd& m);

// exp of a seeded random skew-Hermitian matrix; unitary to ~1e-12.
Mat random_unitary(int n, std::uint64_t seed);

struct ScaledUnitary {
  Mat a;                 // F^{-1} Q F
  RVec scaling;          // positive diagonal of F
};

// Random unilossless matrix built from the certificate construction:
// conjugate a random unitary by a random positive diagonal. The exact
// certificate is e_i = scaling[i]^{-2} (up to normalization).
ScaledUnitary random_unilossless_scaled(int n, std::uint64_t seed);
Mat random_unilossless(int n, std::uint64_t seed);

}  // namespace fdn
