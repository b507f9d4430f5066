#pragma once

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace fdn {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Delay lengths in samples, one entry per delay line. Valid delays are >= 1.
using DelayVec = std::vector<int>;

// z^n by binary exponentiation. Negative n requires z != 0.
Cplx cpow_int(Cplx z, long n);

// Throws std::invalid_argument unless every entry of m is >= 1.
void validate_delays(const DelayVec& m);

// Throws std::invalid_argument when a value is NaN or Inf.
void require_finite(const Mat& a, const char* what);
void require_finite(const CVec& v, const char* what);
void require_finite(Cplx v, const char* what);

// Total delay: the order of the system and the degree of the generalized
// characteristic polynomial.
long system_order(const DelayVec& m);

// Diagonal of the delay matrix, [z^{-m_1}, ..., z^{-m_N}]. Pass 1/z to get
// the resolvent orientation z^{+m_i}. z must be nonzero.
CVec delay_matrix_eval(const DelayVec& m, Cplx z);

// Complex polynomial; coeffs()[k] multiplies z^k. An empty coefficient list
// is the zero polynomial.
class Poly {
 public:
  // Relative threshold below which coefficients are considered zero.
  static constexpr double kTrimTol = 1e-12;

  Poly() = default;
  explicit Poly(std::vector<Cplx> coeffs) : coeffs_(std::move(coeffs)) {}

  // Monic polynomial with the given roots.
  static Poly from_roots(std::span<const Cplx> roots);

  const std::vector<Cplx>& coeffs() const { return coeffs_; }
  Cplx coeff(long k) const;  // 0 outside the stored range
  long degree() const;       // largest k with coeffs_[k] != 0; -1 for zero poly
  bool is_zero() const { return degree() < 0; }
  double max_abs_coeff() const;

  Cplx eval(Cplx z) const;  // Horner
  Poly derivative() const;
  Poly operator*(const Poly& rhs) const;

  // Zeroes coefficients below rel_tol * max|c| and drops trailing zeros.
  Poly trimmed(double rel_tol = kTrimTol) const;
  // Trims, then divides by the leading coefficient. Throws on zero poly.
  Poly monic() const;

 private:
  std::vector<Cplx> coeffs_;
};

// Feedback matrix, input/output gains, direct gain and delays. Immutable
// after construction; all dimensions are validated against N = A.rows().
struct FdnSystem {
  Mat A;
  CVec b;
  CVec c;
  Cplx d{0.0, 0.0};
  DelayVec m;

  // Gains default to b = c = ones, d = 0; pole analysis does not use them.
  FdnSystem(Mat A_in, DelayVec m_in);
  FdnSystem(Mat A_in, CVec b_in, CVec c_in, Cplx d_in, DelayVec m_in);

  int size() const { return static_cast<int>(A.rows()); }
  long order() const { return system_order(m); }
};

// H(z) = c^T [diag(z^{m_i}) - A]^{-1} b + d via a linear solve.
// Throws std::runtime_error when the resolvent is singular at z.
Cplx transfer_eval(const FdnSystem& sys, Cplx z);

}  // namespace fdn
