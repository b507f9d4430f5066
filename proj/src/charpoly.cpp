#include "fdn/charpoly.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdn {

namespace {

void check_square_and_delays(const Mat& a, const DelayVec& m,
                             const char* what) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
  validate_delays(m);
  if (static_cast<Eigen::Index>(m.size()) != a.rows()) {
    throw std::invalid_argument(std::string(what) +
                                ": delay count must match matrix dimension");
  }
  require_finite(a, what);
}

Cplx minor_of_mask(const Mat& a, unsigned mask) {
  const int n = std::popcount(mask);
  if (n == 0) return {1.0, 0.0};
  Mat sub(n, n);
  int r = 0;
  for (int i = 0; i < static_cast<int>(a.rows()); ++i) {
    if (!(mask & (1u << i))) continue;
    int c = 0;
    for (int j = 0; j < static_cast<int>(a.cols()); ++j) {
      if (!(mask & (1u << j))) continue;
      sub(r, c++) = a(i, j);
    }
    ++r;
  }
  if (n == 1) return sub(0, 0);
  return Eigen::PartialPivLU<Mat>(sub).determinant();
}

}  // namespace

Cplx principal_minor(const Mat& a, const IndexSet& indices) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("principal_minor: matrix must be square");
  }
  for (size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= static_cast<int>(a.rows())) {
      throw std::invalid_argument("principal_minor: index out of range");
    }
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw std::invalid_argument(
          "principal_minor: indices must be sorted and distinct");
    }
  }
  const int n = static_cast<int>(indices.size());
  if (n == 0) return {1.0, 0.0};
  Mat sub(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      sub(r, c) = a(indices[static_cast<size_t>(r)],
                    indices[static_cast<size_t>(c)]);
    }
  }
  if (n == 1) return sub(0, 0);
  return Eigen::PartialPivLU<Mat>(sub).determinant();
}

Poly generalized_charpoly(const Mat& a, const DelayVec& m) {
  check_square_and_delays(a, m, "generalized_charpoly");
  const int n = static_cast<int>(a.rows());
  if (n > kMinorEnumerationMaxN) {
    throw std::invalid_argument(
        "generalized_charpoly: dimension exceeds the subset enumeration "
        "bound; use charpoly_oracle");
  }
  const long order = system_order(m);
  std::vector<Cplx> coeffs(static_cast<size_t>(order) + 1, Cplx{0.0, 0.0});

  const unsigned full = (n == 32) ? ~0u : ((1u << n) - 1u);
  // Gray-code walk: consecutive subsets differ in one element, so the delay
  // sum of the subset is updated incrementally.
  unsigned prev_gray = 0;
  long delay_sum = 0;
  const unsigned long count = 1ul << n;
  for (unsigned long i = 0; i < count; ++i) {
    const unsigned gray = static_cast<unsigned>(i ^ (i >> 1));
    if (gray != prev_gray) {
      const unsigned changed = gray ^ prev_gray;
      const int bit = std::countr_zero(changed);
      delay_sum += (gray & changed) ? m[static_cast<size_t>(bit)]
                                    : -m[static_cast<size_t>(bit)];
      prev_gray = gray;
    }
    const int size = std::popcount(gray);
    const double sign = ((n - size) % 2 == 0) ? 1.0 : -1.0;
    coeffs[static_cast<size_t>(delay_sum)] +=
        sign * minor_of_mask(a, full & ~gray);
  }
  return Poly(std::move(coeffs));
}

Poly charpoly_oracle(const Mat& a, const DelayVec& m) {
  check_square_and_delays(a, m, "charpoly_oracle");
  const long order = system_order(m);
  if (order > kOracleMaxOrder) {
    throw std::invalid_argument("charpoly_oracle: system order too large");
  }
  const long npts = order + 1;
  const auto n = a.rows();

  // Sample p at the npts-th roots of unity.
  std::vector<Cplx> samples(static_cast<size_t>(npts));
  for (long j = 0; j < npts; ++j) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(j) /
                     static_cast<double>(npts);
    const Cplx w{std::cos(t), std::sin(t)};
    Mat resolvent = -a;
    for (Eigen::Index i = 0; i < n; ++i) {
      resolvent(i, i) += cpow_int(w, m[static_cast<size_t>(i)]);
    }
    samples[static_cast<size_t>(j)] =
        Eigen::PartialPivLU<Mat>(resolvent).determinant();
  }

  // Nodes form a complete set of roots of unity, so the Vandermonde solve
  // collapses to an inverse DFT.
  std::vector<Cplx> coeffs(static_cast<size_t>(npts));
  for (long k = 0; k < npts; ++k) {
    Cplx acc{0.0, 0.0};
    for (long j = 0; j < npts; ++j) {
      const double t = -2.0 * std::numbers::pi * static_cast<double>(j * k) /
                       static_cast<double>(npts);
      acc += samples[static_cast<size_t>(j)] * Cplx{std::cos(t), std::sin(t)};
    }
    coeffs[static_cast<size_t>(k)] = acc / static_cast<double>(npts);
  }
  return Poly(std::move(coeffs));
}

Poly zeros_poly(const FdnSystem& sys) {
  if (sys.d == Cplx{0.0, 0.0}) {
    throw std::domain_error(
        "zeros_poly: direct gain d is zero; the rank-one correction "
        "A - b(1/d)c^T is undefined");
  }
  const Mat corrected =
      sys.A - (sys.b * sys.c.transpose()) / sys.d;
  return generalized_charpoly(corrected, sys.m).monic();
}

std::optional<Cplx> is_self_inversive(const Poly& p, double tol) {
  const Poly t = p.trimmed();
  const long n = t.degree();
  if (n < 0) return std::nullopt;
  const double scale = t.max_abs_coeff();

  // Anchor eps on the largest coefficient for a well-conditioned ratio.
  long anchor = 0;
  double best = -1.0;
  for (long j = 0; j <= n; ++j) {
    const double mag = std::abs(t.coeff(j));
    if (mag > best) {
      best = mag;
      anchor = j;
    }
  }
  const Cplx eps = t.coeff(n - anchor) / std::conj(t.coeff(anchor));
  if (std::abs(std::abs(eps) - 1.0) > tol) return std::nullopt;

  for (long j = 0; j <= n; ++j) {
    if (std::abs(t.coeff(n - j) - eps * std::conj(t.coeff(j))) > tol * scale) {
      return std::nullopt;
    }
  }
  return eps / std::abs(eps);
}

}  // namespace fdn
