#include "fdn/roots.hpp"

#include "fdn/charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdn {

namespace {

// Parlett-Reinsch style balancing by powers of two: scale row/column pairs
// until the off-diagonal 1-norms stop improving. Exact in floating point
// since only exponents change.
void balance_in_place(Mat& a) {
  const Eigen::Index n = a.rows();
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row_norm = 0.0;
      double col_norm = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row_norm += std::abs(a(i, j));
        col_norm += std::abs(a(j, i));
      }
      if (row_norm == 0.0 || col_norm == 0.0) continue;
      int exponent = 0;
      std::frexp(row_norm / col_norm, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col_norm, exponent);
      const double scaled_row = std::ldexp(row_norm, -exponent);
      if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
        changed = true;
        const double down = std::ldexp(1.0, -exponent);
        const double up = std::ldexp(1.0, exponent);
        for (Eigen::Index j = 0; j < n; ++j) {
          if (j == i) continue;
          a(i, j) *= down;
          a(j, i) *= up;
        }
      }
    }
  }
}

std::vector<Cplx> quadratic_roots(Cplx c0, Cplx c1, Cplx c2) {
  // Stable form: the larger root from -b -/+ sqrt(disc), the other from
  // the product c0/c2.
  const Cplx disc = std::sqrt(c1 * c1 - 4.0 * c2 * c0);
  const Cplx q = (std::abs(-c1 + disc) >= std::abs(-c1 - disc))
                     ? (-c1 + disc) * 0.5
                     : (-c1 - disc) * 0.5;
  if (q == Cplx{0.0, 0.0}) {
    return {Cplx{0.0, 0.0}, Cplx{0.0, 0.0}};
  }
  return {q / c2, c0 / q};
}

}  // namespace

void sort_roots(std::vector<Cplx>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Cplx& x, const Cplx& y) {
    const double ax = std::arg(x);
    const double ay = std::arg(y);
    if (ax != ay) return ax < ay;
    return std::abs(x) < std::abs(y);
  });
}

RootSet poly_roots(const Poly& p) {
  for (const Cplx& c : p.coeffs()) require_finite(c, "poly_roots");
  const Poly t = p.trimmed();
  const long degree = t.degree();
  if (degree < 0) throw std::invalid_argument("poly_roots: zero polynomial");
  if (degree < 1) {
    throw std::invalid_argument("poly_roots: constant polynomial");
  }

  const Poly mp = t.monic();
  std::vector<Cplx> roots;
  if (degree == 1) {
    roots = {-mp.coeff(0)};
  } else if (degree == 2) {
    roots = quadratic_roots(mp.coeff(0), mp.coeff(1), Cplx{1.0, 0.0});
  } else {
    Mat companion = Mat::Zero(degree, degree);
    for (long i = 1; i < degree; ++i) companion(i, i - 1) = Cplx{1.0, 0.0};
    for (long i = 0; i < degree; ++i) companion(i, degree - 1) = -mp.coeff(i);
    balance_in_place(companion);
    Eigen::ComplexEigenSolver<Mat> solver(companion, false);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("poly_roots: eigensolver failed to converge");
    }
    roots.assign(solver.eigenvalues().begin(), solver.eigenvalues().end());
  }
  sort_roots(roots);
  return RootSet{std::move(roots)};
}

LosslessVerdict is_lossless_poly(const Poly& p, double tol) {
  const RootSet rs = poly_roots(p);
  double max_dev = 0.0;
  for (const Cplx& r : rs.roots) {
    max_dev = std::max(max_dev, std::abs(std::abs(r) - 1.0));
  }
  return LosslessVerdict{max_dev <= tol, max_dev};
}

bool cohn_is_unimodular(const Poly& p, double tol) {
  const Poly t = p.trimmed();
  if (t.degree() < 1) {
    throw std::invalid_argument("cohn_is_unimodular: degree must be >= 1");
  }
  if (!is_self_inversive(t, tol)) return false;
  const Poly dp = t.derivative().trimmed();
  if (dp.degree() < 1) return true;  // constant derivative has no roots
  for (const Cplx& r : poly_roots(dp).roots) {
    if (std::abs(r) > 1.0 + tol) return false;
  }
  return true;
}

}  // namespace fdn
