#pragma once

// Shared helpers for the test suites. The oracles here are deliberately
// independent of the library's computation paths: determinants by Laplace
// expansion, polynomial expansion by direct convolution, root-set matching
// by greedy nearest pairing.

#include "fdn/model.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testsupport {

using fdn::Cplx;
using fdn::CVec;
using fdn::Mat;

// Laplace expansion along the first row; fine for n <= 9.
inline Cplx naive_det(const Mat& a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return {1.0, 0.0};
  if (n == 1) return a(0, 0);
  Cplx acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < n; ++j) {
    Mat sub(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r) {
      Eigen::Index cc = 0;
      for (Eigen::Index c = 0; c < n; ++c) {
        if (c == j) continue;
        sub(r - 1, cc++) = a(r, c);
      }
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * a(0, j) * naive_det(sub);
  }
  return acc;
}

// Monic expansion prod (z - r_i) by convolution, independent of Poly.
inline std::vector<Cplx> expand_from_roots(const std::vector<Cplx>& roots) {
  std::vector<Cplx> c{Cplx{1.0, 0.0}};
  for (const Cplx& r : roots) {
    std::vector<Cplx> next(c.size() + 1, Cplx{0.0, 0.0});
    for (size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

// Greedy nearest-neighbor pairing; returns the largest pair distance.
// Adequate for well-separated root sets of equal size.
inline double match_root_sets(std::vector<Cplx> a, std::vector<Cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  std::vector<bool> used(b.size(), false);
  for (const Cplx& x : a) {
    double best = std::numeric_limits<double>::infinity();
    size_t best_j = 0;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

// Coefficient-wise distance scaled by max(1, |c|).
inline double poly_distance(const fdn::Poly& p, const fdn::Poly& q) {
  const long n = std::max(p.degree(), q.degree());
  double worst = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double scale =
        std::max({1.0, std::abs(p.coeff(k)), std::abs(q.coeff(k))});
    worst = std::max(worst, std::abs(p.coeff(k) - q.coeff(k)) / scale);
  }
  return worst;
}

inline Mat random_complex_matrix(int n, std::mt19937_64& gen,
                                 double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = scale * Cplx{dist(gen), dist(gen)};
    }
  }
  return a;
}

inline fdn::DelayVec random_delays(int n, int max_delay,
                                   std::mt19937_64& gen) {
  std::uniform_int_distribution<int> dist(1, max_delay);
  fdn::DelayVec m;
  for (int i = 0; i < n; ++i) m.push_back(dist(gen));
  return m;
}

inline Cplx random_unimodular(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * 3.141592653589793);
  const double t = dist(gen);
  return Cplx{std::cos(t), std::sin(t)};
}

}  // namespace testsupport
