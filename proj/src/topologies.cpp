#include "fdn/topologies.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace fdn {

Mat expm(const Mat& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  require_finite(m, "expm");
  const Eigen::Index n = m.rows();

  // Scale below 1/2 in the infinity norm, apply the Pade approximant,
  // square back.
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Mat scaled = m / std::ldexp(1.0, squarings);

  constexpr int kOrder = 10;
  double coeff = 1.0;
  Mat power = Mat::Identity(n, n);
  Mat num = Mat::Identity(n, n);
  Mat den = Mat::Identity(n, n);
  for (int k = 1; k <= kOrder; ++k) {
    coeff *= static_cast<double>(kOrder + 1 - k) /
             static_cast<double>(k * (2 * kOrder + 1 - k));
    power = power * scaled;
    num += coeff * power;
    den += (k % 2 == 0 ? coeff : -coeff) * power;
  }
  Mat result = Eigen::PartialPivLU<Mat>(den).solve(num);
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Cplx comb_filter_eval(int m, Cplx g_b, Cplx g_f, Cplx z) {
  if (m < 1) throw std::invalid_argument("comb_filter_eval: delay must be >= 1");
  if (z == Cplx{0.0, 0.0}) {
    throw std::domain_error("comb_filter_eval: z must be nonzero");
  }
  const Cplx zm = cpow_int(z, -static_cast<long>(m));
  const Cplx den = Cplx{1.0, 0.0} - g_b * zm;
  if (std::abs(den) == 0.0) {
    throw std::runtime_error("comb_filter_eval: evaluation point is a pole");
  }
  return (zm - g_f) / den;
}

FdnSystem schroeder(const std::array<double, 6>& g,
                    const std::array<int, 6>& m) {
  const double g5 = g[4];
  const double g6 = g[5];
  Mat a = Mat::Zero(6, 6);
  for (int i = 0; i < 4; ++i) a(i, i) = g[static_cast<size_t>(i)];
  a(4, 0) = a(4, 1) = a(4, 2) = a(4, 3) = Cplx{1.0, 0.0};
  a(4, 4) = g5;
  a(5, 0) = a(5, 1) = a(5, 2) = a(5, 3) = -g5;
  a(5, 4) = 1.0 - g5 * g5;
  a(5, 5) = g6;

  CVec b(6);
  b << 1.0, 1.0, 1.0, 1.0, 0.0, 0.0;
  CVec c(6);
  c << g5 * g6, g5 * g6, g5 * g6, g5 * g6, g6 * (g5 * g5 - 1.0),
      1.0 - g6 * g6;

  return FdnSystem(std::move(a), std::move(b), std::move(c), Cplx{0.0, 0.0},
                   DelayVec(m.begin(), m.end()));
}

AllpassFdn allpass_fdn(const Mat& a, const std::vector<double>& g,
                       const DelayVec& m, const DelayVec& m_prime) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) {
    throw std::invalid_argument("allpass_fdn: core matrix must be square");
  }
  if (static_cast<Eigen::Index>(g.size()) != n ||
      static_cast<Eigen::Index>(m.size()) != n ||
      static_cast<Eigen::Index>(m_prime.size()) != n) {
    throw std::invalid_argument("allpass_fdn: dimension mismatch");
  }
  validate_delays(m);
  validate_delays(m_prime);
  for (double gi : g) {
    if (std::abs(gi) >= 1.0) {
      throw std::domain_error(
          "allpass_fdn: |g| >= 1 makes sqrt(I - G^2) singular; allpass "
          "gains must satisfy |g| < 1");
    }
  }

  Mat gd = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) gd(i, i) = g[static_cast<size_t>(i)];

  AllpassFdn out;
  out.a_ap = Mat::Zero(2 * n, 2 * n);
  out.a_ap.topLeftCorner(n, n) = -a * gd;
  out.a_ap.topRightCorner(n, n) = a;
  out.a_ap.bottomLeftCorner(n, n) = Mat::Identity(n, n) - gd * gd;
  out.a_ap.bottomRightCorner(n, n) = gd;

  out.m_ap = m;
  out.m_ap.insert(out.m_ap.end(), m_prime.begin(), m_prime.end());
  return out;
}

Mat sdn_even(const RVec& y) {
  const Eigen::Index n = y.size();
  if (n < 1) throw std::invalid_argument("sdn_even: y must be nonempty");
  const double s = y.sum();
  if (s == 0.0) {
    throw std::domain_error("sdn_even: <1, y> must be nonzero");
  }
  Eigen::MatrixXd a =
      (2.0 / s) * Eigen::VectorXd::Ones(n) * y.transpose() -
      Eigen::MatrixXd::Identity(n, n);
  return a.cast<Cplx>();
}

Mat sdn_householder(const RVec& y) {
  const Eigen::Index n = y.size();
  if (n < 1 || y.squaredNorm() == 0.0) {
    throw std::domain_error("sdn_householder: y must be nonzero");
  }
  Eigen::MatrixXd a = (2.0 / y.squaredNorm()) * y * y.transpose() -
                      Eigen::MatrixXd::Identity(n, n);
  return a.cast<Cplx>();
}

Mat conjugate_involutory(const Eigen::MatrixXd& m) {
  return expm(Cplx{0.0, 1.0} * m.cast<Cplx>());
}

Mat random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_unitary: n must be >= 1");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Mat x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x(i, j) = Cplx{dist(gen), dist(gen)};
    }
  }
  const Mat skew = 0.5 * (x - x.adjoint());
  return expm(skew);
}

ScaledUnitary random_unilossless_scaled(int n, std::uint64_t seed) {
  ScaledUnitary out;
  const Mat q = random_unitary(n, seed);
  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  out.scaling = RVec(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.scaling[i] = std::exp(dist(gen) * std::log(3.0));  // in [1/3, 3]
  }
  // F^{-1} Q F entrywise: q_ij * f_j / f_i.
  out.a = q;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out.a(i, j) *= out.scaling[j] / out.scaling[i];
    }
  }
  return out;
}

Mat random_unilossless(int n, std::uint64_t seed) {
  return random_unilossless_scaled(n, seed).a;
}

}  // namespace fdn
