#include "fdn/unilossless.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdn {

namespace {

constexpr int kPowerIterationCap = 100000;
constexpr double kPowerIterationTol = 1e-14;

struct PerronPair {
  double value = 0.0;
  RVec vector;  // positive, normalized to vector[0] = 1
};

// Power iteration with Collatz-Wielandt convergence; falls back to a dense
// eigensolver when the iteration stalls (imprimitive M oscillates).
PerronPair perron_pair(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  RVec v = RVec::Ones(n) / static_cast<double>(n);
  double lambda = 1.0;
  for (int it = 0; it < kPowerIterationCap; ++it) {
    RVec w = m * v;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (v[i] <= 0.0) {
        lo = 0.0;
        hi = std::numeric_limits<double>::infinity();
        break;
      }
      const double ratio = w[i] / v[i];
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    lambda = 0.5 * (lo + hi);
    const double sum = w.sum();
    if (sum <= 0.0) break;  // row of zeros reached; defer to dense solver
    v = w / sum;
    if (hi - lo <= kPowerIterationTol * std::max(1.0, lambda)) {
      return PerronPair{lambda, v / v[0]};
    }
  }

  // Dense fallback: spectral radius with phase-fixed eigenvector. The
  // Perron value is the real positive eigenvalue of maximum modulus, so
  // among the equal-modulus ring pick the one with largest real part.
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("perron_pair: eigensolver failed");
  }
  double max_mod = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    max_mod = std::max(max_mod, std::abs(solver.eigenvalues()[i]));
  }
  Eigen::Index best = 0;
  double best_re = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(solver.eigenvalues()[i]) < max_mod * (1.0 - 1e-10)) continue;
    if (solver.eigenvalues()[i].real() > best_re) {
      best_re = solver.eigenvalues()[i].real();
      best = i;
    }
  }
  CVec ev = solver.eigenvectors().col(best);
  Eigen::Index pivot = 0;
  ev.cwiseAbs().maxCoeff(&pivot);
  ev /= ev[pivot] / std::abs(ev[pivot]);  // rotate to the positive real axis
  RVec e = ev.real();
  if (e[0] == 0.0) {
    throw std::runtime_error("perron_pair: degenerate Perron vector");
  }
  e /= e[0];
  return PerronPair{std::abs(solver.eigenvalues()[best]), e};
}

struct CertificateDiag {
  double perron = 0.0;
  double residual = 0.0;
  RVec candidate;
  bool pass = false;
};

CertificateDiag certificate_diagnostics(const Mat& b, double tol) {
  const Eigen::MatrixXd m = b.cwiseAbs2();
  PerronPair pp = perron_pair(m);

  CertificateDiag diag;
  diag.perron = pp.value;
  diag.candidate = pp.vector;

  const Mat e = pp.vector.cast<Cplx>().asDiagonal();
  diag.residual =
      (b * e * b.adjoint() - e).norm() / e.norm();
  const bool positive = (pp.vector.array() > 0.0).all();
  diag.pass = positive && std::abs(pp.value - 1.0) <= tol &&
              diag.residual <= tol;
  return diag;
}

}  // namespace

std::optional<RVec> unitary_similarity_certificate(const Mat& b, double tol) {
  if (b.rows() != b.cols() || b.rows() < 1) {
    throw std::invalid_argument(
        "unitary_similarity_certificate: matrix must be square");
  }
  require_finite(b, "unitary_similarity_certificate");
  if (!is_irreducible(b)) {
    throw std::invalid_argument(
        "unitary_similarity_certificate: matrix is reducible; decompose "
        "into irreducible blocks first");
  }
  CertificateDiag diag = certificate_diagnostics(b, tol);
  if (!diag.pass) return std::nullopt;
  return diag.candidate;
}

UnilosslessReport is_unilossless(const Mat& a, UnilosslessOptions opts) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw std::invalid_argument("is_unilossless: matrix must be square");
  }
  require_finite(a, "is_unilossless");

  UnilosslessReport report;
  report.options = opts;
  report.decomposition = decompose(a, opts.zero_tol);
  report.unilossless = true;

  for (size_t bi = 0; bi < report.decomposition.blocks.size(); ++bi) {
    const Mat block =
        report.decomposition.block_matrix(a, static_cast<int>(bi));
    BlockReport br;
    br.indices = report.decomposition.block_indices(static_cast<int>(bi));
    if (block.rows() == 1) {
      // Scalar component: unilossless iff the entry is unimodular.
      const double mag = std::abs(block(0, 0));
      br.perron = mag * mag;
      br.residual = std::abs(mag * mag - 1.0);
      br.pass = std::abs(mag - 1.0) <= opts.tol;
      if (br.pass) br.certificate_e = RVec::Ones(1);
    } else {
      CertificateDiag diag = certificate_diagnostics(block, opts.tol);
      br.perron = diag.perron;
      br.residual = diag.residual;
      br.pass = diag.pass;
      if (diag.pass) br.certificate_e = diag.candidate;
    }
    report.unilossless = report.unilossless && br.pass;
    report.blocks.push_back(std::move(br));
  }
  return report;
}

Mat diagonal_conjugate(const Mat& a, const CVec& e) {
  if (a.rows() != a.cols() || e.size() != a.rows()) {
    throw std::invalid_argument("diagonal_conjugate: dimension mismatch");
  }
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e[i] == Cplx{0.0, 0.0}) {
      throw std::domain_error("diagonal_conjugate: zero diagonal entry");
    }
  }
  Mat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out(i, j) = a(i, j) * e[j] / e[i];
    }
  }
  return out;
}

Mat rotate_feedback(const Mat& a, Cplx gamma, const DelayVec& m) {
  if (a.rows() != a.cols() ||
      static_cast<Eigen::Index>(m.size()) != a.rows()) {
    throw std::invalid_argument("rotate_feedback: dimension mismatch");
  }
  validate_delays(m);
  if (std::abs(std::abs(gamma) - 1.0) > 1e-12) {
    throw std::domain_error("rotate_feedback: gamma must be unimodular");
  }
  Mat out = a;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    out.row(i) *= cpow_int(gamma, -static_cast<long>(m[static_cast<size_t>(i)]));
  }
  return out;
}

std::pair<CVec, CVec> io_gain_transform(const CVec& b, const CVec& c,
                                        const CVec& e) {
  if (b.size() != e.size() || c.size() != e.size()) {
    throw std::invalid_argument("io_gain_transform: dimension mismatch");
  }
  for (Eigen::Index i = 0; i < e.size(); ++i) {
    if (e[i] == Cplx{0.0, 0.0}) {
      throw std::domain_error("io_gain_transform: zero diagonal entry");
    }
  }
  CVec bp = b.cwiseProduct(e);
  CVec cp = c.cwiseQuotient(e);
  return {std::move(bp), std::move(cp)};
}

}  // namespace fdn
