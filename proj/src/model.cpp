#include "fdn/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fdn {

Cplx cpow_int(Cplx z, long n) {
  if (n < 0) {
    if (z == Cplx{0.0, 0.0}) {
      throw std::domain_error("cpow_int: negative power of zero");
    }
    return cpow_int(Cplx{1.0, 0.0} / z, -n);
  }
  Cplx result{1.0, 0.0};
  Cplx base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

void validate_delays(const DelayVec& m) {
  if (m.empty()) throw std::invalid_argument("delay vector is empty");
  for (int mi : m) {
    if (mi < 1) {
      throw std::invalid_argument("delay lengths must be >= 1 samples, got " +
                                  std::to_string(mi));
    }
  }
}

void require_finite(Cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw std::invalid_argument(std::string(what) + ": non-finite value");
  }
}

void require_finite(const Mat& a, const char* what) {
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_finite(const CVec& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

long system_order(const DelayVec& m) {
  validate_delays(m);
  return std::accumulate(m.begin(), m.end(), 0L);
}

CVec delay_matrix_eval(const DelayVec& m, Cplx z) {
  validate_delays(m);
  require_finite(z, "delay_matrix_eval");
  if (z == Cplx{0.0, 0.0}) {
    throw std::domain_error("delay_matrix_eval: z must be nonzero");
  }
  CVec diag(static_cast<Eigen::Index>(m.size()));
  for (size_t i = 0; i < m.size(); ++i) {
    diag[static_cast<Eigen::Index>(i)] = cpow_int(z, -static_cast<long>(m[i]));
  }
  return diag;
}

Poly Poly::from_roots(std::span<const Cplx> roots) {
  std::vector<Cplx> c{Cplx{1.0, 0.0}};
  for (Cplx r : roots) {
    c.push_back(Cplx{0.0, 0.0});
    for (size_t k = c.size() - 1; k > 0; --k) {
      c[k] = c[k - 1] - r * c[k];
    }
    c[0] *= -r;
  }
  return Poly(std::move(c));
}

Cplx Poly::coeff(long k) const {
  if (k < 0 || k >= static_cast<long>(coeffs_.size())) return {0.0, 0.0};
  return coeffs_[static_cast<size_t>(k)];
}

long Poly::degree() const {
  for (long k = static_cast<long>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[static_cast<size_t>(k)] != Cplx{0.0, 0.0}) return k;
  }
  return -1;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (const Cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Cplx Poly::eval(Cplx z) const {
  Cplx acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return Poly();
  std::vector<Cplx> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  }
  return Poly(std::move(d));
}

Poly Poly::operator*(const Poly& rhs) const {
  if (coeffs_.empty() || rhs.coeffs_.empty()) return Poly();
  std::vector<Cplx> out(coeffs_.size() + rhs.coeffs_.size() - 1,
                        Cplx{0.0, 0.0});
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  return Poly(std::move(out));
}

Poly Poly::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs_coeff();
  std::vector<Cplx> out;
  out.reserve(coeffs_.size());
  for (const Cplx& c : coeffs_) {
    out.push_back(std::abs(c) <= cutoff ? Cplx{0.0, 0.0} : c);
  }
  while (!out.empty() && out.back() == Cplx{0.0, 0.0}) out.pop_back();
  return Poly(std::move(out));
}

Poly Poly::monic() const {
  Poly t = trimmed();
  if (t.coeffs_.empty()) {
    throw std::invalid_argument("monic: zero polynomial");
  }
  const Cplx lead = t.coeffs_.back();
  for (Cplx& c : t.coeffs_) c /= lead;
  t.coeffs_.back() = Cplx{1.0, 0.0};
  return t;
}

namespace {

void validate_system(const Mat& a, const CVec& b, const CVec& c, Cplx d,
                     const DelayVec& m) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw std::invalid_argument("feedback matrix must be square, N >= 1");
  }
  const auto n = a.rows();
  if (b.size() != n || c.size() != n ||
      static_cast<Eigen::Index>(m.size()) != n) {
    throw std::invalid_argument("system dimensions inconsistent with N");
  }
  validate_delays(m);
  require_finite(a, "FdnSystem.A");
  require_finite(b, "FdnSystem.b");
  require_finite(c, "FdnSystem.c");
  require_finite(d, "FdnSystem.d");
}

}  // namespace

FdnSystem::FdnSystem(Mat A_in, DelayVec m_in)
    : A(std::move(A_in)),
      b(CVec::Ones(A.rows())),
      c(CVec::Ones(A.rows())),
      d{0.0, 0.0},
      m(std::move(m_in)) {
  validate_system(A, b, c, d, m);
}

FdnSystem::FdnSystem(Mat A_in, CVec b_in, CVec c_in, Cplx d_in, DelayVec m_in)
    : A(std::move(A_in)),
      b(std::move(b_in)),
      c(std::move(c_in)),
      d(d_in),
      m(std::move(m_in)) {
  validate_system(A, b, c, d, m);
}

Cplx transfer_eval(const FdnSystem& sys, Cplx z) {
  require_finite(z, "transfer_eval");
  const auto n = sys.A.rows();
  Mat resolvent = -sys.A;
  for (Eigen::Index i = 0; i < n; ++i) {
    resolvent(i, i) += cpow_int(z, sys.m[static_cast<size_t>(i)]);
  }
  Eigen::PartialPivLU<Mat> lu(resolvent);
  const Cplx det = lu.determinant();
  if (!std::isfinite(std::abs(det)) || lu.rcond() < 1e-15) {
    std::ostringstream msg;
    msg << "transfer_eval: singular resolvent at z = (" << z.real() << ", "
        << z.imag() << "), |det| = " << std::abs(det);
    throw std::runtime_error(msg.str());
  }
  // c^T x, not the Hermitian dot product.
  const CVec x = lu.solve(sys.b);
  return (sys.c.transpose() * x).value() + sys.d;
}

}  // namespace fdn
