#include "fdn/region.hpp"

#include "fdn/roots.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdn {

Poly charpoly_2x2(Cplx a11, Cplx eps, int m1, int m2) {
  if (m1 < 1 || m2 < 1) {
    throw std::invalid_argument("charpoly_2x2: delays must be >= 1");
  }
  if (std::abs(std::abs(eps) - 1.0) > 1e-12) {
    throw std::domain_error("charpoly_2x2: eps must be unimodular");
  }
  const Cplx a22 = eps * std::conj(a11);
  std::vector<Cplx> coeffs(static_cast<size_t>(m1 + m2) + 1, Cplx{0.0, 0.0});
  coeffs[0] += eps;
  coeffs[static_cast<size_t>(m1)] -= a22;
  coeffs[static_cast<size_t>(m2)] -= a11;
  coeffs[static_cast<size_t>(m1 + m2)] += Cplx{1.0, 0.0};
  return Poly(std::move(coeffs));
}

bool region_point_lossless(Cplx a11, Cplx eps, int m1, int m2,
                           double cohn_tol) {
  const Poly dp = charpoly_2x2(a11, eps, m1, m2).derivative().trimmed();
  if (dp.degree() < 1) return true;
  for (const Cplx& r : poly_roots(dp).roots) {
    if (std::abs(r) > 1.0 + cohn_tol) return false;
  }
  return true;
}

std::vector<BoundaryPoint> region_boundary(Cplx eps, int k,
                                           const RegionSweepOptions& opts) {
  if (k < 1) throw std::invalid_argument("region_boundary: k must be >= 1");
  if (opts.angles < 8) {
    throw std::invalid_argument("region_boundary: need at least 8 angles");
  }

  std::vector<BoundaryPoint> out;
  out.reserve(static_cast<size_t>(opts.angles));
  for (int ai = 0; ai < opts.angles; ++ai) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(ai) /
                         static_cast<double>(opts.angles);
    const Cplx dir{std::cos(theta), std::sin(theta)};
    const auto lossless_at = [&](double r) {
      return region_point_lossless(r * dir, eps, 1, k, opts.cohn_tol);
    };

    BoundaryPoint pt;
    pt.theta = theta;
    if (lossless_at(opts.radius_cap)) {
      // Region extends past the cap along this ray (happens for small k).
      pt.radius = opts.radius_cap;
      pt.bracketed = false;
    } else {
      double lo = 1.0;  // always lossless: unitary completion exists
      double hi = opts.radius_cap;
      for (int it = 0; it < opts.max_bisect && hi - lo > opts.radial_tol;
           ++it) {
        const double mid = 0.5 * (lo + hi);
        (lossless_at(mid) ? lo : hi) = mid;
      }
      pt.radius = 0.5 * (lo + hi);
      pt.bracketed = true;
    }
    pt.a11 = pt.radius * dir;
    out.push_back(pt);
  }
  return out;
}

}  // namespace fdn
