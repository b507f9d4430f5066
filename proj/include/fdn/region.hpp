#pragma once

#include "fdn/model.hpp"

namespace fdn {

// Generalized characteristic polynomial of any 2x2 matrix constrained to
// the self-inversive family: z^{m1+m2} - a22 z^{m1} - a11 z^{m2} + eps
// with a22 = eps * conj(a11) and det A = eps, |eps| = 1.
Poly charpoly_2x2(Cplx a11, Cplx eps, int m1, int m2);

// Losslessness of charpoly_2x2 decided through the derivative-root test
// (the polynomial is self-inversive by construction).
bool region_point_lossless(Cplx a11, Cplx eps, int m1, int m2,
                           double cohn_tol = 1e-9);

struct BoundaryPoint {
  double theta = 0.0;
  double radius = 0.0;
  Cplx a11;
  // False when the region extends past the radial search cap along this
  // ray and no lossless-to-lossy flip was found.
  bool bracketed = false;
};

struct RegionSweepOptions {
  int angles = 256;
  double radial_tol = 1e-6;
  double radius_cap = 64.0;
  int max_bisect = 60;
  double cohn_tol = 1e-9;
};

// Outer boundary of the lossless set of a11 for delays m = [1, k] and
// fixed determinant eps: radial bisection on a uniform angle grid.
// Radius 1 is always inside (a unimodular diagonal completion exists).
std::vector<BoundaryPoint> region_boundary(Cplx eps, int k,
                                           const RegionSweepOptions& opts);

}  // namespace fdn
