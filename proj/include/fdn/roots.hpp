#pragma once

#include "fdn/model.hpp"

namespace fdn {

// Roots sorted by angle, then magnitude. Multiplicities appear as repeats.
struct RootSet {
  std::vector<Cplx> roots;
};

// Deterministic ordering shared by every root-producing routine.
void sort_roots(std::vector<Cplx>& roots);

// Eigenvalues of the balanced companion matrix of the monic-normalized
// polynomial. Degree 1 and 2 use closed forms. Throws on degree < 1.
// Coefficient-based roots get ill-conditioned for long total delays;
// past order ~64 prefer the state-space eigenvalue route.
RootSet poly_roots(const Poly& p);

struct LosslessVerdict {
  bool lossless = false;
  double max_deviation = 0.0;  // max | |r| - 1 | over the roots
};

// True when every root sits on the unit circle within tol. Multiple roots
// scatter like eps^(1/k), so the deviation is reported alongside the bool.
LosslessVerdict is_lossless_poly(const Poly& p, double tol = 1e-8);

// Unit-circle test without computing the roots of p itself: p must be
// self-inversive and every root of p' must lie in the closed unit disk
// (within tol).
bool cohn_is_unimodular(const Poly& p, double tol = 1e-8);

}  // namespace fdn
