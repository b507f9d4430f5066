#include "fdn/statespace.hpp"

#include <stdexcept>
#include <vector>

namespace fdn {

StateSpace build_statespace(const FdnSystem& sys) {
  const int n = sys.size();
  const long order = sys.order();

  StateSpace ss;
  ss.layout.reserve(static_cast<size_t>(n));
  long offset = 0;
  for (int i = 0; i < n; ++i) {
    ss.layout.emplace_back(offset, static_cast<long>(sys.m[static_cast<size_t>(i)]));
    offset += sys.m[static_cast<size_t>(i)];
  }

  std::vector<Eigen::Triplet<Cplx>> triplets;
  triplets.reserve(static_cast<size_t>(order - n) +
                   static_cast<size_t>(n) * static_cast<size_t>(n));
  ss.b_hat = CVec::Zero(order);
  ss.c_hat = CVec::Zero(order);
  ss.d_hat = sys.d;

  for (int i = 0; i < n; ++i) {
    const auto [off, len] = ss.layout[static_cast<size_t>(i)];
    // Shift register: slot k receives slot k+1.
    for (long k = 0; k + 1 < len; ++k) {
      triplets.emplace_back(off + k, off + k + 1, Cplx{1.0, 0.0});
    }
    // Tail slot receives the coupled line heads.
    const long tail = off + len - 1;
    for (int j = 0; j < n; ++j) {
      const Cplx aij = sys.A(i, j);
      if (aij != Cplx{0.0, 0.0}) {
        triplets.emplace_back(tail, ss.layout[static_cast<size_t>(j)].first,
                              aij);
      }
    }
    ss.b_hat[tail] = sys.b[i];
    ss.c_hat[off] = sys.c[i];
  }

  ss.a_hat.resize(order, order);
  ss.a_hat.setFromTriplets(triplets.begin(), triplets.end());
  ss.a_hat.makeCompressed();
  return ss;
}

Cplx statespace_step(const StateSpace& ss, CVec& state, Cplx x) {
  if (state.size() != ss.a_hat.rows()) {
    throw std::invalid_argument("statespace_step: state length mismatch");
  }
  const Cplx y = (ss.c_hat.transpose() * state).value() + ss.d_hat * x;
  CVec next = ss.a_hat * state;
  if (x != Cplx{0.0, 0.0}) next += ss.b_hat * x;
  state.swap(next);
  return y;
}

RootSet statespace_poles(const StateSpace& ss) {
  if (ss.order() > kStateSpaceEigMaxOrder) {
    throw std::invalid_argument(
        "statespace_poles: system order exceeds the dense eigensolver bound");
  }
  const Mat dense = Mat(ss.a_hat);
  Eigen::ComplexEigenSolver<Mat> solver(dense, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("statespace_poles: eigensolver failed");
  }
  std::vector<Cplx> roots(solver.eigenvalues().begin(),
                          solver.eigenvalues().end());
  sort_roots(roots);
  return RootSet{std::move(roots)};
}

RootSet statespace_poles(const FdnSystem& sys) {
  return statespace_poles(build_statespace(sys));
}

}  // namespace fdn
