#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdn/charpoly.hpp"
#include "fdn/simulate.hpp"
#include "fdn/statespace.hpp"
#include "fdn/topologies.hpp"
#include "test_support.hpp"

#include <random>

using namespace fdn;
using testsupport::match_root_sets;
using testsupport::poly_distance;
using testsupport::random_complex_matrix;
using testsupport::random_delays;

TEST_CASE("build: single comb collapses to a 1x1 transition matrix") {
  Mat a(1, 1);
  a << Cplx{0.7, 0.1};
  const StateSpace ss = build_statespace(FdnSystem(a, {1}));
  CHECK(ss.order() == 1);
  CHECK(std::abs(Mat(ss.a_hat)(0, 0) - Cplx{0.7, 0.1}) < 1e-15);
}

TEST_CASE("build: reference anchor eigenvalues are the triple root") {
  Mat a(2, 2);
  a << 3, 2, -4, -3;
  const auto poles = statespace_poles(FdnSystem(a, {1, 2}));
  REQUIRE(poles.roots.size() == 3);
  for (const Cplx& r : poles.roots) {
    CHECK(std::abs(r - Cplx{1, 0}) < 1e-4);  // defective triple eigenvalue
  }

  const auto swapped = statespace_poles(FdnSystem(a, {2, 1}));
  double max_mag = 0.0;
  for (const Cplx& r : swapped.roots) max_mag = std::max(max_mag, std::abs(r));
  CHECK(max_mag == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("build: instability example magnitude") {
  Mat a(2, 2);
  a << 1.5, 1.0, -2.0, -1.5;
  const auto poles = statespace_poles(FdnSystem(a, {2, 1}));
  double max_mag = 0.0;
  for (const Cplx& r : poles.roots) max_mag = std::max(max_mag, std::abs(r));
  CHECK(max_mag == doctest::Approx(2.145).epsilon(1e-3));
}

TEST_CASE("certified feedback gives unimodular transition eigenvalues") {
  std::mt19937_64 gen(31);
  const Mat a = random_unilossless(4, 909);
  const auto poles = statespace_poles(FdnSystem(a, random_delays(4, 8, gen)));
  for (const Cplx& r : poles.roots) {
    CHECK(std::abs(std::abs(r) - 1.0) <= 1e-8);
  }
}

TEST_CASE("transition-matrix eigenvalues match the charpoly roots") {
  std::mt19937_64 gen(33);
  const Mat a = random_complex_matrix(3, gen, 0.8);
  const FdnSystem sys(a, {2, 3, 4});
  const auto from_ss = statespace_poles(sys);
  const auto from_poly = poly_roots(generalized_charpoly(a, sys.m));
  CHECK(match_root_sets(from_ss.roots, from_poly.roots) < 1e-8);
}

TEST_CASE("characteristic polynomial of A_hat equals the generalized one") {
  std::mt19937_64 gen(35);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 3);
    const Mat a = random_complex_matrix(n, gen, 0.7);
    DelayVec m = random_delays(n, 6, gen);
    if (system_order(m) > 24) continue;
    const StateSpace ss = build_statespace(FdnSystem(a, m));
    Eigen::ComplexEigenSolver<Mat> es(Mat(ss.a_hat), false);
    std::vector<Cplx> eigs(es.eigenvalues().begin(), es.eigenvalues().end());
    const Poly from_eigs(testsupport::expand_from_roots(eigs));
    CHECK(poly_distance(from_eigs, generalized_charpoly(a, m)) < 1e-8);
  }
}

TEST_CASE("every shift row carries exactly one unit entry") {
  std::mt19937_64 gen(39);
  const int n = 3;
  const Mat a = random_complex_matrix(n, gen);
  const FdnSystem sys(a, {3, 1, 4});
  const StateSpace ss = build_statespace(sys);
  const Mat dense(ss.a_hat);

  for (int line = 0; line < n; ++line) {
    const auto [off, len] = ss.layout[static_cast<size_t>(line)];
    for (long k = 0; k + 1 < len; ++k) {
      int nonzeros = 0;
      for (Eigen::Index c = 0; c < dense.cols(); ++c) {
        if (dense(off + k, c) != Cplx{0.0, 0.0}) {
          ++nonzeros;
          CHECK(dense(off + k, c) == Cplx{1.0, 0.0});
          CHECK(c == off + k + 1);
        }
      }
      CHECK(nonzeros == 1);
    }
  }
  // Nonzero budget: shifts plus at most N^2 couplings.
  CHECK(ss.a_hat.nonZeros() <= (ss.order() - n) + n * n);
}

TEST_CASE("step: zero state and zero input stay zero") {
  Mat a(2, 2);
  a << 0.1, 0.2, 0.3, 0.4;
  const StateSpace ss = build_statespace(FdnSystem(a, {2, 3}));
  CVec state = CVec::Zero(ss.order());
  const Cplx y = statespace_step(ss, state, Cplx{0.0, 0.0});
  CHECK(std::abs(y) == 0.0);
  CHECK(state.isZero());
}

TEST_CASE("step: impulse through a pure delay of three samples") {
  Mat a(1, 1);
  a << 0.0;
  const StateSpace ss = build_statespace(FdnSystem(a, {3}));
  CVec state = CVec::Zero(3);
  std::vector<double> ys;
  for (int k = 0; k < 6; ++k) {
    const Cplx x = (k == 0) ? Cplx{1, 0} : Cplx{0, 0};
    ys.push_back(statespace_step(ss, state, x).real());
  }
  CHECK(ys == std::vector<double>({0, 0, 0, 1, 0, 0}));
}

TEST_CASE("dense eigensolve refuses oversized orders") {
  Mat a(1, 1);
  a << 0.5;
  CHECK_THROWS_AS(statespace_poles(FdnSystem(a, {600})),
                  std::invalid_argument);
}

TEST_CASE("step rejects mismatched state lengths") {
  Mat a(1, 1);
  a << 0.5;
  const StateSpace ss = build_statespace(FdnSystem(a, {4}));
  CVec wrong = CVec::Zero(3);
  CHECK_THROWS_AS(statespace_step(ss, wrong, Cplx{0, 0}),
                  std::invalid_argument);
}

TEST_CASE("1000-step run agrees with the delay-line engine") {
  std::mt19937_64 gen(45);
  const int n = 3;
  const Mat a = random_complex_matrix(n, gen, 0.5);
  CVec b(n), c(n);
  for (int i = 0; i < n; ++i) {
    b[i] = Cplx{0.5 + 0.1 * i, -0.2};
    c[i] = Cplx{1.0 - 0.2 * i, 0.1 * i};
  }
  const FdnSystem sys(a, b, c, Cplx{0.25, 0.0}, {2, 5, 3});
  const StateSpace ss = build_statespace(sys);

  DelayLineBank bank(sys.m);
  CVec state = CVec::Zero(ss.order());
  std::normal_distribution<double> dist(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Cplx x{dist(gen), dist(gen)};
    const Cplx y_bank = tick(sys, bank, x);
    const Cplx y_ss = statespace_step(ss, state, x);
    worst = std::max(worst, std::abs(y_bank - y_ss));
  }
  CHECK(worst < 1e-10);
}
