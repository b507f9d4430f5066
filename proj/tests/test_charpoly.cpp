#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fdn/charpoly.hpp"
#include "fdn/roots.hpp"
#include "fdn/unilossless.hpp"
#include "test_support.hpp"

#include <random>

using namespace fdn;
using testsupport::match_root_sets;
using testsupport::poly_distance;
using testsupport::random_complex_matrix;
using testsupport::random_delays;
using testsupport::random_unimodular;

namespace {

Mat counterexample_matrix() {
  Mat a(2, 2);
  a << 3, 2, -4, -3;
  return a;
}

}  // namespace

TEST_CASE("principal_minor: empty set, single entry, full determinant") {
  const Mat a = counterexample_matrix();
  CHECK(std::abs(principal_minor(a, {}) - Cplx{1, 0}) < 1e-15);
  CHECK(std::abs(principal_minor(a, {0}) - Cplx{3, 0}) < 1e-15);
  CHECK(std::abs(principal_minor(a, {0, 1}) - Cplx{-1, 0}) < 1e-15);
}

TEST_CASE("principal_minor agrees with Laplace expansion") {
  std::mt19937_64 gen(17);
  const Mat a = random_complex_matrix(6, gen);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 30; ++trial) {
    IndexSet idx;
    for (int i = 0; i < 6; ++i) {
      if (coin(gen)) idx.push_back(i);
    }
    Mat sub(idx.size(), idx.size());
    for (size_t r = 0; r < idx.size(); ++r) {
      for (size_t c = 0; c < idx.size(); ++c) {
        sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            a(idx[r], idx[c]);
      }
    }
    CHECK(std::abs(principal_minor(a, idx) - testsupport::naive_det(sub)) <
          1e-10);
  }
}

TEST_CASE("principal_minor rejects bad index sets") {
  const Mat a = counterexample_matrix();
  CHECK_THROWS_AS(principal_minor(a, {2}), std::invalid_argument);
  CHECK_THROWS_AS(principal_minor(a, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(principal_minor(a, {0, 0}), std::invalid_argument);
}

TEST_CASE("generalized_charpoly reproduces the 2x2 example, both orders") {
  const Mat a = counterexample_matrix();
  const Poly p12 = generalized_charpoly(a, {1, 2});
  // z^3 - 3 z^2 + 3 z - 1
  CHECK(std::abs(p12.coeff(0) - Cplx{-1, 0}) < 1e-12);
  CHECK(std::abs(p12.coeff(1) - Cplx{3, 0}) < 1e-12);
  CHECK(std::abs(p12.coeff(2) - Cplx{-3, 0}) < 1e-12);
  CHECK(std::abs(p12.coeff(3) - Cplx{1, 0}) < 1e-12);

  const Poly p21 = generalized_charpoly(a, {2, 1});
  // z^3 + 3 z^2 - 3 z - 1
  CHECK(std::abs(p21.coeff(0) - Cplx{-1, 0}) < 1e-12);
  CHECK(std::abs(p21.coeff(1) - Cplx{-3, 0}) < 1e-12);
  CHECK(std::abs(p21.coeff(2) - Cplx{3, 0}) < 1e-12);
  CHECK(std::abs(p21.coeff(3) - Cplx{1, 0}) < 1e-12);
}

TEST_CASE("generalized_charpoly: single line is z^k - g") {
  Mat a(1, 1);
  a << Cplx{0.3, -0.4};
  const Poly p = generalized_charpoly(a, {5});
  CHECK(p.degree() == 5);
  CHECK(std::abs(p.coeff(0) + Cplx{0.3, -0.4}) < 1e-15);
  CHECK(std::abs(p.coeff(5) - Cplx{1, 0}) < 1e-15);
  for (long k = 1; k < 5; ++k) CHECK(std::abs(p.coeff(k)) < 1e-15);
}

TEST_CASE("generalized_charpoly agrees with the interpolation oracle") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + static_cast<int>(gen() % 6);
    const Mat a = random_complex_matrix(n, gen, 0.8);
    const DelayVec m = random_delays(n, 8, gen);
    CHECK(poly_distance(generalized_charpoly(a, m), charpoly_oracle(a, m)) <
          1e-9);
  }
}

TEST_CASE("generalized_charpoly enforces its preconditions") {
  const Mat a = counterexample_matrix();
  CHECK_THROWS_AS(generalized_charpoly(a, {1}), std::invalid_argument);
  CHECK_THROWS_AS(generalized_charpoly(Mat::Zero(2, 3), {1, 2, 3}),
                  std::invalid_argument);
  CHECK_THROWS_AS(generalized_charpoly(Mat::Identity(21, 21),
                                       DelayVec(21, 1)),
                  std::invalid_argument);
}

TEST_CASE("charpoly_oracle refuses oversized orders") {
  Mat a(1, 1);
  a << 0.5;
  CHECK_THROWS_AS(charpoly_oracle(a, {5000}), std::invalid_argument);
}

TEST_CASE("charpoly_oracle anchors") {
  const Poly p = charpoly_oracle(counterexample_matrix(), {1, 2});
  CHECK(std::abs(p.coeff(0) - Cplx{-1, 0}) < 1e-10);
  CHECK(std::abs(p.coeff(1) - Cplx{3, 0}) < 1e-10);
  CHECK(std::abs(p.coeff(2) - Cplx{-3, 0}) < 1e-10);
  CHECK(std::abs(p.coeff(3) - Cplx{1, 0}) < 1e-10);

  Mat zero1(1, 1);
  zero1 << 0.0;
  const Poly cube = charpoly_oracle(zero1, {3});
  CHECK(cube.degree() == 3);
  CHECK(std::abs(cube.coeff(3) - Cplx{1, 0}) < 1e-12);
  for (long k = 0; k < 3; ++k) CHECK(std::abs(cube.coeff(k)) < 1e-12);
}

TEST_CASE("charpoly_oracle: triangular matrix factors per line") {
  // diag (1, -1, i) with arbitrary upper entries, m = [1, 1, 2]:
  // p = (z - 1)(z + 1)(z^2 - i), expanded by hand via convolution.
  Mat a = Mat::Zero(3, 3);
  a(0, 0) = Cplx{1, 0};
  a(1, 1) = Cplx{-1, 0};
  a(2, 2) = Cplx{0, 1};
  a(0, 1) = Cplx{0.7, 0.2};
  a(0, 2) = Cplx{-1.5, 0.0};
  a(1, 2) = Cplx{0.0, 2.0};

  const Poly expected = Poly({Cplx{-1, 0}, Cplx{1, 0}}) *
                        Poly({Cplx{1, 0}, Cplx{1, 0}}) *
                        Poly({Cplx{0, -1}, Cplx{0, 0}, Cplx{1, 0}});
  CHECK(poly_distance(charpoly_oracle(a, {1, 1, 2}), expected) < 1e-10);
}

TEST_CASE("unit delays give the ordinary characteristic polynomial") {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const Mat a = random_complex_matrix(n, gen, 0.7);
    Eigen::ComplexEigenSolver<Mat> es(a, false);
    std::vector<Cplx> eigs(es.eigenvalues().begin(), es.eigenvalues().end());
    const Poly expected = Poly(testsupport::expand_from_roots(eigs));
    CHECK(poly_distance(generalized_charpoly(a, DelayVec(n, 1)), expected) <
          1e-8);
  }
}

TEST_CASE("diagonal similarity leaves the polynomial unchanged") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 4);
    const Mat a = random_complex_matrix(n, gen, 0.8);
    CVec e(n);
    for (int i = 0; i < n; ++i) e[i] = mag(gen) * random_unimodular(gen);
    const DelayVec m = random_delays(n, 6, gen);
    CHECK(poly_distance(generalized_charpoly(diagonal_conjugate(a, e), m),
                        generalized_charpoly(a, m)) < 1e-9);
  }
}

TEST_CASE("relabeling lines permutes the delays with the matrix") {
  std::mt19937_64 gen(37);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4;
    const Mat a = random_complex_matrix(n, gen, 0.8);
    const DelayVec m = random_delays(n, 6, gen);
    std::vector<int> sigma{0, 1, 2, 3};
    std::shuffle(sigma.begin(), sigma.end(), gen);
    Mat b(n, n);
    DelayVec mb(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      mb[static_cast<size_t>(i)] = m[static_cast<size_t>(sigma[static_cast<size_t>(i)])];
      for (int j = 0; j < n; ++j) {
        b(i, j) = a(sigma[static_cast<size_t>(i)], sigma[static_cast<size_t>(j)]);
      }
    }
    CHECK(poly_distance(generalized_charpoly(b, mb),
                        generalized_charpoly(a, m)) < 1e-10);
  }
}

TEST_CASE("rotation moves every root by gamma") {
  std::mt19937_64 gen(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    const Mat a = random_complex_matrix(n, gen, 0.7);
    const DelayVec m = random_delays(n, 4, gen);
    const Cplx gamma = random_unimodular(gen);
    const auto rotated = poly_roots(generalized_charpoly(
        rotate_feedback(a, gamma, m), m));
    std::vector<Cplx> mapped;
    for (const Cplx& r : rotated.roots) mapped.push_back(r * gamma);
    const auto original = poly_roots(generalized_charpoly(a, m));
    CHECK(match_root_sets(mapped, original.roots) < 1e-7);
  }
}

TEST_CASE("zeros_poly: vanishing b reduces to the pole polynomial") {
  std::mt19937_64 gen(43);
  const Mat a = random_complex_matrix(3, gen, 0.8);
  const DelayVec m{1, 3, 2};
  FdnSystem sys(a, CVec::Zero(3), CVec::Ones(3), Cplx{1.0, 0.0}, m);
  CHECK(poly_distance(zeros_poly(sys),
                      generalized_charpoly(a, m).monic()) < 1e-10);
}

TEST_CASE("zeros_poly: scalar allpass zeros mirror the poles") {
  for (int k : {1, 2}) {
    const double g = 0.6;
    Mat a(1, 1);
    a << g;
    CVec b(1), c(1);
    b << 1.0 - g * g;
    c << 1.0;
    FdnSystem sys(a, b, c, Cplx{-g, 0.0}, {k});
    const auto zeros = poly_roots(zeros_poly(sys));
    const auto poles = poly_roots(generalized_charpoly(a, {k}));
    // Reciprocal-conjugate pairing: zero set = 1/conj(pole set).
    std::vector<Cplx> mirrored;
    for (const Cplx& p : poles.roots) {
      mirrored.push_back(Cplx{1.0, 0.0} / std::conj(p));
    }
    CHECK(match_root_sets(mirrored, zeros.roots) < 1e-10);
  }
}

TEST_CASE("zeros_poly roots kill the transfer function") {
  std::mt19937_64 gen(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat a = random_complex_matrix(2, gen, 0.8);
    const DelayVec m = random_delays(2, 3, gen);
    CVec b(2), c(2);
    b << Cplx{1.0, 0.2}, Cplx{-0.4, 0.9};
    c << Cplx{0.8, -0.1}, Cplx{0.5, 0.3};
    FdnSystem sys(a, b, c, Cplx{1.0, 0.0}, m);
    for (Cplx r : poly_roots(zeros_poly(sys)).roots) {
      // Newton polish on H using a numerical derivative, then the polished
      // point must be a numerical zero of H.
      const double h = 1e-7;
      for (int it = 0; it < 3; ++it) {
        const Cplx f = transfer_eval(sys, r);
        const Cplx df =
            (transfer_eval(sys, r + Cplx{h, 0.0}) -
             transfer_eval(sys, r - Cplx{h, 0.0})) /
            Cplx{2.0 * h, 0.0};
        if (std::abs(df) < 1e-12) break;
        r -= f / df;
      }
      CHECK(std::abs(transfer_eval(sys, r)) < 1e-8);
    }
  }
}

TEST_CASE("zeros_poly requires a nonzero direct gain") {
  Mat a(1, 1);
  a << 0.5;
  FdnSystem sys(a, {1});
  CHECK_THROWS_AS(zeros_poly(sys), std::domain_error);
}

TEST_CASE("zeros transform under diagonal similarity moves into the gains") {
  std::mt19937_64 gen(53);
  std::uniform_real_distribution<double> mag(0.3, 2.5);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3;
    const Mat a = random_complex_matrix(n, gen, 0.8);
    const DelayVec m = random_delays(n, 4, gen);
    CVec e(n), b(n), c(n);
    for (int i = 0; i < n; ++i) {
      e[i] = mag(gen) * random_unimodular(gen);
      b[i] = Cplx{mag(gen), mag(gen)};
      c[i] = Cplx{mag(gen), -mag(gen)};
    }
    const auto [bp, cp] = io_gain_transform(b, c, e);
    FdnSystem conjugated(diagonal_conjugate(a, e), b, c, Cplx{1, 0}, m);
    FdnSystem transported(a, bp, cp, Cplx{1, 0}, m);
    CHECK(poly_distance(zeros_poly(conjugated), zeros_poly(transported)) <
          1e-9);
  }
}

TEST_CASE("is_self_inversive finds eps or rejects") {
  const Poly anchor({Cplx{-1, 0}, Cplx{3, 0}, Cplx{-3, 0}, Cplx{1, 0}});
  auto eps = is_self_inversive(anchor, 1e-9);
  REQUIRE(eps.has_value());
  CHECK(std::abs(*eps - Cplx{-1, 0}) < 1e-12);

  const Poly palindrome({Cplx{1, 0}, Cplx{0, 0}, Cplx{1, 0}});
  eps = is_self_inversive(palindrome, 1e-9);
  REQUIRE(eps.has_value());
  CHECK(std::abs(*eps - Cplx{1, 0}) < 1e-12);

  CHECK_FALSE(is_self_inversive(
      Poly({Cplx{3, 0}, Cplx{2, 0}, Cplx{1, 0}}), 1e-9));
}
