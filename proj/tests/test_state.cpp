#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "qcorr/functionals.hpp"
#include "qcorr/state.hpp"
#include "test_support.hpp"

using namespace qcorr;
using Catch::Approx;
using test_support::random_physical;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("bd_density reproduces the explicit matrix") {
  SECTION("maximally mixed") {
    const Matrix4c m = bd_density({0, 0, 0}).matrix();
    REQUIRE((m - 0.25 * Matrix4c::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("Bell vertex (1,-1,1) is the rank-1 projector on (|00>+|11>)/sqrt2") {
    const Matrix4c m = bd_density({1, -1, 1}).matrix();
    Matrix4c expected = Matrix4c::Zero();
    expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
    REQUIRE((m - expected).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SECTION("spot state (1,-0.6,0.6)") {
    const Matrix4c m = bd_density({1, -0.6, 0.6}).matrix();
    REQUIRE(m(0, 0).real() == Approx(0.4).margin(1e-15));
    REQUIRE(m(1, 1).real() == Approx(0.1).margin(1e-15));
    REQUIRE(m(2, 2).real() == Approx(0.1).margin(1e-15));
    REQUIRE(m(3, 3).real() == Approx(0.4).margin(1e-15));
    REQUIRE(m(0, 3).real() == Approx(0.4).margin(1e-15));   // (c1-c2)/4
    REQUIRE(m(1, 2).real() == Approx(0.1).margin(1e-15));   // (c1+c2)/4
    REQUIRE(m(0, 1) == std::complex<double>(0, 0));
  }
}

TEST_CASE("bd_eigenvalues closed form") {
  SECTION("examples") {
    const EigenQuad mixed = bd_eigenvalues({0, 0, 0});
    for (double l : mixed.lambda) REQUIRE(l == 0.25);
    const EigenQuad bell = bd_eigenvalues({1, -1, 1});
    REQUIRE(bell(0, 0) == 1.0);
    REQUIRE(bell(0, 1) == 0.0);
    REQUIRE(bell(1, 0) == 0.0);
    REQUIRE(bell(1, 1) == 0.0);
    const EigenQuad spot = bd_eigenvalues({1, -0.6, 0.6});
    REQUIRE(spot(0, 0) == Approx(0.8).margin(1e-15));
    REQUIRE(spot(0, 1) == Approx(0.2).margin(1e-15));
    REQUIRE(spot(1, 0) == Approx(0.0).margin(1e-15));
    REQUIRE(spot(1, 1) == Approx(0.0).margin(1e-15));
  }
  SECTION("matches a numeric eigendecomposition on 1000 random states") {
    std::mt19937_64 rng(2001);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const BlochVector c = random_physical(rng);
      auto analytic = bd_eigenvalues(c).lambda;
      std::sort(analytic.begin(), analytic.end());
      Eigen::SelfAdjointEigenSolver<Matrix4c> es(bd_density(c).matrix(),
                                                 Eigen::EigenvaluesOnly);
      for (int j = 0; j < 4; ++j)
        worst = std::max(worst, std::abs(analytic[j] - es.eigenvalues()[j]));
    }
    REQUIRE(worst <= 1e-10);
  }
  SECTION("sums to one") {
    std::mt19937_64 rng(2002);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const BlochVector c{u(rng), u(rng), u(rng)};
      REQUIRE(bd_eigenvalues(c).sum() == Approx(1.0).margin(1e-12));
    }
  }
}

TEST_CASE("is_physical is the tetrahedron test") {
  REQUIRE(is_physical({0, 0, 0}));
  REQUIRE_FALSE(is_physical({1, 1, 1}));  // lambda_11 = -1/2
  REQUIRE_FALSE(is_physical({0.9, 0.9, 0}));
  // the four vertices
  REQUIRE(is_physical({-1, -1, -1}));
  REQUIRE(is_physical({-1, 1, 1}));
  REQUIRE(is_physical({1, -1, 1}));
  REQUIRE(is_physical({1, 1, -1}));
}

TEST_CASE("ordered_sigma sorts absolute values with stable ties") {
  const OrderedCorrelations a = ordered_sigma({0.1, 0.5, -0.3});
  REQUIRE(a.sigma == std::array<double, 3>{0.5, 0.3, 0.1});
  REQUIRE(a.index == std::array<int, 3>{1, 2, 0});

  const OrderedCorrelations b = ordered_sigma({1, -0.6, 0.6});
  REQUIRE(b.sigma == std::array<double, 3>{1.0, 0.6, 0.6});
  REQUIRE(b.index == std::array<int, 3>{0, 1, 2});  // tie broken by axis

  const OrderedCorrelations zero = ordered_sigma({0, 0, 0});
  REQUIRE(zero.sigma == std::array<double, 3>{0, 0, 0});
  REQUIRE(zero.index == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("entropies") {
  SECTION("binary entropy") {
    REQUIRE(binary_entropy(0.5) == 1.0);
    REQUIRE(binary_entropy(0.0) == 0.0);
    REQUIRE(binary_entropy(1.0) == 0.0);
    REQUIRE(binary_entropy(0.2) == Approx(0.7219280948873623).margin(1e-15));
    REQUIRE_THROWS_AS(binary_entropy(-0.1), std::domain_error);
    REQUIRE_THROWS_AS(binary_entropy(1.1), std::domain_error);
  }
  SECTION("binary entropy is symmetric") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double s = u(rng);
      REQUIRE(binary_entropy(s) == Approx(binary_entropy(1.0 - s)).margin(1e-12));
    }
  }
  SECTION("von Neumann entropy") {
    REQUIRE(von_neumann_entropy(bd_density({0, 0, 0})) == Approx(2.0).margin(1e-12));
    REQUIRE(von_neumann_entropy(bd_density({1, -1, 1})) == Approx(0.0).margin(1e-10));
    REQUIRE(von_neumann_entropy(bd_density({1, -0.6, 0.6})) ==
            Approx(0.7219280948873623).margin(1e-10));
  }
  SECTION("von Neumann entropy rejects clearly negative spectra") {
    Matrix4c m = Matrix4c::Zero();
    m(0, 0) = 1.1;
    m(1, 1) = -0.1;
    REQUIRE_THROWS_AS(von_neumann_entropy(TwoQubitDensity(m)), std::domain_error);
  }
}

TEST_CASE("cq_density") {
  SECTION("uniform mixture of both spin projections is maximally mixed") {
    const TwoQubitDensity chi = cq_density({{0, 0, 1}, 0.5, {0, 0, 0}, {0, 0, 0}});
    REQUIRE((chi.matrix() - 0.25 * Matrix4c::Identity()).cwiseAbs().maxCoeff() <=
            1e-15);
  }
  SECTION("pure pointer state |00><00|") {
    const TwoQubitDensity chi = cq_density({{0, 0, 1}, 1.0, {0, 0, 1}, {0, 0, 0}});
    Matrix4c expected = Matrix4c::Zero();
    expected(0, 0) = 1.0;
    REQUIRE((chi.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SECTION("the BD CQ family") {
    const double s = 0.7;
    const TwoQubitDensity chi =
        cq_density({{1, 0, 0}, 0.5, {s, 0, 0}, {-s, 0, 0}});
    REQUIRE((chi.matrix() - bd_density({s, 0, 0}).matrix()).cwiseAbs().maxCoeff() <=
            1e-15);
  }
  SECTION("invalid parametrizations are rejected") {
    REQUIRE_THROWS_AS(cq_density({{0, 0, 2}, 0.5, {}, {}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cq_density({{0, 0, 1}, 0.5, {1.2, 0, 0}, {}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cq_density({{0, 0, 1}, 1.5, {}, {}}),
                      std::invalid_argument);
  }
  SECTION("Bloch triple is {(2p-1)e, s+, e s-^T}") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      CQStateParams p;
      // random unit e and ball-bounded r1, r2
      std::normal_distribution<double> g(0.0, 1.0);
      Vec3 e{g(rng), g(rng), g(rng)};
      const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
      for (double& x : e) x /= n;
      p.e = e;
      p.p = u01(rng);
      for (int i = 0; i < 3; ++i) {
        p.r1[i] = 0.57 * u01(rng);
        p.r2[i] = 0.57 * u01(rng);
      }
      const BlochTriple triple = bloch_triple(cq_density(p));
      for (int i = 0; i < 3; ++i) {
        REQUIRE(triple.x[i] ==
                Approx((2 * p.p - 1) * p.e[i]).margin(1e-12));
        const double splus = p.p * p.r1[i] + (1 - p.p) * p.r2[i];
        REQUIRE(triple.y[i] == Approx(splus).margin(1e-12));
        for (int j = 0; j < 3; ++j) {
          const double sminus = p.p * p.r1[j] - (1 - p.p) * p.r2[j];
          REQUIRE(triple.T(i, j) == Approx(p.e[i] * sminus).margin(1e-12));
        }
      }
    }
  }
  SECTION("measuring A along e leaves the state unchanged") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      CQStateParams p;
      Vec3 e{g(rng), g(rng), g(rng)};
      const double n = std::sqrt(e[0] * e[0] + e[1] * e[1] + e[2] * e[2]);
      for (double& x : e) x /= n;
      p.e = e;
      p.p = u01(rng);
      for (int i = 0; i < 3; ++i) {
        p.r1[i] = 0.55 * (2 * u01(rng) - 1);
        p.r2[i] = 0.55 * (2 * u01(rng) - 1);
      }
      const Matrix4c chi = cq_density(p).matrix();
      const Matrix4c measured = test_support::measure_a(chi, p.e);
      REQUIRE((chi - measured).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("bloch_triple round trip on BD states") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const BlochVector c = random_physical(rng);
    const BlochTriple triple = bloch_triple(bd_density(c));
    for (int i = 0; i < 3; ++i) {
      REQUIRE(std::abs(triple.x[i]) <= 1e-12);
      REQUIRE(std::abs(triple.y[i]) <= 1e-12);
      for (int j = 0; j < 3; ++j) {
        const double want = (i == j) ? c[i] : 0.0;
        REQUIRE(triple.T(i, j) == Approx(want).margin(1e-12));
      }
    }
  }
}

TEST_CASE("local-unitary images share the Bell spectrum") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const BlochVector c = random_physical(rng);
    auto reference = bd_eigenvalues(c).lambda;
    std::sort(reference.begin(), reference.end());
    for (const BlochVector& image : test_support::lu_images(c)) {
      auto lam = bd_eigenvalues(image).lambda;
      std::sort(lam.begin(), lam.end());
      for (int j = 0; j < 4; ++j)
        REQUIRE(lam[j] == Approx(reference[j]).margin(1e-14));
    }
  }
}

TEST_CASE("fidelity") {
  const TwoQubitDensity spot = bd_density({1, -0.6, 0.6});
  SECTION("self-fidelity is one, orthogonal pure states give zero") {
    REQUIRE(fidelity(spot, spot) == Approx(1.0).margin(1e-12));
    Matrix4c p00 = Matrix4c::Zero();
    p00(0, 0) = 1.0;
    Matrix4c p11 = Matrix4c::Zero();
    p11(3, 3) = 1.0;
    REQUIRE(fidelity(TwoQubitDensity(p00), TwoQubitDensity(p11)) <= 1e-12);
  }
  SECTION("symmetric and clamped to [0,1]") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
      const TwoQubitDensity a = bd_density(random_physical(rng));
      const TwoQubitDensity b = bd_density(random_physical(rng));
      const double fab = fidelity(a, b);
      REQUIRE(fab >= 0.0);
      REQUIRE(fab <= 1.0);
      REQUIRE(fab == Approx(fidelity(b, a)).margin(1e-9));
    }
  }
  SECTION("best BD CQ state for the spot state reaches 0.9") {
    REQUIRE(test_support::fmax_bd_family_search(spot) ==
            Approx(0.9).margin(1e-7));
  }
  SECTION("non-PSD input is rejected") {
    REQUIRE_THROWS_AS(fidelity(bd_density({0.9, 0.9, 0}), spot),
                      std::domain_error);
  }
}

TEST_CASE("trace distance, HS norm, relative entropy") {
  const TwoQubitDensity mixed = bd_density({0, 0, 0});
  Matrix4c p00m = Matrix4c::Zero();
  p00m(0, 0) = 1.0;
  const TwoQubitDensity p00(p00m);
  Matrix4c p11m = Matrix4c::Zero();
  p11m(3, 3) = 1.0;
  const TwoQubitDensity p11(p11m);

  SECTION("identical inputs give zero") {
    REQUIRE(trace_distance(mixed, mixed) <= 1e-12);
    REQUIRE(hs_norm_sq(mixed, mixed) == 0.0);
    REQUIRE(relative_entropy(mixed, mixed) == Approx(0.0).margin(1e-12));
  }
  SECTION("orthogonal pure states have unnormalized trace distance 2") {
    REQUIRE(trace_distance(p00, p11) == Approx(2.0).margin(1e-12));
  }
  SECTION("support violation yields +infinity") {
    REQUIRE(relative_entropy(mixed, p00) == kInf);
  }
  SECTION("HS norm of BD differences is sum of squared correlation gaps / 4") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 100; ++trial) {
      const BlochVector a = random_physical(rng);
      const BlochVector b = random_physical(rng);
      double want = 0.0;
      for (int i = 0; i < 3; ++i) want += (a[i] - b[i]) * (a[i] - b[i]);
      want *= 0.25;
      REQUIRE(hs_norm_sq(bd_density(a), bd_density(b)) ==
              Approx(want).margin(1e-12));
    }
  }
  SECTION("metric properties on sampled triples") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const TwoQubitDensity a = bd_density(random_physical(rng));
      const TwoQubitDensity b = bd_density(random_physical(rng));
      const TwoQubitDensity c = bd_density(random_physical(rng));
      REQUIRE(trace_distance(a, b) == Approx(trace_distance(b, a)).margin(1e-9));
      REQUIRE(trace_distance(a, c) <=
              trace_distance(a, b) + trace_distance(b, c) + 1e-9);
    }
  }
  SECTION("relative entropy is nonnegative and matches the commuting formula") {
    std::mt19937_64 rng(18);
    for (int trial = 0; trial < 100; ++trial) {
      // full-rank BD pairs commute; pair eigenvalues by Bell index
      BlochVector a = random_physical(rng);
      BlochVector b = random_physical(rng);
      for (int i = 0; i < 3; ++i) {
        a[i] *= 0.9;
        b[i] *= 0.9;
      }
      const double got = relative_entropy(bd_density(a), bd_density(b));
      REQUIRE(got >= -1e-12);
      const EigenQuad la = bd_eigenvalues(a);
      const EigenQuad lb = bd_eigenvalues(b);
      double want = 0.0;
      for (int j = 0; j < 4; ++j)
        want += la.lambda[j] * (std::log2(la.lambda[j]) - std::log2(lb.lambda[j]));
      REQUIRE(got == Approx(want).margin(1e-9));
    }
  }
  SECTION("non-Hermitian input is rejected") {
    Matrix4c bad = Matrix4c::Zero();
    bad(0, 1) = 1.0;
    REQUIRE_THROWS_AS(trace_distance(TwoQubitDensity(bad), mixed),
                      std::domain_error);
    REQUIRE_THROWS_AS(relative_entropy(TwoQubitDensity(bad), mixed),
                      std::domain_error);
  }
}

TEST_CASE("TwoQubitDensity validity accessors") {
  const TwoQubitDensity good = bd_density({0.2, -0.1, 0.3});
  REQUIRE(good.is_valid());
  REQUIRE(good.hermiticity_defect() == 0.0);
  REQUIRE(good.trace_defect() <= 1e-15);

  const TwoQubitDensity boundary = bd_density({1, -1, 1});
  REQUIRE(boundary.is_valid());

  const TwoQubitDensity unphysical = bd_density({0.9, 0.9, 0});
  REQUIRE_FALSE(unphysical.is_valid());
  REQUIRE(unphysical.min_eigenvalue() == Approx(-0.2).margin(1e-12));
}
