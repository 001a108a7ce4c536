#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qzeros/special_functions.hpp"
#include "test_util.hpp"

using namespace qzeros;
using qzeros::test::dist;

namespace {

// mpmath at 50 digits, tests/oracles/generate_oracles.py.
const Complex kZetaAtMinusHalf{-2.1497264940715946, 0.56378200897534925};  // zeta(-0.5+21.0220i)
const Complex kEtaPrimeAtZero1{1.8792216289550203, -0.11430778854542364};  // eta'(0.5+14.1347i)
constexpr double kEtaPrimeAtOne = 0.15986890374243097;    // eta'(1)
constexpr double kFirstOrdinate = 14.134725141734694;

Complex random_point(std::mt19937_64& rng, double re_lo, double re_hi, double im_lo, double im_hi) {
  std::uniform_real_distribution<double> re(re_lo, re_hi);
  std::uniform_real_distribution<double> im(im_lo, im_hi);
  return {re(rng), im(rng)};
}

}  // namespace

TEST_SUITE("special_functions") {
  TEST_CASE("riemann_zeta reproduces classical values") {
    CHECK(dist(riemann_zeta({2.0, 0.0}), std::numbers::pi * std::numbers::pi / 6.0) < 1e-12);
    CHECK(std::abs(riemann_zeta({0.5, 14.134725})) < 1e-4);
    CHECK(dist(riemann_zeta({-0.5, 21.0220}), kZetaAtMinusHalf) < 1e-9);
  }

  TEST_CASE("riemann_zeta errors") {
    CHECK_THROWS_KIND(riemann_zeta({1.0, 0.0}), ErrorKind::PoleAtOne);
    CHECK_THROWS_KIND(riemann_zeta({-2.5, 3.0}), ErrorKind::RangeUnsupported);
    CHECK_THROWS_KIND(riemann_zeta({0.5, 250.0}), ErrorKind::RangeUnsupported);
    CHECK_THROWS_KIND(zeta_plus({-3.0, 0.0}), ErrorKind::RangeUnsupported);
    CHECK_THROWS_KIND(zeta_plus_derivative({0.0, -201.0}), ErrorKind::RangeUnsupported);
  }

  TEST_CASE("eta identities") {
    CHECK(dist(zeta_plus({1.0, 0.0}), std::numbers::ln2) < 1e-10);
    CHECK(dist(zeta_plus({0.0, 0.0}), 0.5) < 1e-10);
    CHECK(dist(zeta_plus_derivative({0.0, 0.0}), 0.5 * std::log(std::numbers::pi / 2.0)) < 1e-10);
    CHECK(std::abs(zeta_plus({0.5, 25.0109})) < 1e-3);
  }

  TEST_CASE("eta is smooth through s = 1") {
    // Away from the pole the product form is well conditioned.
    for (double h : {1e-1, 1e-2, 1e-3}) {
      const Complex s{1.0 + h, h};
      const Complex expected = (1.0 - std::pow(2.0, 1.0 - s)) * riemann_zeta(s);
      CHECK(dist(zeta_plus(s), expected) < 1e-10);
    }
    // Closer in, compare with the Taylor expansion eta(1 + w) = ln 2 + eta'(1) w + O(w^2).
    for (double h : {1e-4, 1e-6, 1e-9}) {
      const Complex w{h, h};
      CHECK(dist(zeta_plus(1.0 + w), std::numbers::ln2 + kEtaPrimeAtOne * w) < 2.0 * std::norm(w));
    }
    CHECK(dist(zeta_plus({1.0, 0.0}), zeta_plus({1.0 + 1e-7, 0.0})) < 1e-6);
  }

  TEST_CASE("zeta_plus_derivative matches the independent oracle") {
    CHECK(dist(zeta_plus_derivative({0.5, 14.1347}), kEtaPrimeAtZero1) < 1e-8);
  }

  TEST_CASE("property: derivative agrees with central differences on 50 points") {
    std::mt19937_64 rng(7);
    const double h = 1e-5;
    for (int i = 0; i < 50; ++i) {
      const Complex s = random_point(rng, -1.0, 2.5, -50.0, 50.0);
      const Complex fd = (zeta_plus(s + h) - zeta_plus(s - h)) / (2.0 * h);
      CAPTURE(s);
      CHECK(dist(zeta_plus_derivative(s), fd) <= 1e-6);
    }
  }

  TEST_CASE("property: zeta_plus = (1 - 2^{1-s}) zeta on 100 points") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
      const Complex s = random_point(rng, -2.0, 4.0, -60.0, 60.0);
      if (std::abs(s - 1.0) < 1e-3) continue;
      const Complex expected = (1.0 - std::pow(2.0, 1.0 - s)) * riemann_zeta(s);
      CAPTURE(s);
      CHECK(dist(zeta_plus(s), expected) <= 1e-11 * std::max(1.0, std::abs(expected)));
    }
  }

  TEST_CASE("property: conjugate symmetry") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
      const Complex s = random_point(rng, -2.0, 4.0, 0.5, 60.0);
      const Complex up = riemann_zeta(s);
      const Complex down = riemann_zeta(std::conj(s));
      CAPTURE(s);
      CHECK(dist(down, std::conj(up)) <= 1e-12 * std::max(1.0, std::abs(up)));
    }
  }

  TEST_CASE("hardy_z is real-valued and changes sign at the first zero") {
    CHECK(hardy_z(kFirstOrdinate - 0.01) * hardy_z(kFirstOrdinate + 0.01) < 0.0);
    for (double t : {10.0, 17.3, 33.3}) {
      const Complex rotated = std::exp(Complex{0.0, riemann_siegel_theta(t)}) * riemann_zeta({0.5, t});
      CHECK(std::abs(rotated.imag()) < 1e-10 * std::max(1.0, std::abs(rotated.real())));
      CHECK(hardy_z(t) == doctest::Approx(rotated.real()).epsilon(1e-12));
    }
  }

  TEST_CASE("classical_zeros") {
    const auto all = classical_zeros(48.5406);
    REQUIRE(all.size() == kReferenceOrdinates.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(std::round(all[i] * 1e4) / 1e4 == doctest::Approx(kReferenceOrdinates[i]).epsilon(1e-12));
    }
    CHECK(classical_zeros(10.0).empty());
    const auto first = classical_zeros(15.0);
    REQUIRE(first.size() == 1);
    CHECK(std::abs(first[0] - kFirstOrdinate) < 1e-6);

    const auto below30 = classical_zeros(30.0);
    REQUIRE(below30.size() == 3);
    CHECK(std::abs(below30[1] - 21.022039638771555) < 1e-6);
    CHECK(std::abs(below30[2] - 25.010857580145689) < 1e-6);

    CHECK_THROWS_KIND(classical_zeros(100.5), ErrorKind::RangeUnsupported);
  }

  TEST_CASE("property: classical zeros are increasing and are zeros of eta") {
    const auto ys = classical_zeros(100.0);
    CHECK(ys.size() == 29);
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (i > 0) CHECK(ys[i] > ys[i - 1]);
      CHECK(std::abs(zeta_plus({0.5, ys[i]})) < 1e-5);
    }
  }

  TEST_CASE("EtaConfig validation") {
    EtaConfig cfg;
    cfg.euler_maclaurin_order = 7;
    CHECK_THROWS_KIND(zeta_plus({2.0, 0.0}, cfg), ErrorKind::RangeUnsupported);
    cfg = EtaConfig{};
    cfg.target_abs_error = 0.0;
    CHECK_THROWS_KIND(riemann_zeta({2.0, 0.0}, cfg), ErrorKind::RangeUnsupported);
  }
}
