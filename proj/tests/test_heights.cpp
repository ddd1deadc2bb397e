#include "generators.hpp"
#include "oracle_values.hpp"
#include "rtf/heights.hpp"

#include <doctest.h>

#include <cmath>

using namespace rtf;

TEST_CASE("real Iwasawa decomposition") {
  CHECK(iwasawa_real({1, 0, 0, 1}).height == doctest::Approx(0));
  CHECK(iwasawa_real(to_real(weyl_element())).height == doctest::Approx(0));
  CHECK(iwasawa_real({2, 0, 0, 0.5}).height == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(iwasawa_real({2, 0, 0, 1}), DomainError);
}

TEST_CASE("real Iwasawa reconstruction") {
  gen::Rng rng(gen::kSeed + 30);
  for (int i = 0; i < 500; ++i) {
    const Mat2R g = gen::sl2r(rng, 2.0);
    const IwasawaReal r = iwasawa_real(g);
    const Mat2R back = Mat2R{1, r.u, 0, 1} * Mat2R{r.t, 0, 0, 1 / r.t} * r.k;
    for (double e : {back.a - g.a, back.b - g.b, back.c - g.c, back.d - g.d}) REQUIRE(std::abs(e) < 1e-12);
    REQUIRE(std::abs(r.k.det() - 1) < 1e-12);
    REQUIRE(std::abs(r.k.a - r.k.d) < 1e-12);
  }
}

TEST_CASE("p-adic Iwasawa decomposition") {
  for (long long p : {2LL, 3LL, 7LL}) {
    CHECK(iwasawa_padic(identity_q(), p).log_units == 0);
    const IwasawaPadic d = iwasawa_padic(diag_q(Rational(p)), p);
    CHECK(d.height == doctest::Approx(-std::log(static_cast<double>(p))));
    CHECK(iwasawa_padic(unipotent_q(rat(5, p * p)), p).height == 0);
  }
  CHECK_THROWS_AS(iwasawa_padic(diag_q(2) * Mat2Q{2, 0, 0, 1}, 3), DomainError);
}

TEST_CASE("p-adic Iwasawa reconstruction is exact") {
  gen::Rng rng(gen::kSeed + 31);
  for (long long p : {2LL, 3LL, 5LL}) {
    for (int i = 0; i < 200; ++i) {
      const Mat2Q g = gen::sl2q(rng);
      const IwasawaPadic r = iwasawa_padic(g, p);
      REQUIRE(unipotent_q(r.u) * diag_q(r.t) * r.k == g);
      for (const Rational& e : {r.k.a, r.k.b, r.k.c, r.k.d}) REQUIRE((e == 0 || valuation(e, p) >= 0));
      REQUIRE(r.k.det() == 1);
    }
  }
}

TEST_CASE("adelic heights and the product formula") {
  CHECK(height_adelic(AdelicPoint{}) == 0);
  AdelicPoint a;
  a.infinity = {2, 0, 0, 0.5};
  CHECK(height_adelic(a) == doctest::Approx(std::log(2.0)));
  // Rational diag(p, 1/p) embedded diagonally has adelic height 0.
  for (long long p : {2LL, 5LL, 11LL})
    CHECK(height_adelic(AdelicPoint{}.left_multiply(diag_q(Rational(p)))) == doctest::Approx(0).epsilon(1e-14));
  gen::Rng rng(gen::kSeed + 32);
  for (int i = 0; i < 200; ++i) {
    const Mat2Q m = diag_q(gen::nonzero_rational(rng));
    REQUIRE(std::abs(height_adelic(AdelicPoint{}.left_multiply(m))) < 1e-12);
  }
}

TEST_CASE("weight of a point") {
  CHECK(weight_v(AdelicPoint{}) == doctest::Approx(0));
  AdelicPoint a;
  a.infinity = {3, 0, 0, 1.0 / 3};
  CHECK(weight_v(a) == doctest::Approx(0).epsilon(1e-14));
  a.infinity = {1, 1, 0, 1};
  CHECK(weight_v(a) == doctest::Approx(oracle::kRealWeightAt1).epsilon(1e-14));
  a.infinity = {1, 3, 0, 1};
  CHECK(weight_v(a) == doctest::Approx(oracle::kRealWeightAt3).epsilon(1e-14));
}

TEST_CASE("heights over E are twice the heights over Q") {
  gen::Rng rng(gen::kSeed + 33);
  for (int i = 0; i < 200; ++i) {
    const QuadAlg E(gen::field_core(rng));
    const Mat2Q g = gen::sl2q(rng);
    const AdelicPoint x = AdelicPoint{}.left_multiply(g);
    REQUIRE(height_over_E(embed(g, E), kInfinity) == doctest::Approx(2 * height_at(x, kInfinity)));
    for (const auto& [p, m] : x.finite)
      REQUIRE(height_over_E(embed(g, E), p) == doctest::Approx(2 * height_at(x, p)).epsilon(1e-12));
  }
}

TEST_CASE("psi indicator values") {
  CHECK(psi_T_value(0, 0, 0, 1) == 1);
  CHECK(psi_T_value(5, 0, 0, 1) == 0);
  CHECK(psi_T_value(-5, 0, 0, 1) == 0);
  CHECK(psi_T_value(0, 3, 3, 1) == -1);
}

TEST_CASE("psi integral equals 2T - v") {
  gen::Rng rng(gen::kSeed + 34);
  const Mat2Q w = weyl_element();
  for (int i = 0; i < 50; ++i) {
    const AdelicPoint x = AdelicPoint{}.left_multiply(gen::sl2q(rng));
    const double hx = height_adelic(x), hwx = height_adelic(x.left_multiply(w));
    for (double T : {1.0, 2.0, 3.5, 5.0, 8.0}) {
      double err = 0;
      const double q = psi_T_quadrature(hx, hwx, T, &err);
      REQUIRE(q == doctest::Approx(psi_T_direct(hx + hwx, T)).epsilon(1e-12));
      REQUIRE(err < 1e-9);
    }
  }
  CHECK(psi_T_quadrature(0, 0, 2) == doctest::Approx(4));
  CHECK(psi_T_quadrature(0, -0.5 * std::log(2.0), 2) == doctest::Approx(4 + 0.5 * std::log(2.0)));
}

TEST_CASE("the -2v + 4T closed form is exactly twice the integral") {
  // Kept as a regression guard on the documented factor.
  gen::Rng rng(gen::kSeed + 35);
  for (int i = 0; i < 100; ++i) {
    const double v = gen::real(rng, -3, 0), T = gen::real(rng, 1, 6);
    REQUIRE(psi_T_printed(v, T) == doctest::Approx(2 * psi_T_quadrature(0, v, T)));
  }
}
