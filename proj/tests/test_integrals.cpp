#include "generators.hpp"
#include "oracle_values.hpp"
#include "rtf/orbital.hpp"
#include "rtf/zeta.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace rtf;

namespace {

const RealLine kGauss{[](double b) { return std::exp(-M_PI * b * b); }, 7};

// Sample points covering p^lo Z_p / p^hi Z_p plus a few outside the support.
std::vector<Rational> grid(long long p, int lo, int hi) {
  std::vector<Rational> pts;
  const Rational base = rpow(p, lo);
  const long long n = std::llround(std::pow(static_cast<double>(p), hi - lo));
  for (long long k = 0; k < n; ++k) pts.push_back(base * Rational(k));
  pts.push_back(rpow(p, lo - 1));
  pts.push_back(rpow(p, lo - 2) * Rational(p - 1));
  return pts;
}

double l2(const FiniteSpectrum& g) {
  double s = 0;
  for (const auto& v : g.values) s += std::norm(v);
  return s * std::pow(static_cast<double>(g.p), -g.hi);
}

FiniteLine random_line(gen::Rng& rng, long long p) {
  FiniteLine g;
  g.p = p;
  g.lo = static_cast<int>(gen::integer(rng, -2, 0));
  g.hi = g.lo + static_cast<int>(gen::integer(rng, 1, 2));
  g.values.resize(static_cast<size_t>(std::llround(std::pow(static_cast<double>(p), g.hi - g.lo))));
  for (auto& v : g.values) v = gen::rational(rng, 5, 3);
  return g;
}

}  // namespace

TEST_CASE("finite Fourier transform of the unit ball") {
  for (long long p : {2LL, 3LL, 5LL}) {
    const FiniteSpectrum h = fourier_line(indicator_line(p, 0));
    for (const Rational& b : grid(p, -2, 2)) {
      const double want = (b == 0 || valuation(b, p) >= 0) ? 1.0 : 0.0;
      REQUIRE(std::abs(h.at(b) - want) < 1e-12);
    }
    // 1_{p^k Z_p} goes to p^{-k} 1_{p^{-k} Z_p}
    const FiniteSpectrum h2 = fourier_line(indicator_line(p, 1));
    CHECK(std::abs(h2.at(Rational(1) / Rational(p)) - 1.0 / p) < 1e-12);
    CHECK(std::abs(h2.at(Rational(1) / Rational(p * p))) < 1e-12);
  }
}

TEST_CASE("finite Fourier inversion and Plancherel") {
  gen::Rng rng(gen::kSeed + 40);
  for (int i = 0; i < 40; ++i) {
    const long long p = i % 2 ? 3 : 2;
    const FiniteLine g = random_line(rng, p);
    const FiniteSpectrum h = fourier_line(g);
    const FiniteSpectrum back = fourier_line(h);
    for (const Rational& b : grid(p, g.lo - 1, g.hi + 1))
      REQUIRE(std::abs(back.at(b) - to_double(g.at(-b))) < 1e-10);
    REQUIRE(l2(h) == doctest::Approx(l2(to_complex(g))).epsilon(1e-10));
    REQUIRE(h.at_zero().real() == doctest::Approx(to_double(integral(g))).epsilon(1e-12));
  }
}

TEST_CASE("the Gaussian is self-dual") {
  for (double xi : {0.0, 0.25, 0.5, 1.0, 1.7, 2.5}) {
    const FourierValue v = fourier_real(kGauss, xi);
    CHECK(v.value.real() == doctest::Approx(std::exp(-M_PI * xi * xi)).epsilon(1e-12));
    CHECK(std::abs(v.value.imag()) < 1e-12);
  }
  CHECK(integral(kGauss) == doctest::Approx(1).epsilon(1e-12));
}

TEST_CASE("Poisson summation for Gaussians") {
  const PoissonResult a = poisson_check(kGauss);
  CHECK(a.lhs == doctest::Approx(oracle::kThetaGaussian).epsilon(1e-12));
  CHECK(a.rhs == doctest::Approx(oracle::kThetaGaussian).epsilon(1e-12));
  const RealLine wide{[](double b) { return std::exp(-M_PI * b * b / 4); }, 14};
  const PoissonResult b = poisson_check(wide);
  CHECK(b.lhs == doctest::Approx(oracle::kThetaDilated2).epsilon(1e-12));
  CHECK(b.rhs == doctest::Approx(oracle::kThetaDilated2).epsilon(1e-12));
}

TEST_CASE("local zeta integrals, exact") {
  const QuadraticCharacter trivial, gauss_char(-4);
  CHECK(tate_zeta_local_exact(indicator_line(3, 0), trivial, 1) == rat(3, 2));
  CHECK(tate_zeta_local_exact(indicator_line(2, 0), trivial, 2) == rat(4, 3));
  // kappa(3) = -1 for D = -4
  CHECK(tate_zeta_local_exact(indicator_line(3, 0), gauss_char, 1) == rat(3, 4));
  CHECK(tate_zeta_local_exact(indicator_line(5, 0), gauss_char, 1) == rat(5, 4));
  // ramified: kappa nontrivial on units
  CHECK(tate_zeta_local_exact(indicator_line(2, 0), gauss_char, 1) == 0);
  CHECK(tate_zeta_local_exact(indicator_line(2, -3), gauss_char, 2) == 0);
  CHECK(tate_zeta_local(indicator_line(3, 0), trivial, 1.5) ==
        doctest::Approx(1 / (1 - std::pow(3.0, -1.5))).epsilon(1e-13));
  const double h = 1e-5;
  CHECK(tate_zeta_local_ds(indicator_line(3, 0), trivial, 2.0) ==
        doctest::Approx((tate_zeta_local(indicator_line(3, 0), trivial, 2 + h) -
                         tate_zeta_local(indicator_line(3, 0), trivial, 2 - h)) /
                        (2 * h))
            .epsilon(1e-7));
}

TEST_CASE("archimedean zeta of the Gaussian") {
  CHECK(tate_zeta_real(kGauss, QuadraticCharacter(), 1) == doctest::Approx(oracle::kGammaFactor1).epsilon(1e-10));
  CHECK(tate_zeta_real(kGauss, QuadraticCharacter(), 2) == doctest::Approx(oracle::kGammaFactor2).epsilon(1e-10));
  CHECK(tate_zeta_real(kGauss, QuadraticCharacter(), 3) == doctest::Approx(oracle::kGammaFactor3).epsilon(1e-10));
  // sign character kills an even function
  CHECK(std::abs(tate_zeta_real(kGauss, QuadraticCharacter(-4), 2)) < 1e-12);
}

TEST_CASE("global zeta of the standard line data") {
  GlobalLineData h;
  h.infinity = kGauss;
  CHECK(tate_zeta_global(h, QuadraticCharacter(), 2).value ==
        doctest::Approx(oracle::kGammaFactor2 * oracle::kZeta2).epsilon(1e-8));
  CHECK(tate_zeta_global(h, QuadraticCharacter(), 3).value ==
        doctest::Approx(oracle::kGammaFactor3 * oracle::kZeta3).epsilon(1e-8));
  CHECK(line_mass(h) == doctest::Approx(1).epsilon(1e-12));
  h.finite[2] = indicator_line(2, -1);
  CHECK(line_mass(h) == doctest::Approx(2).epsilon(1e-12));
}

TEST_CASE("special values against the oracle") {
  CHECK(riemann_zeta(2) == doctest::Approx(oracle::kZeta2).epsilon(1e-13));
  CHECK(riemann_zeta(3) == doctest::Approx(oracle::kZeta3).epsilon(1e-13));
  CHECK(riemann_zeta(1.5) == doctest::Approx(oracle::kZeta1p5).epsilon(1e-13));
  CHECK(hurwitz_regular(1, 0.5) == doctest::Approx(oracle::kHurwitzRegular1Half).epsilon(1e-12));
  CHECK(hurwitz_regular(1, 1.0 / 3) == doctest::Approx(oracle::kHurwitzRegular1Third).epsilon(1e-12));
  CHECK(hurwitz_regular(2, 0.25) == doctest::Approx(oracle::kHurwitzRegular2Quarter).epsilon(1e-12));
  CHECK(hurwitz_regular(1, 1) == doctest::Approx(kEulerGamma).epsilon(1e-13));
  CHECK(dirichlet_L(1, -4) == doctest::Approx(oracle::kLMinus4At1).epsilon(1e-12));
  CHECK(dirichlet_L(1, -3) == doctest::Approx(oracle::kLMinus3At1).epsilon(1e-12));
  CHECK(dirichlet_L(1, 5) == doctest::Approx(oracle::kL5At1).epsilon(1e-12));
  CHECK(dirichlet_L(1, 8) == doctest::Approx(oracle::kL8At1).epsilon(1e-12));
  CHECK(dirichlet_L(2, -4) == doctest::Approx(oracle::kLMinus4At2).epsilon(1e-12));
  CHECK(dirichlet_L(3, -8) == doctest::Approx(oracle::kLMinus8At3).epsilon(1e-12));
  CHECK(dirichlet_L(2, 12) == doctest::Approx(oracle::kL12At2).epsilon(1e-12));
  CHECK(weight_real(1) == doctest::Approx(oracle::kRealWeightAt1).epsilon(1e-14));
  CHECK(weight_real(3) == doctest::Approx(oracle::kRealWeightAt3).epsilon(1e-14));
}

TEST_CASE("archimedean split orbital integrals against the oracle") {
  const LocalTestFn narrow = LocalTestFn::bump(RPoint{0, 0, 0, 0}, 1, Profile::gaussian);
  CHECK(orbital_real(narrow, RPoint{0, 1, 0, 1}).value ==
        doctest::Approx(oracle::kSplitOrbitalGaussian).epsilon(1e-9));
  const LocalTestFn wide = LocalTestFn::bump(RPoint{0, 0, 0, 0}, 2, Profile::gaussian);
  CHECK(orbital_real(wide, RPoint{0.5, 0.75, 0, 0}).value ==
        doctest::Approx(oracle::kSplitOrbitalGaussianWide).epsilon(1e-9));
}

TEST_CASE("finite orbital integrals stabilize and are conjugation invariant") {
  gen::Rng rng(gen::kSeed + 41);
  const std::pair<long long, Rational> data[] = {{-1, 2}, {2, 3}, {-3, 2}, {5, 3}, {-1, 3}};
  for (const auto& [tau, t0] : data) {
    const Rational delta = (t0 * t0 - 1) / Rational(tau);
    const QPoint eta{t0, 0, 1, delta};
    CHECK(orbit_discriminant(eta) == delta);
    for (long long p : {2LL, 3LL, 5LL}) {
      const LocalTestFn f = LocalTestFn::basic(p);
      CHECK(orbital_local(f, eta, tau, 4).stabilized);
      const Rational base = orbital_finite_at_depth(f, eta, tau, 6);
      for (int i = 0; i < 3; ++i)
        CHECK(orbital_finite_at_depth(f, eta.conjugate(gen::sl2z(rng)), tau, 6) == base);
    }
  }
}

TEST_CASE("K-averages") {
  const long long p = 3;
  const LocalTestFn basic = LocalTestFn::basic(p);
  // Ramified character integrates to zero over GL2(Z_p).
  const FiniteLine zero = kappa_average(basic, QuadraticCharacter(-3), -1);
  for (const auto& v : zero.values) CHECK(v == 0);
  // Unramified: the basic function is K-invariant, so its average is itself on the line.
  const FiniteLine same = kappa_average(basic, QuadraticCharacter(), -1);
  const FiniteLine direct = derive_fx(basic, identity_q(), -1);
  CHECK(same_function(same, direct));
}

TEST_CASE("s-derivative and removable limits") {
  const DerivativeResult a = sderivative([](double s) { return 3 / s + 2 + s; });
  CHECK(a.value == doctest::Approx(2).epsilon(1e-8));
  const DerivativeResult b = sderivative([](double s) { return std::exp(s) / s; });
  CHECK(b.value == doctest::Approx(1).epsilon(1e-8));
  const DerivativeResult c = removable_limit([](double s) { return std::sin(s) / s; });
  CHECK(c.value == doctest::Approx(1).epsilon(1e-10));
}

TEST_CASE("line functions and transforms under the torus") {
  // x = diag(s, 1/s) rescales the line by t = s^2: f_x(b) = f(b/t), hat f_x(xi) = |t| hat f(t xi).
  const LocalTestFn arch = LocalTestFn::bump(RPoint{1, 0.1, 0.2, -0.1}, 0.9, Profile::gaussian);
  const RealLine g1 = derive_fx(arch, Mat2R{1, 0, 0, 1});
  for (double s : {0.7, 1.3, 2.0}) {
    const double t = s * s;
    const RealLine gt = derive_fx(arch, Mat2R{s, 0, 0, 1 / s});
    for (double b : {-1.0, -0.3, 0.0, 0.4, 1.1}) REQUIRE(gt(b) == doctest::Approx(g1(b / t)).epsilon(1e-12));
    for (double xi : {0.0, 0.3, 0.8}) {
      const std::complex<double> lhs = fourier_real(gt, xi).value, rhs = t * fourier_real(g1, t * xi).value;
      REQUIRE(std::abs(lhs - rhs) < 1e-9);
    }
  }
  // Finite place, exact tables.
  const long long p = 3;
  const LocalTestFn balls = LocalTestFn::ball_sum(p, 1, {Ball{1, 0, 0, 0, 1}, Ball{1, 0, 1, 0, 2}});
  const FiniteLine h1 = derive_fx(balls, identity_q(), -1);
  REQUIRE(integral(h1) != 0);
  const FiniteSpectrum f1 = fourier_line(h1);
  for (const Rational& s : {Rational(3), rat(1, 3), Rational(9)}) {
    const Rational t = s * s;
    const FiniteLine ht = derive_fx(balls, diag_q(s), -1);
    const FiniteSpectrum ft = fourier_line(ht);
    const double abs_t = std::pow(static_cast<double>(p), -valuation(t, p));
    for (const Rational& b : grid(p, -4, 4)) {
      REQUIRE(ht.at(b) == h1.at(b / t));
      REQUIRE(std::abs(ft.at(b) - abs_t * f1.at(t * b)) < 1e-12);
    }
  }
}
