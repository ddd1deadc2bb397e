#include "generators.hpp"
#include "rtf/expansion.hpp"
#include "rtf/kernel.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace rtf;

namespace {

GlobalTestFn bump_fn(const QuadAlg& E, RPoint c, double radius, Profile p = Profile::bump) {
  return GlobalTestFn(E, LocalTestFn::bump(c, radius, p));
}

bool contains(const std::vector<long long>& v, long long p) { return std::find(v.begin(), v.end(), p) != v.end(); }

}  // namespace

TEST_CASE("fibers of the datum map") {
  const QuadAlg Ei(-1), E5(5);
  const auto plus = iota_fiber(classify(1, Ei), Ei);
  REQUIRE(plus.size() == 1);
  CHECK(plus[0] == XPoint::identity(Ei));
  const auto minus = iota_fiber(classify(-1, Ei), Ei);
  REQUIRE(minus.size() == 1);
  CHECK(minus[0].alpha() == -1);
  CHECK(iota_fiber(classify(2, Ei), Ei).empty());
  for (const auto& [E, t0] : {std::pair{Ei, Rational(0)}, std::pair{Ei, rat(3, 5)}, std::pair{E5, rat(3, 2)}}) {
    const GeomDatum d = classify(t0, E);
    REQUIRE(d.cls == DatumClass::rss_nonelliptic);
    const auto fib = iota_fiber(d, E);
    REQUIRE(fib.size() == 2);
    for (const XPoint& x : fib) {
      CHECK(x.alpha() == t0);
      CHECK(chi(x) == t0);
    }
    CHECK(fib[0].a.y == -fib[1].a.y);
  }
}

TEST_CASE("places and class representatives of an elliptic datum") {
  const QuadAlg E(-1);
  const GlobalTestFn f = default_test_function(E);
  const GeomDatum d = classify(2, E);
  REQUIRE(d.cls == DatumClass::elliptic);
  const auto places = datum_places(d, f);
  CHECK(contains(places, 2));
  CHECK(contains(places, 3));
  CHECK(std::is_sorted(places.begin(), places.end()));
  const EllipticClasses cls = elliptic_classes(d, f);
  REQUIRE(!cls.reps.empty());
  for (const QPoint& q : cls.reps) {
    CHECK(q.alpha == 2);
    CHECK(orbit_discriminant(q) == Rational(-3));
  }
}

TEST_CASE("expansion of an elliptic datum has no T-dependence") {
  const QuadAlg E(-1);
  const GlobalTestFn f = bump_fn(E, {2, 0, 0, 0}, 3.0, Profile::cubic);
  const ExpansionReport r = expand(2, f);
  CHECK(r.datum.cls == DatumClass::elliptic);
  CHECK(!r.terms.empty());
  CHECK(r.total_slope() == 0);
  CHECK(r.line.slope == 0);
  CHECK(r.line.constant == doctest::Approx(r.total_constant()));
}

TEST_CASE("expansion is homogeneous in the test function") {
  const QuadAlg E(-1);
  const GlobalTestFn f = bump_fn(E, {1, 0, 0, 0}, 1.5);
  const ExpansionReport a = assemble_unipotent(1, f), b = assemble_unipotent(1, f.scaled(2));
  CHECK(b.line.constant == doctest::Approx(2 * a.line.constant).epsilon(1e-8));
  CHECK(b.line.slope == doctest::Approx(2 * a.line.slope).epsilon(1e-8));
  CHECK(a.line.slope != 0);
}

TEST_CASE("terms vanish when f misses the datum") {
  const QuadAlg E(-1);
  const GlobalTestFn far = bump_fn(E, {10, 0, 0, 0}, 1.0);
  for (const Rational& t0 : {Rational(0), Rational(1), Rational(-1), Rational(2)}) {
    const ExpansionReport r = expand(t0, far);
    CHECK(std::abs(r.line.constant) < 1e-12);
    CHECK(std::abs(r.line.slope) < 1e-12);
  }
}

TEST_CASE("slope matches the Levi descent") {
  const QuadAlg E(-1);
  const SlopeCheck u = slope_crosscheck(classify(1, E), bump_fn(E, {1, 0, 0, 0}, 1.5));
  REQUIRE(!u.inconclusive);
  CHECK(u.ratio == doctest::Approx(1).epsilon(1e-6));
  const SlopeCheck s = slope_crosscheck(classify(0, E), bump_fn(E, {0.5, 0, 0, 0}, 2.5));
  REQUIRE(!s.inconclusive);
  CHECK(s.ratio == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("truncated rss integral is affine with the assembled slope") {
  const QuadAlg E(-1);
  const GlobalTestFn f = bump_fn(E, {0.5, 0, 0, 0}, 2.5);
  const GeomDatum d = classify(0, E);
  const std::vector<double> J = truncated_rss(d, f, {3, 4, 5});
  const AffineInT line = assemble_rss(d, f).line;
  CHECK(std::abs(J[0] - 2 * J[1] + J[2]) < 1e-6);
  CHECK(0.5 * (J[2] - J[0]) == doctest::Approx(line.slope).epsilon(1e-6));
}

TEST_CASE("unipotent kernel: direct sum against unfolded sum") {
  const QuadAlg E(-1);
  const GlobalTestFn f = bump_fn(E, {1, 0, 0, 0}, 1.5);
  gen::Rng rng(gen::kSeed + 50);
  for (int i = 0; i < 3; ++i) {
    AdelicPoint x;
    x.infinity = gen::sl2r(rng, 0.4);
    const KernelComparison k = unipotent_kernel_check(f, x);
    CHECK(k.direct != 0);
    CHECK(k.unfolded == doctest::Approx(k.direct).epsilon(1e-6));
  }
}
