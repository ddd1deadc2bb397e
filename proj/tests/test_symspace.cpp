#include "generators.hpp"

#include <doctest.h>

using namespace rtf;

namespace {

QuadElem norm_one(gen::Rng& rng, const QuadAlg& E) {
  QuadElem y;
  do y = QuadElem(E, gen::rational(rng, 9, 5), gen::rational(rng, 9, 5));
  while (y.norm() == 0);
  return y / y.conj();
}

}  // namespace

TEST_CASE("chi") {
  const QuadAlg E(-1);
  CHECK(chi(XPoint::identity(E)) == 1);
  CHECK(chi(XPoint(E, QuadElem(E, 0, 1), 0, 0)) == 0);
  CHECK(chi(unipotent_rep(E, 1)) == 1);
}

TEST_CASE("classification of t0") {
  const QuadAlg Ei(-1);
  CHECK(classify(1, Ei).cls == DatumClass::unipotent_plus);
  CHECK(classify(-1, QuadAlg(7)).cls == DatumClass::unipotent_minus);
  const GeomDatum d0 = classify(0, Ei);
  CHECK(d0.cls == DatumClass::rss_nonelliptic);
  CHECK(d0.spl == Ei);
  const GeomDatum d3 = classify(3, Ei);
  CHECK(d3.cls == DatumClass::elliptic);
  CHECK(d3.spl == QuadAlg(2));
  CHECK(classify(rat(5, 3), Ei).spl == QuadAlg(1));  // 25/9 - 1 = (4/3)^2
}

TEST_CASE("reflection and descendants") {
  const QuadAlg Ei(-1), S(1);
  CHECK(reflect(QuadAlg(2), Ei) == QuadAlg(-2));
  CHECK(reflect(Ei, Ei) == S);
  CHECK(reflect(S, Ei) == Ei);
  CHECK(descendant(classify(3, Ei), Ei) == QuadAlg(-2));
  CHECK(descendant(classify(0, Ei), Ei) == S);
  CHECK_THROWS_AS(descendant(classify(1, Ei), Ei), DomainError);
  gen::Rng rng(gen::kSeed + 20);
  for (int i = 0; i < 100; ++i) {
    const QuadAlg E(gen::field_core(rng)), L(gen::field_core(rng));
    REQUIRE(reflect(reflect(L, E), E) == L);
  }
}

TEST_CASE("the XPoint invariant survives conjugation and twisted action") {
  gen::Rng rng(gen::kSeed + 21);
  for (int i = 0; i < 1000; ++i) {
    const QuadAlg E(gen::field_core(rng));
    const XPoint x(E, norm_one(rng, E), gen::rational(rng), 0);
    const Mat2Q g = gen::sl2q(rng);
    const XPoint y = x.conjugate(g);
    REQUIRE(y.a.norm() - Rational(E.core) * y.b * y.c == 1);
    REQUIRE(classify(chi(y), E).cls == classify(chi(x), E).cls);
    const Mat2E gamma = embed(gen::sl2q(rng), E) * Mat2E{QuadElem(E, 1), QuadElem(E, 0, 1), QuadElem(E, 0), QuadElem(E, 1)};
    const XPoint z = x.twisted_action(gamma);
    REQUIRE(z.a.norm() - Rational(E.core) * z.b * z.c == 1);
  }
}

TEST_CASE("Cayley transform examples") {
  const QuadAlg E(-1);
  CHECK(cayley(-1, SlicePoint{E, 0, 0, 0}) == XPoint::identity(E));
  CHECK(cayley(-1, SlicePoint{E, 0, 1, 0}).matrix() ==
        Mat2E{QuadElem(E, 1), QuadElem(E, 0, 2), QuadElem(E, 0), QuadElem(E, 1)});
  CHECK(cayley_inv(-1, XPoint::identity(E)) == SlicePoint{E, 0, 0, 0});
  const SlicePoint n = cayley_inv(-1, unipotent_rep(E, 3));
  CHECK(n.a == 0);
  CHECK(n.c == 0);
  CHECK_THROWS_AS(cayley(1, SlicePoint{E, 0, 1, -1}), SingularInput);
}

TEST_CASE("Cayley transform properties") {
  gen::Rng rng(gen::kSeed + 22);
  int done = 0;
  while (done < 100) {
    const QuadAlg E(gen::field_core(rng));
    const int eps = gen::integer(rng, 0, 1) ? 1 : -1;
    const SlicePoint Y{E, gen::rational(rng), gen::rational(rng), gen::rational(rng)};
    if (Y.minus_det() == 1) continue;
    const XPoint x = cayley(eps, Y);
    const Mat2Q g = gen::sl2q(rng);
    const SlicePoint Yg = Y.adjoint(g);
    const Rational q = Y.minus_det();
    REQUIRE(cayley_inv(eps, x) == Y);
    REQUIRE(cayley(eps, Yg) == x.conjugate(g));
    REQUIRE(chi(x) == -eps * (1 + q) / (1 - q));
    REQUIRE(chi(x) == scalar_cayley(eps, q));
    ++done;
  }
}

TEST_CASE("unipotent scale satisfies the product formula") {
  gen::Rng rng(gen::kSeed + 23);
  for (int i = 0; i < 100;) {
    const QuadAlg E(gen::field_core(rng));
    const int eps = gen::integer(rng, 0, 1) ? 1 : -1;
    const QuadElem x = norm_one(rng, E);
    if (x == QuadElem(E, eps)) continue;
    ++i;
    REQUIRE(adelic_abs(cayley_unipotent_scale(eps, x)) == 1);
  }
}

TEST_CASE("Levi retraction") {
  const QuadAlg E(-1);
  const XPoint diag(E, QuadElem(E, 0, 1), 0, 0);
  const LeviRetraction d = levi_retract(diag);
  CHECK(d.eta_m == diag);
  CHECK(d.n1 == identity_e(E));

  const LeviRetraction u = levi_retract(unipotent_rep(E, 6));
  CHECK(u.eta_m == XPoint::identity(E));
  CHECK(u.n1 == Mat2E{QuadElem(E, 1), QuadElem(E, 0, 3), QuadElem(E, 0), QuadElem(E, 1)});
  CHECK_THROWS_AS(levi_retract(XPoint(E, QuadElem(E, 0), 1, -1)), DomainError);

  gen::Rng rng(gen::kSeed + 24);
  for (int i = 0; i < 100; ++i) {
    const QuadAlg F(gen::field_core(rng));
    const XPoint eta(F, norm_one(rng, F), gen::rational(rng), 0);
    const LeviRetraction lr = levi_retract(eta);
    const Mat2E m = lr.gamma * lr.n1;
    REQUIRE(m * theta(m).inverse() == eta.matrix());
    REQUIRE(lr.y / lr.y.conj() == eta.a);
  }
}

TEST_CASE("unipotent representatives and square classes") {
  CHECK(square_class(4) == 1);
  CHECK(square_class(8) == 2);
  CHECK(square_class(rat(-3, 4)) == -3);
  CHECK_THROWS_AS(unipotent_rep(QuadAlg(-1), 0), DomainError);
  gen::Rng rng(gen::kSeed + 25);
  for (int i = 0; i < 100; ++i) {
    const QuadAlg E(gen::field_core(rng));
    const Rational b = gen::nonzero_rational(rng), y = gen::nonzero_rational(rng);
    const Mat2Q mu{1 / y, 0, 0, y};
    REQUIRE(unipotent_rep(E, b).conjugate(inverse_exact(mu)) == unipotent_rep(E, b * y * y));
    REQUIRE(square_class(b * y * y) == square_class(b));
  }
}
