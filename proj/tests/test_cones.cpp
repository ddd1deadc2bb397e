#include "generators.hpp"
#include "rtf/cones.hpp"

#include <doctest.h>

using namespace rtf;

namespace {
Vec v1(const Rational& x) { return {x}; }
}  // namespace

TEST_CASE("angle cone and relative interior") {
  const Cone half(1, {{Rational(1)}});
  const Cone zero = Cone::origin(1);
  CHECK(angle_cone(zero, half).same_set(half));
  CHECK(angle_cone(half, half).same_set(Cone::whole(1)));
  CHECK(rint_indicator(zero)(v1(0)) == 1);
  CHECK(rint_indicator(half)(v1(0)) == 0);
  CHECK(rint_indicator(half)(v1(1)) == 1);
  CHECK_THROWS_AS(angle_cone(Cone(1, {{Rational(-1)}}), half), DomainError);
}

TEST_CASE("faces and duals in rank two") {
  const Cone quadrant(2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}});
  CHECK(quadrant.dim() == 2);
  CHECK(quadrant.faces().size() == 4);
  for (const auto& F : quadrant.faces()) CHECK(F.is_face_of(quadrant));
  CHECK(dual_cone(quadrant).same_set(quadrant));
  CHECK(dual_cone(dual_cone(quadrant)).same_set(quadrant));
}

TEST_CASE("signs") {
  CHECK(epsilon(label_G(), label_G()) == 1);
  CHECK(epsilon(label_B(), label_G()) == -1);
  CHECK(epsilon(label_B(), label_B()) == 1);
}

TEST_CASE("tau hat closed forms") {
  CHECK(tau_hat(label_G(), label_G())(v1(rat(-7, 3))) == 1);
  CHECK(tau_hat(label_B(), label_B())(v1(0)) == 1);
  CHECK(tau_hat(label_B(), label_B())(v1(1)) == 0);
  CHECK(tau_hat(label_B(), label_G())(v1(rat(1, 2))) == 1);
  CHECK(tau_hat(label_B(), label_G())(v1(rat(-1, 2))) == 0);
  CHECK_THROWS_AS(tau_hat(label_G(), label_B()), DomainError);
}

TEST_CASE("sigma closed forms") {
  CHECK(sigma(label_G(), label_G())(v1(0)) == 1);
  CHECK(sigma(label_G(), label_G())(v1(1)) == 0);
  CHECK(sigma(label_B(), label_B())(v1(3)) == 0);
  CHECK(sigma(label_B(), label_G())(v1(2)) == 1);
  CHECK(sigma(label_B(), label_G())(v1(-2)) == 0);
}

TEST_CASE("gamma closed forms") {
  CHECK(gamma(label_B(), label_G())(v1(rat(1, 2)), v1(1)) == 1);
  CHECK(gamma(label_B(), label_G())(v1(rat(3, 2)), v1(1)) == 0);
  CHECK(gamma(label_G(), label_G())(v1(0), v1(17)) == 1);
}

TEST_CASE("gamma matches its rank-one closed form on a rational grid") {
  const auto g = gamma(label_B(), label_G());
  for (int i = -40; i <= 40; ++i)
    for (int j = -40; j <= 40; ++j) {
      const Rational H = rat(i, 8), X = rat(j, 8);
      const int closed = (H > 0 ? 1 : 0) - (H - X > 0 ? 1 : 0);
      REQUIRE(g(v1(H), v1(X)) == closed);
    }
}

TEST_CASE("absorption identity on random points") {
  gen::Rng rng(gen::kSeed + 10);
  const auto labels = rank_one_labels();
  for (int i = 0; i < 500; ++i) {
    const Vec H = v1(gen::rational(rng, 60, 8)), X = v1(gen::rational(rng, 60, 8));
    const ParabolicLabel B = label_B(), G = label_G();
    int rhs = 0;
    for (const auto& R : labels) {
      if (!B.contained_in(R)) continue;
      rhs += epsilon(R, G) * tau_hat(B, R)(R.coproject(H)) * gamma(R, G)(R.project(H), R.project(X));
    }
    REQUIRE(tau_hat(B, G)(H - X) == rhs);
  }
}

TEST_CASE("contraction relation on random points") {
  gen::Rng rng(gen::kSeed + 11);
  const auto labels = rank_one_labels();
  for (int i = 0; i < 500; ++i) {
    const Vec H = v1(gen::rational(rng, 60, 8));
    for (const auto& P1 : labels)
      for (const auto& P : labels) {
        if (!P1.contained_in(P)) continue;
        const Vec Hp = P1.project(H);
        int rhs = 0;
        for (const auto& P2 : labels)
          if (P.contained_in(P2)) rhs += sigma(P1, P2)(Hp);
        REQUIRE(tau(P1, P)(Hp) * tau_hat(P, label_G())(Hp) == rhs);
      }
  }
}
