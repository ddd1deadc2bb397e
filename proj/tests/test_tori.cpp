#include "generators.hpp"
#include "rtf/tori.hpp"

#include <doctest.h>

#include <set>

using namespace rtf;

TEST_CASE("biquadratic data and the two tori pairs") {
  const QuadAlg Ei(-1), L2(2);
  const BiquadraticData b = BiquadraticData::make(Ei, L2);
  CHECK(b.Lp == QuadAlg(-2));
  CHECK(b.tag() == "field");
  const auto pairs = classify_structures(b);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0] == ToriPair{Ei, L2});
  CHECK(pairs[1] == ToriPair{Ei, QuadAlg(-2)});
  CHECK(symmetric_space_of(pairs[0]) == QuadAlg(-2));
  CHECK(symmetric_space_of(pairs[1]) == L2);

  const BiquadraticData same = BiquadraticData::make(Ei, Ei);
  CHECK(same.Lp.is_split());
  CHECK(same.tag() == "split-type");
  CHECK(classify_structures(same)[1].label() == "(Res_{Q(sqrt(-1))/Q} G_m, G_m)");
  CHECK_THROWS_AS(BiquadraticData::make(QuadAlg(1), L2), DomainError);
}

TEST_CASE("classification is an involution on random pairs") {
  gen::Rng rng(gen::kSeed + 60);
  for (int i = 0; i < 200; ++i) {
    const QuadAlg E(gen::field_core(rng)), L(gen::field_core(rng));
    const BiquadraticData b = BiquadraticData::make(E, L);
    REQUIRE(reflect(b.Lp, E) == L);
    REQUIRE(is_square(Rational(E.core) * Rational(L.core) * Rational(b.Lp.core)));
    const auto pairs = classify_structures(b);
    REQUIRE(symmetric_space_of(pairs[0]) == pairs[1].L);
    REQUIRE(symmetric_space_of(pairs[1]) == pairs[0].L);
  }
}

TEST_CASE("cyclotomic reduction") {
  const Cyclotomic c4(4);
  CHECK(c4.degree() == 2);
  CHECK(c4.reduce({0, 0, 1}) == std::vector<Rational>{-1, 0});
  const Cyclotomic c3(3);
  CHECK(c3.reduce({1, 1, 1}) == std::vector<Rational>{0, 0});
  for (int M : {5, 6, 8, 9, 12}) {
    const Cyclotomic c(M);
    std::vector<Rational> all(M, 1);
    Rational v;
    REQUIRE(Cyclotomic::is_rational(c.reduce(all), &v));
    CHECK(v == 0);
    std::vector<Rational> shifted(M + 3, 0);
    shifted[M + 2] = 7;  // exponents are taken mod M
    std::vector<Rational> direct(M, 0);
    direct[2] = 7;
    CHECK(c.reduce(shifted) == c.reduce(direct));
  }
}

TEST_CASE("finite torus models") {
  gen::Rng rng(gen::kSeed + 61);
  const FiniteTorusModel m3 = FiniteTorusModel::build(3, -1, rng);
  CHECK(m3.size() == 8);
  CHECK(m3.coset_count == 4);
  const FiniteTorusModel m5 = FiniteTorusModel::build(5, -1, rng);
  CHECK(m5.size() == 16);
  CHECK(m5.coset_count == 4);
  CHECK_THROWS_AS(FiniteTorusModel::build(1, 2, rng), DomainError);
  for (const auto& m : {m3, m5}) CHECK(m.check_consistency());
}

TEST_CASE("finite Poisson summation") {
  gen::Rng rng(gen::kSeed + 62);
  const std::pair<long long, long long> specs[] = {{12, -1}, {15, 2}, {8, 3}, {20, 5}, {9, -3}, {7, 2}};
  for (const auto& [N, d] : specs) {
    const FiniteTorusModel m = FiniteTorusModel::build(N, d, rng);
    REQUIRE(m.check_consistency());
    std::set<int> rational;
    for (int g : m.gamma_H) rational.insert(m.coset[g]);

    QuotientFn one(m.coset_count, 1);
    const PoissonSides c = finite_poisson(m, one);
    CHECK(c.equal);
    CHECK(c.geom == Rational(static_cast<long long>(rational.size())));

    QuotientFn delta(m.coset_count, 0);
    delta[m.coset[m.index[1 * N + 0]]] = 1;
    CHECK(finite_poisson(m, delta).geom == 1);
    CHECK(finite_poisson(m, delta).equal);

    for (int i = 0; i < 5; ++i) {
      QuotientFn f(m.coset_count);
      for (auto& v : f) v = gen::rational(rng, 5, 4);
      CHECK(average_over_H(m, match_test_function(m, f)) == f);
      CHECK(average_over_H(m, match_test_function(m, f, true)) == f);
      CHECK(finite_poisson(m, f).equal);
      CHECK(finite_poisson(m, f, true).equal);
    }
  }
}
