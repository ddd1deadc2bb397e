#pragma once

#include "rtf/symspace.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace rtf {

// E, L and the reflected algebra L' = reflect(L, E).
struct BiquadraticData {
  QuadAlg E, L, Lp;

  static BiquadraticData make(const QuadAlg& E, const QuadAlg& L);
  // "field" when E, L, L' are pairwise distinct fields, else "split-type".
  std::string tag() const;
};

// Galois symmetric pair of rank-one tori: ambient restriction of scalars
// over E, stabilizer Nm^1_{L/Q} (L split means G_m).
struct ToriPair {
  QuadAlg E, L;
  std::string label() const;
  friend bool operator==(const ToriPair&, const ToriPair&) = default;
};

std::vector<ToriPair> classify_structures(const BiquadraticData& m);
QuadAlg symmetric_space_of(const ToriPair& pair);

// Exact elements of Q(zeta_M) as coefficient vectors of length phi(M).
class Cyclotomic {
 public:
  explicit Cyclotomic(int M);
  int order() const { return M_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  // Reduce sum_e coeff[e] zeta^e (e mod M) to the canonical basis.
  std::vector<Rational> reduce(const std::vector<Rational>& by_exponent) const;
  static bool is_rational(const std::vector<Rational>& v, Rational* value = nullptr);

 private:
  int M_;
  std::vector<Integer> phi_;  // monic, ascending coefficients
};

// Finite model: A = (Z[sqrt d] / N)^x, H = (Z/N)^x, and a subgroup Gamma
// generated by reductions of global units away from N.
struct FiniteTorusModel {
  long long N = 1, d = 1;
  std::vector<std::pair<long long, long long>> elements;  // (x, y) for x + y sqrt d
  std::vector<int> index;                                 // x * N + y -> element id, -1 if not a unit
  std::vector<int> basis;                                 // element ids
  std::vector<int> orders;                                // relative orders n_i
  std::vector<std::vector<int>> relations;                // g_i^{n_i} = prod_{j<i} g_j^{r_ij}
  std::vector<std::vector<int>> coords;                   // element id -> exponents
  int exponent = 1;
  std::vector<std::vector<int>> characters;               // c_i with chi(g_i) = zeta_M^{c_i}
  std::vector<int> H, gamma_gens, gamma_H;                // subgroups (ids)
  std::vector<int> coset;                                 // element id -> H-coset id
  int coset_count = 0;

  static FiniteTorusModel build(long long N, long long d, std::mt19937_64& rng, int gamma_generators = 2);
  int mul(int a, int b) const;
  int size() const { return static_cast<int>(elements.size()); }
  // Exponent of zeta_M in chi(a).
  int pairing(int chi, int a) const;
  bool check_consistency() const;
};

// f on A/H as values per coset id.
using QuotientFn = std::vector<Rational>;

// Phi on A with sum_{h in H} Phi(a h) = f(a H); pullback / |H| or a coset section.
std::vector<Rational> match_test_function(const FiniteTorusModel& m, const QuotientFn& f, bool section = false);
std::vector<Rational> average_over_H(const FiniteTorusModel& m, const std::vector<Rational>& phi);

struct PoissonSides {
  Rational geom;
  std::vector<Rational> spec;  // element of Q(zeta_M)
  bool equal = false;
};

PoissonSides finite_poisson(const FiniteTorusModel& m, const QuotientFn& f, bool section = false);

}  // namespace rtf
