#pragma once

#include "rtf/arith.hpp"

#include <functional>
#include <string>
#include <vector>

namespace rtf {

using Vec = std::vector<Rational>;

Rational dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& a);

// Polyhedral cone in Q^n (n <= 2) given by generators; no generators means {0}.
class Cone {
 public:
  Cone() = default;
  Cone(int ambient_dim, std::vector<Vec> generators);

  static Cone origin(int n);
  static Cone whole(int n);

  int ambient_dim() const { return n_; }
  int dim() const;
  const std::vector<Vec>& generators() const { return gens_; }
  // Inequality description: the cone is {x : <v, x> >= 0 for all v}.
  const std::vector<Vec>& dual_generators() const { return dual_; }

  bool contains(const Vec& x) const;
  bool in_relative_interior(const Vec& x) const;
  bool contains(const Cone& other) const;
  bool same_set(const Cone& other) const { return contains(other) && other.contains(*this); }
  bool is_face_of(const Cone& C) const;

  // Every face, smallest dimension first, the cone itself last.
  std::vector<Cone> faces() const;
  Cone minimal_face() const;
  // Orthogonal projection onto the linear span.
  Vec project_to_span(const Vec& x) const;

  std::string str() const;

 private:
  int n_ = 1;
  std::vector<Vec> gens_;
  std::vector<Vec> dual_;
};

Cone dual_cone(const Cone& C);
// A(F, C) = span(F) + C.
Cone angle_cone(const Cone& F, const Cone& C);

using IndicatorFn = std::function<int(const Vec&)>;
using IndicatorDifferenceFn = std::function<int(const Vec&, const Vec&)>;

IndicatorFn rint_indicator(const Cone& C);

// A standard parabolic, recorded through the closure of its positive chamber.
struct ParabolicLabel {
  std::string tag;
  Cone closed_chamber;

  int split_rank() const { return closed_chamber.dim(); }
  // P is contained in Q iff the chamber of Q is a face of the chamber of P.
  bool contained_in(const ParabolicLabel& Q) const;
  Vec project(const Vec& H) const { return closed_chamber.project_to_span(H); }
  Vec coproject(const Vec& H) const { return H - project(H); }
};

// The rank-one standard parabolics of SL2 on a_0' = Q.
ParabolicLabel label_B();
ParabolicLabel label_G();
std::vector<ParabolicLabel> rank_one_labels();

int epsilon(const ParabolicLabel& P, const ParabolicLabel& Q);
IndicatorFn tau(const ParabolicLabel& P, const ParabolicLabel& Q);
IndicatorFn tau_hat(const ParabolicLabel& P, const ParabolicLabel& Q);
IndicatorFn sigma(const ParabolicLabel& P1, const ParabolicLabel& P2);
IndicatorDifferenceFn gamma(const ParabolicLabel& P, const ParabolicLabel& Q);

// Face-sum kernels in cone language.
int sigma_cone(const Cone& F, const Cone& C, const Vec& H);
int gamma_cone(const Cone& C, const Vec& H, const Vec& X);

}  // namespace rtf
