#pragma once

#include "rtf/arith.hpp"

#include <string>
#include <vector>

namespace rtf {

template <class T>
struct Mat2 {
  T a, b, c, d;  // [[a, b], [c, d]]

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 scaled(const T& s) const { return {s * a, s * b, s * c, s * d}; }
  Mat2 inverse() const {
    T dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

using Mat2Q = Mat2<Rational>;
using Mat2E = Mat2<QuadElem>;
using Mat2R = Mat2<double>;

Mat2Q identity_q();
Mat2Q weyl_element();  // [[0, 1], [-1, 0]]
Mat2Q unipotent_q(const Rational& u);
Mat2Q diag_q(const Rational& t);  // diag(t, 1/t)
Mat2Q inverse_exact(const Mat2Q& g);
Mat2R to_real(const Mat2Q& g);

Mat2E identity_e(const QuadAlg& E);
Mat2E embed(const Mat2Q& g, const QuadAlg& E);
// Entrywise Galois conjugation.
Mat2E theta(const Mat2E& g);
// Scalar sqrt(tau) in E.
QuadElem sqrt_tau(const QuadAlg& E);
std::string to_string(const Mat2E& g);

// Rational point of X: [[a, b*sqrt(tau)], [c*sqrt(tau), conj(a)]] with
// a*conj(a) - b*c*tau = 1.  Equivalently alpha*1 + sqrt(tau)*Z with
// alpha = Re(a) and Z = [[Im(a), b], [c, -Im(a)]] trace zero.
struct XPoint {
  QuadAlg E;
  QuadElem a;
  Rational b, c;

  XPoint() = default;
  XPoint(const QuadAlg& field, const QuadElem& a_, const Rational& b_, const Rational& c_);
  static XPoint from_alpha_z(const QuadAlg& field, const Rational& alpha, const Mat2Q& Z);
  static XPoint from_matrix(const QuadAlg& field, const Mat2E& m);
  static XPoint identity(const QuadAlg& field);

  Rational alpha() const { return a.x; }
  Mat2Q z() const { return {a.y, b, c, -a.y}; }
  Mat2E matrix() const;

  // g x g^{-1} for g in GL2(Q).
  XPoint conjugate(const Mat2Q& g) const;
  // gamma * x * theta(gamma)^{-1} for gamma in SL2(E) (or GL2(E)).
  XPoint twisted_action(const Mat2E& gamma) const;

  bool operator==(const XPoint& o) const { return a == o.a && b == o.b && c == o.c; }
  std::string str() const;
};

// Same coordinates over R.
struct RPoint {
  double alpha = 1, beta = 0, b = 0, c = 0;

  RPoint conjugate(const Mat2R& g) const;
  static RPoint from(const XPoint& x);
};

struct SlicePoint {
  QuadAlg E;
  Rational a, b, c;  // sqrt(tau) * [[a, b], [c, -a]]

  Mat2E matrix() const;
  // -det of the slice matrix: tau (a^2 + b c).
  Rational minus_det() const { return Rational(E.core) * (a * a + b * c); }
  SlicePoint adjoint(const Mat2Q& g) const;
  bool operator==(const SlicePoint& o) const { return a == o.a && b == o.b && c == o.c; }
};

Rational chi(const XPoint& x);

enum class DatumClass { elliptic, rss_nonelliptic, unipotent_plus, unipotent_minus };
std::string to_string(DatumClass c);

struct GeomDatum {
  Rational t0;
  DatumClass cls;
  QuadAlg spl;
};

GeomDatum classify(const Rational& t0, const QuadAlg& E);
QuadAlg reflect(const QuadAlg& L, const QuadAlg& E);
QuadAlg descendant(const GeomDatum& d, const QuadAlg& E);
// Cayley sign used for a datum: -1 at chi = 1, +1 at chi = -1, else 1.
int cayley_sign(const Rational& t0);

XPoint cayley(int eps, const SlicePoint& Y);
SlicePoint cayley_inv(int eps, const XPoint& x);
// Scalar map through which chi and -det correspond.
Rational scalar_cayley(int eps, const Rational& minus_det);

// For eta = diag(x, conj x) with x*conj(x) = 1: the map a -> cayley_inv of
// eta * [[1, sqrt(tau) a / x], [0, 1]] is sqrt(tau)(zeta + N(a)) with N
// upper triangular, N_12 = scale * a.
Rational cayley_unipotent_scale(int eps, const QuadElem& x);
// Product over all places of |scale|_v, computed place by place.
Rational adelic_abs(const Rational& q);

struct LeviRetraction {
  XPoint eta_m;   // diag(x, conj x)
  Mat2E eta_n;    // eta_m^{-1} eta
  Mat2E n1;       // [[1, sqrt(tau) a / (2 y conj y)], [0, 1]]
  Mat2E gamma;    // diag(y, 1/y)
  QuadElem y;     // x = y / conj(y)
};

// Hilbert-90 choice of y with y / conj(y) = x.
QuadElem hilbert90(const QuadElem& x);
LeviRetraction levi_retract(const XPoint& eta);

XPoint unipotent_rep(const QuadAlg& E, const Rational& b);
long long square_class(const Rational& b);

}  // namespace rtf
