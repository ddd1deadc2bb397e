#include "rtf/symspace.hpp"

namespace rtf {

Mat2Q identity_q() { return {1, 0, 0, 1}; }
Mat2Q weyl_element() { return {0, 1, -1, 0}; }
Mat2Q unipotent_q(const Rational& u) { return {1, u, 0, 1}; }
Mat2Q diag_q(const Rational& t) {
  if (t == 0) throw DomainError("diag(0)");
  return {t, 0, 0, 1 / t};
}

Mat2Q inverse_exact(const Mat2Q& g) {
  Rational dt = g.det();
  if (dt == 0) throw SingularInput("singular rational matrix");
  return {g.d / dt, -g.b / dt, -g.c / dt, g.a / dt};
}

Mat2R to_real(const Mat2Q& g) { return {to_double(g.a), to_double(g.b), to_double(g.c), to_double(g.d)}; }

Mat2E identity_e(const QuadAlg& E) {
  return {QuadElem(E, 1), QuadElem(E, 0), QuadElem(E, 0), QuadElem(E, 1)};
}

Mat2E embed(const Mat2Q& g, const QuadAlg& E) {
  return {QuadElem(E, g.a), QuadElem(E, g.b), QuadElem(E, g.c), QuadElem(E, g.d)};
}

Mat2E theta(const Mat2E& g) { return {g.a.conj(), g.b.conj(), g.c.conj(), g.d.conj()}; }

QuadElem sqrt_tau(const QuadAlg& E) { return QuadElem(E, 0, 1); }

std::string to_string(const Mat2E& g) {
  return "[[" + g.a.str() + ", " + g.b.str() + "], [" + g.c.str() + ", " + g.d.str() + "]]";
}

XPoint::XPoint(const QuadAlg& field, const QuadElem& a_, const Rational& b_, const Rational& c_)
    : E(field), a(a_), b(b_), c(c_) {
  if (E.is_split()) throw DomainError("the symmetric space needs E to be a field");
  if (!(a.alg == E)) throw DomainError("coordinate a lies in a different algebra");
  if (a.norm() - b * c * Rational(E.core) != 1) throw DomainError("point violates a*conj(a) - b*c*tau = 1");
}

XPoint XPoint::from_alpha_z(const QuadAlg& field, const Rational& alpha, const Mat2Q& Z) {
  if (Z.a + Z.d != 0) throw DomainError("Z must have trace zero");
  return XPoint(field, QuadElem(field, alpha, Z.a), Z.b, Z.c);
}

XPoint XPoint::from_matrix(const QuadAlg& field, const Mat2E& m) {
  if (!(m.d == m.a.conj())) throw DomainError("matrix is not in X: d != conj(a)");
  if (m.b.x != 0 || m.c.x != 0) throw DomainError("matrix is not in X: off-diagonal not in sqrt(tau) Q");
  return XPoint(field, m.a, m.b.y, m.c.y);
}

XPoint XPoint::identity(const QuadAlg& field) { return XPoint(field, QuadElem(field, 1), 0, 0); }

Mat2E XPoint::matrix() const { return {a, QuadElem(E, 0, b), QuadElem(E, 0, c), a.conj()}; }

XPoint XPoint::conjugate(const Mat2Q& g) const {
  Mat2Q Zc = g * z() * inverse_exact(g);
  return from_alpha_z(E, alpha(), Zc);
}

XPoint XPoint::twisted_action(const Mat2E& gamma) const {
  return from_matrix(E, gamma * matrix() * theta(gamma).inverse());
}

std::string XPoint::str() const {
  return "X(a=" + a.str() + ", b=" + b.str() + ", c=" + c.str() + ")";
}

RPoint RPoint::conjugate(const Mat2R& g) const {
  Mat2R Z{beta, b, c, -beta};
  Mat2R r = g * Z * g.inverse();
  return {alpha, r.a, r.b, r.c};
}

RPoint RPoint::from(const XPoint& x) {
  return {to_double(x.a.x), to_double(x.a.y), to_double(x.b), to_double(x.c)};
}

Mat2E SlicePoint::matrix() const {
  return {QuadElem(E, 0, a), QuadElem(E, 0, b), QuadElem(E, 0, c), QuadElem(E, 0, -a)};
}

SlicePoint SlicePoint::adjoint(const Mat2Q& g) const {
  Mat2Q r = g * Mat2Q{a, b, c, -a} * inverse_exact(g);
  return {E, r.a, r.b, r.c};
}

Rational chi(const XPoint& x) { return x.alpha(); }

std::string to_string(DatumClass c) {
  switch (c) {
    case DatumClass::elliptic: return "elliptic";
    case DatumClass::rss_nonelliptic: return "rss-nonelliptic";
    case DatumClass::unipotent_plus: return "unipotent-plus";
    case DatumClass::unipotent_minus: return "unipotent-minus";
  }
  return "?";
}

GeomDatum classify(const Rational& t0, const QuadAlg& E) {
  if (t0 == 1) return {t0, DatumClass::unipotent_plus, QuadAlg(1)};
  if (t0 == -1) return {t0, DatumClass::unipotent_minus, QuadAlg(1)};
  Rational d = t0 * t0 - 1;
  QuadAlg spl(is_square(d) ? 1 : squarefree_part(d));
  return {t0, spl == E ? DatumClass::rss_nonelliptic : DatumClass::elliptic, spl};
}

QuadAlg reflect(const QuadAlg& L, const QuadAlg& E) { return QuadAlg(squarefree_part(L.core * E.core)); }

QuadAlg descendant(const GeomDatum& d, const QuadAlg& E) {
  if (d.cls == DatumClass::unipotent_plus || d.cls == DatumClass::unipotent_minus)
    throw DomainError("descendant is undefined for unipotent data");
  return reflect(d.spl, E);
}

int cayley_sign(const Rational& t0) {
  if (t0 == 1) return -1;
  if (t0 == -1) return 1;
  return 1;
}

XPoint cayley(int eps, const SlicePoint& Y) {
  if (eps != 1 && eps != -1) throw DomainError("cayley sign must be +-1");
  const QuadAlg& E = Y.E;
  if (1 - Y.minus_det() == 0) throw SingularInput("cayley: det(1 - Y) = 0");
  Mat2E one = identity_e(E), y = Y.matrix();
  Mat2E m = ((one + y) * (one - y).inverse()).scaled(QuadElem(E, -eps));
  return XPoint::from_matrix(E, m);
}

SlicePoint cayley_inv(int eps, const XPoint& x) {
  if (eps != 1 && eps != -1) throw DomainError("cayley sign must be +-1");
  const QuadAlg& E = x.E;
  if (x.alpha() == eps) throw SingularInput("cayley_inv: det(eps - x) = 0");
  Mat2E e = identity_e(E).scaled(QuadElem(E, eps)), m = x.matrix();
  Mat2E r = ((e + m) * (e - m).inverse()).scaled(QuadElem(E, -1));
  if (r.a.x != 0 || r.b.x != 0 || r.c.x != 0 || !(r.d == -r.a))
    throw DomainError("cayley_inv: image is not in the slice");
  return {E, r.a.y, r.b.y, r.c.y};
}

Rational scalar_cayley(int eps, const Rational& minus_det) {
  if (minus_det == 1) throw SingularInput("scalar cayley at 1");
  return Rational(-eps) * (1 + minus_det) / (1 - minus_det);
}

Rational cayley_unipotent_scale(int eps, const QuadElem& x) {
  QuadElem e(x.alg, eps);
  Rational n = (e - x).norm();
  if (n == 0) throw SingularInput("cayley scale: x = eps");
  return Rational(-2 * eps) / n;
}

Rational adelic_abs(const Rational& q) {
  if (q == 0) throw DomainError("adelic absolute value of zero");
  Rational r = abs(q);
  for (long long p : prime_divisors(q)) r *= padic_abs(q, p);
  return r;
}

QuadElem hilbert90(const QuadElem& x) {
  if (x.norm() != 1) throw DomainError("hilbert90 expects a norm-one element");
  const QuadAlg& E = x.alg;
  if (x == QuadElem(E, 1)) return QuadElem(E, 1);
  if (x == QuadElem(E, -1)) return sqrt_tau(E);
  return QuadElem(E, 1) + x;
}

LeviRetraction levi_retract(const XPoint& eta) {
  if (eta.c != 0) throw DomainError("levi_retract needs a lower-left entry equal to zero");
  const QuadAlg& E = eta.E;
  QuadElem x = eta.a;
  QuadElem y = hilbert90(x);
  LeviRetraction r;
  r.y = y;
  r.eta_m = XPoint(E, x, 0, 0);
  r.eta_n = r.eta_m.matrix().inverse() * eta.matrix();
  r.gamma = {y, QuadElem(E, 0), QuadElem(E, 0), y.inverse()};
  r.n1 = identity_e(E);
  r.n1.b = QuadElem(E, 0, eta.b / (2 * y.norm()));
  return r;
}

XPoint unipotent_rep(const QuadAlg& E, const Rational& b) {
  if (b == 0) throw DomainError("unipotent representative needs b != 0");
  return XPoint(E, QuadElem(E, 1), b, 0);
}

long long square_class(const Rational& b) {
  if (b == 0) throw DomainError("square class of zero");
  return squarefree_part(b);
}

}  // namespace rtf
