#include "rtf/heights.hpp"
#include "rtf/padic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace rtf {

IwasawaReal iwasawa_real(const Mat2R& g, double tol) {
  if (std::abs(g.det() - 1) > tol) throw DomainError("iwasawa_real: determinant is not 1");
  IwasawaReal r;
  r.t = 1 / std::hypot(g.c, g.d);
  r.height = std::log(r.t);
  const double s = r.t * g.c, co = r.t * g.d;
  r.k = {co, -s, s, co};
  Mat2R gk = g * Mat2R{co, s, -s, co};
  r.u = gk.b * r.t;
  return r;
}

IwasawaPadic iwasawa_padic(const Mat2Q& g, long long p) {
  if (!is_prime(p)) throw DomainError("iwasawa_padic: not a prime");
  if (g.det() != 1) throw DomainError("iwasawa_padic: determinant is not 1");
  int m;
  if (g.c == 0) m = valuation(g.d, p);
  else if (g.d == 0) m = valuation(g.c, p);
  else m = std::min(valuation(g.c, p), valuation(g.d, p));
  IwasawaPadic r;
  r.p = p;
  r.log_units = m;
  r.height = m * std::log(static_cast<double>(p));
  r.t = rpow(p, -m);
  const Rational tc = r.t * g.c, td = r.t * g.d;
  if (td != 0 && valuation(td, p) == 0) r.k = {1 / td, 0, tc, td};
  else r.k = {0, -1 / tc, tc, td};
  r.u = (g * inverse_exact(r.k)).b * r.t;
  return r;
}

AdelicPoint AdelicPoint::left_multiply(const Mat2Q& g) const {
  AdelicPoint r = *this;
  r.infinity = to_real(g) * infinity;
  for (auto& [p, m] : r.finite) m = g * m;
  // Primes where g leaves K_p join the support.
  Integer den = 1;
  for (const Rational& e : {g.a, g.b, g.c, g.d}) den = lcm(den, denom(e));
  for (long long p : prime_divisors(Rational(den)))
    if (!r.finite.count(p)) r.finite[p] = g;
  return r;
}

double height_at(const AdelicPoint& x, Place v) {
  if (v == kInfinity) return iwasawa_real(x.infinity).height;
  auto it = x.finite.find(v);
  if (it == x.finite.end()) return 0;
  return iwasawa_padic(it->second, v).height;
}

double height_adelic(const AdelicPoint& x) {
  double h = height_at(x, kInfinity);
  for (const auto& [p, m] : x.finite) h += iwasawa_padic(m, p).height;
  return h;
}

double weight_v(const AdelicPoint& x) {
  // w x: w is rational, so it multiplies every component including the
  // unlisted ones, where it stays in K_p and contributes no height.
  const Mat2Q w = weyl_element();
  AdelicPoint wx = x;
  wx.infinity = to_real(w) * x.infinity;
  for (auto& [p, m] : wx.finite) m = w * m;
  return height_adelic(x) + height_adelic(wx);
}

namespace {

double log_abs_E(const QuadElem& z, Place v) {
  // log of the normalized absolute value on E_v, product over factors when split
  const QuadAlg& E = z.alg;
  if (z.is_zero()) return -INFINITY;
  if (v == kInfinity) {
    if (E.core < 0) return std::log(to_double(z.norm()));
    double s = std::sqrt(static_cast<double>(E.core));
    return std::log(std::abs(to_double(z.x) + s * to_double(z.y))) +
           std::log(std::abs(to_double(z.x) - s * to_double(z.y)));
  }
  const double lp = std::log(static_cast<double>(v));
  if (local_splitting(E, v) != Splitting::split) return -valuation(z.norm(), v) * lp;
  (void)lp;
  throw DomainError("log_abs_E: use component heights at split places");
}

}  // namespace

double height_over_E(const Mat2E& g, Place v) {
  const QuadAlg& E = g.a.alg;
  if (v == kInfinity) {
    if (E.core < 0) return -std::log(to_double(g.c.norm() + g.d.norm()));
    double s = std::sqrt(static_cast<double>(E.core)), h = 0;
    for (double sg : {1.0, -1.0}) {
      double c = to_double(g.c.x) + sg * s * to_double(g.c.y);
      double d = to_double(g.d.x) + sg * s * to_double(g.d.y);
      h -= std::log(std::hypot(c, d));
    }
    return h;
  }
  if (local_splitting(E, v) == Splitting::split) {
    const int prec = 40;
    PadicElem s = PadicElem::from_rational(Rational(E.core), v, prec).sqrt();
    double h = 0;
    for (int sg : {1, -1}) {
      auto comp = [&](const QuadElem& z) {
        PadicElem r = PadicElem::from_rational(z.x, v, prec) +
                      PadicElem::from_rational(z.y * sg, v, prec) * s;
        return r;
      };
      PadicElem c = comp(g.c), d = comp(g.d);
      int m = c.is_zero() ? d.valuation() : d.is_zero() ? c.valuation() : std::min(c.valuation(), d.valuation());
      h += m * std::log(static_cast<double>(v));
    }
    return h;
  }
  double lc = log_abs_E(g.c, v), ld = log_abs_E(g.d, v);
  return -std::max(lc, ld);
}

int psi_T_value(double X, double h_x, double h_wx, double T) {
  int r = 1;
  if (X + h_x - T > 0) --r;
  if (-X + h_wx - T > 0) --r;
  return r;
}

double psi_T_printed(double v, double T) { return -2 * v + 4 * T; }

double psi_T_direct(double v, double T) { return 2 * T - v; }

namespace {

// Bisection on a step function.  A cell is accepted when its endpoint values
// agree and its Gauss-Kronrod value matches the sum over its halves, after a
// few forced levels; cells holding a jump shrink to the width floor.
double gk15(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0);
}

double step_integral(const std::function<double(double)>& f, double a, double b, double whole, int level,
                     double budget_per_len, double min_width, double* error) {
  const double mid = 0.5 * (a + b);
  const double left = gk15(f, a, mid), right = gk15(f, mid, b);
  const double gap = std::abs(whole - left - right);
  const bool flat = f(a) == f(b) && f(a) == f(mid);
  if ((level >= 4 && flat && gap <= budget_per_len * (b - a)) || b - a < min_width) {
    *error += gap + (flat ? 0 : b - a);
    return left + right;
  }
  return step_integral(f, a, mid, left, level + 1, budget_per_len, min_width, error) +
         step_integral(f, mid, b, right, level + 1, budget_per_len, min_width, error);
}

}  // namespace

double psi_T_quadrature(double h_x, double h_wx, double T, double* error) {
  const double R = std::abs(T) + std::abs(h_x) + std::abs(h_wx) + 1;
  std::function<double(double)> f = [&](double X) { return static_cast<double>(psi_T_value(X, h_x, h_wx, T)); };
  double err = 0;
  const double val = step_integral(f, -R, R, gk15(f, -R, R), 0, 1e-14, 1e-13 * R, &err);
  if (error) *error = err;
  return val;
}

}  // namespace rtf
