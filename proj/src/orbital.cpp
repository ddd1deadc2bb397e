#include "rtf/orbital.hpp"
#include "rtf/padic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace rtf {

namespace {

long long llpow(long long p, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

const Mat2Q kOne{1, 0, 0, 1};

// int_K f(k^{-1} x k) dk for a finite-place function.
class CompactAverager {
 public:
  CompactAverager(const LocalTestFn& f, long long tau) : f_(f), tau_(tau) {
    if (!f.is_basic()) {
      for (const auto& k : compact_representatives(f.place, f.effective_level(), CompactGroup::SL2))
        pairs_.emplace_back(inverse_exact(k), k);
    }
  }
  Rational operator()(const QPoint& x) const {
    if (pairs_.empty()) return f_.eval(x, tau_);
    Rational s = 0;
    for (const auto& [ki, k] : pairs_) s += f_.eval(x.conjugate(ki, k), tau_);
    return s / static_cast<long long>(pairs_.size());
  }

 private:
  const LocalTestFn& f_;
  long long tau_;
  std::vector<std::pair<Mat2Q, Mat2Q>> pairs_;
};

Rational rational_sqrt(const Rational& q) {
  Integer n = sqrt(numer(q)), d = sqrt(denom(q));
  return Rational(n) / Rational(d);
}

}  // namespace

Rational orbit_discriminant(const QPoint& eta) { return eta.beta * eta.beta + eta.b * eta.c; }

Rational padic_sqrt_approx(const Rational& delta, long long p, int precision) {
  if (delta == 0) return 0;
  if (is_square(delta)) return rational_sqrt(delta);
  PadicElem e = PadicElem::from_rational(delta, p, precision);
  if (!e.is_square()) throw DomainError("delta is not a square in Q_p");
  return e.sqrt().representative();
}

Mat2Q split_conjugator(const QPoint& eta, const Rational& r) {
  const Rational &be = eta.beta, &b = eta.b, &c = eta.c;
  Rational v1x, v1y, v2x, v2y;
  if (b != 0) {
    v1x = b, v1y = r - be, v2x = b, v2y = -r - be;
  } else if (r == be) {
    v1x = 2 * be, v1y = c, v2x = 0, v2y = 1;
  } else {
    v1x = 0, v1y = 1, v2x = 2 * be, v2y = c;
  }
  Rational d = v1x * v2y - v1y * v2x;
  if (d == 0) throw SingularInput("split_conjugator: eigenvectors are dependent");
  return {v1x, v2x / d, v1y, v2y / d};
}

Rational SplitAtoms::total() const {
  Rational s = 0;
  for (const auto& [k, m] : mass) s += m;
  return s;
}

double SplitAtoms::weighted(long long p) const {
  double s = 0;
  for (const auto& [k, m] : mass) s += k * to_double(m);
  return s * std::log(static_cast<double>(p));
}

SplitAtoms split_integral_finite(const LocalTestFn& f, const Rational& t0, const Rational& r, const Rational& coef,
                                 long long tau, int depth) {
  const long long p = f.place;
  if (coef == 0) throw DomainError("split integral with zero coefficient");
  const int K = depth / 2;
  const int vc = valuation(2 * coef, p);
  const int R = K + std::max(0, vc);
  const int L = K + std::max(0, -vc) + (f.effective_level() - 1);
  CompactAverager avg(f, tau);
  SplitAtoms out;
  out.depth = depth;
  const long long n_max = llpow(p, R + L);
  const Rational step = rpow(p, -R), w = rpow(p, -L);
  for (long long n = 0; n < n_max; ++n) {
    const Rational u = Rational(n) * step;
    QPoint pt{t0, r, 2 * coef * u, 0};
    Rational v = avg(pt);
    if (v == 0) continue;
    int key = u == 0 ? 0 : std::min(0, valuation(u, p));
    out.mass[key] += v * w;
  }
  return out;
}

SplitAtoms split_integral_finite_stable(const LocalTestFn& f, const Rational& t0, const Rational& r,
                                        const Rational& coef, long long tau, int depth) {
  SplitAtoms a = split_integral_finite(f, t0, r, coef, tau, depth);
  SplitAtoms b = split_integral_finite(f, t0, r, coef, tau, depth + 2);
  auto strip = [](std::map<int, Rational> m) {
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
    return m;
  };
  a.stabilized = strip(a.mass) == strip(b.mass);
  return a;
}

Rational orbital_finite_at_depth(const LocalTestFn& f, const QPoint& eta, long long tau, int depth) {
  const long long p = f.place;
  if (depth < 0 || depth % 2) throw DomainError("orbital depth must be even and non-negative");
  const Rational delta = orbit_discriminant(eta);
  if (delta == 0) {
    if (eta.beta != 0 || eta.b != 0 || eta.c != 0) throw DomainError("orbital_local: eta is not semisimple");
    return f.eval(eta, tau);
  }
  PadicElem dp = PadicElem::from_rational(delta, p, 40);
  if (dp.is_square()) {
    const Rational r = padic_sqrt_approx(delta, p);
    return split_integral_finite(f, eta.alpha, r, r, tau, depth).total();
  }
  // Compact torus: vertices n(u p^j) diag(p^j, p^-j) K of the tree.
  const int K = depth / 2;
  CompactAverager avg(f, tau);
  Rational total = 0;
  for (int j = -K; j <= K; ++j) {
    const Rational pj = rpow(p, j), pmj = rpow(p, -j), step = rpow(p, -K);
    const long long count = llpow(p, K + j);
    for (long long n = 0; n < count; ++n) {
      const Rational u = Rational(n) * step;
      const Mat2Q g{pj, u, 0, pmj}, gi{pmj, -u, 0, pj};
      total += avg(eta.conjugate(gi, g));
    }
  }
  return total;
}

OrbitalResult orbital_local(const LocalTestFn& f, const QPoint& eta, long long tau, int depth) {
  OrbitalResult r;
  r.depth = depth;
  r.exact = orbital_finite_at_depth(f, eta, tau, depth);
  r.value = to_double(r.exact);
  r.exact_valid = true;
  const Rational delta = orbit_discriminant(eta);
  r.method = delta == 0 ? "point" : PadicElem::from_rational(delta, f.place, 40).is_square() ? "split" : "tree";
  if (delta != 0) r.stabilized = orbital_finite_at_depth(f, eta, tau, depth + 2) == r.exact;
  return r;
}

double weight_real(double u) { return -0.5 * std::log1p(u * u); }

std::function<double(double)> split_integrand_real(const LocalTestFn& f, double t0, double r, double coef, int nodes) {
  std::vector<Mat2R> rots;
  for (int i = 0; i < nodes; ++i) {
    const double th = M_PI * i / nodes, co = std::cos(th), si = std::sin(th);
    rots.push_back({co, si, -si, co});  // k^{-1}
  }
  return [f, t0, r, coef, rots](double u) {
    const RPoint pt{t0, r, 2 * coef * u, 0};
    double s = 0;
    for (const auto& ki : rots) s += f.eval(pt.conjugate(ki));
    return s / static_cast<double>(rots.size());
  };
}

double split_reach_real(const LocalTestFn& f, double coef) {
  return std::sqrt(6.0) * f.support_box() / (2 * std::abs(coef));
}

RealIntegral split_integral_real(const LocalTestFn& f, double t0, double r, double coef,
                                 const std::function<double(double)>& weight, double tol) {
  auto g = split_integrand_real(f, t0, r, coef);
  const double U = split_reach_real(f, coef);
  auto h = [&](double u) { return weight ? g(u) * weight(u) : g(u); };
  RealIntegral out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(h, -U, U, 20, tol, &out.error);
  return out;
}

RealIntegral orbital_real(const LocalTestFn& f, const RPoint& eta, double tol) {
  const double delta = eta.beta * eta.beta + eta.b * eta.c;
  RealIntegral out;
  if (delta == 0) {
    if (eta.beta != 0 || eta.b != 0 || eta.c != 0) throw DomainError("orbital_real: eta is not semisimple");
    out.value = f.eval(eta);
    return out;
  }
  if (delta > 0) {
    const double r = std::sqrt(delta);
    return split_integral_real(f, eta.alpha, r, r, nullptr, tol);
  }
  // Compact torus: conjugate to a multiple of [[0, 1], [-1, 0]], integrate over A N.
  const double s = (eta.c > 0 ? -1 : 1) * std::sqrt(-delta);
  const double box = f.support_box(), as = std::abs(s);
  if (as > box) return out;
  const double tau_lo = 0.5 * std::log(as / box), tau_hi = 0.5 * std::log(box / as);
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double inner_err = 0;
  auto outer = [&](double lt) {
    const double t2 = std::exp(2 * lt), m12 = s / t2, m21 = -s * t2;
    const double U = box / (as * t2);
    auto inner = [&](double u) {
      const RPoint pt{eta.alpha, -u * m21, m12 - u * u * m21, m21};
      return f.eval(pt);
    };
    double e = 0;
    double v = GK::integrate(inner, -U, U, 15, tol, &e);
    inner_err = std::max(inner_err, e);
    return v * t2;
  };
  out.value = GK::integrate(outer, tau_lo, tau_hi, 15, tol, &out.error);
  out.error += inner_err * (tau_hi - tau_lo);
  return out;
}

}  // namespace rtf
