#include "rtf/linefn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

namespace rtf {

namespace {

Integer ipow(long long p, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

long long llpow(long long p, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

long long residue(const Rational& b, long long p, int k) {
  if (k <= 0) return 0;
  if (b == 0) return 0;
  if (valuation(b, p) < 0) throw DomainError("residue of a non-integral element");
  Integer mod = ipow(p, k), n = numer(b) % mod, d = denom(b) % mod, inv;
  if (n < 0) n += mod;
  if (d < 0) d += mod;
  mpz_invert(inv.backend().data(), d.backend().data(), mod.backend().data());
  Integer r = (n * inv) % mod;
  return to_ll(r);
}

template <class V>
V PadicTable<V>::at(const Rational& b) const {
  if (b == 0) return values[0];
  int v = valuation(b, p);
  if (v < lo) return V(0);
  return values[residue(b * rpow(p, -lo), p, hi - lo)];
}

template <class V>
PadicTable<V> PadicTable<V>::refined(int new_lo, int new_hi) const {
  if (new_lo > lo || new_hi < hi) throw DomainError("refined: target grid is coarser");
  PadicTable r;
  r.p = p;
  r.lo = new_lo;
  r.hi = new_hi;
  const long long n = llpow(p, new_hi - new_lo);
  r.values.assign(n, V(0));
  const Rational step = rpow(p, new_lo);
  for (long long m = 0; m < n; ++m) r.values[m] = at(Rational(m) * step);
  return r;
}

template struct PadicTable<Rational>;
template struct PadicTable<std::complex<double>>;

FiniteLine indicator_line(long long p, int lo) {
  FiniteLine g;
  g.p = p;
  g.lo = lo;
  g.hi = lo + 1;
  g.values.assign(p, Rational(1));
  return g;
}

Rational integral(const FiniteLine& g) {
  Rational s = 0;
  for (const auto& v : g.values) s += v;
  return s * rpow(g.p, -g.hi);
}

namespace {

std::pair<FiniteLine, FiniteLine> aligned(const FiniteLine& a, const FiniteLine& b) {
  if (a.p != b.p) throw DomainError("line functions over different primes");
  int lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
  return {a.refined(lo, hi), b.refined(lo, hi)};
}

}  // namespace

FiniteLine add(const FiniteLine& a, const FiniteLine& b) {
  auto [x, y] = aligned(a, b);
  for (size_t i = 0; i < x.values.size(); ++i) x.values[i] += y.values[i];
  return x;
}

FiniteLine scale(const FiniteLine& a, const Rational& c) {
  FiniteLine r = a;
  for (auto& v : r.values) v *= c;
  return r;
}

bool same_function(const FiniteLine& a, const FiniteLine& b) {
  auto [x, y] = aligned(a, b);
  return x.values == y.values;
}

FiniteSpectrum to_complex(const FiniteLine& g) {
  FiniteSpectrum r;
  r.p = g.p;
  r.lo = g.lo;
  r.hi = g.hi;
  r.values.clear();
  for (const auto& v : g.values) r.values.emplace_back(to_double(v), 0.0);
  return r;
}

FiniteSpectrum fourier_line(const FiniteSpectrum& g) {
  const long long P = g.size();
  std::vector<std::complex<double>> roots(P);
  for (long long k = 0; k < P; ++k) roots[k] = std::polar(1.0, -2 * M_PI * static_cast<double>(k) / P);
  FiniteSpectrum r;
  r.p = g.p;
  r.lo = -g.hi;
  r.hi = -g.lo;
  r.values.assign(P, {0, 0});
  const double w = to_double(rpow(g.p, -g.hi));
  for (long long m = 0; m < P; ++m) {
    std::complex<double> s = 0;
    for (long long n = 0; n < P; ++n)
      if (g.values[n] != 0.0) s += g.values[n] * roots[(n * m) % P];
    r.values[m] = w * s;
  }
  return r;
}

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

// Bisection against an absolute budget; boost's tolerance is relative and
// never settles on integrals that are nearly zero.
template <class F>
double absolute_gk(F& f, double a, double b, double whole, double whole_err, double budget, int depth, double* err) {
  if (whole_err <= budget || depth == 0) {
    *err += whole_err;
    return whole;
  }
  const double m = 0.5 * (a + b);
  double el = 0, er = 0;
  const double l = GK::integrate(f, a, m, 0, 0, &el), r = GK::integrate(f, m, b, 0, 0, &er);
  return absolute_gk(f, a, m, l, el, budget / 2, depth - 1, err) + absolute_gk(f, m, b, r, er, budget / 2, depth - 1, err);
}

template <class F>
double integrate_split(F f, double a, double b, int pieces, double tol, double* err) {
  double total = 0, e = 0;
  const double h = (b - a) / pieces;
  for (int i = 0; i < pieces; ++i) {
    double ei = 0;
    const double lo = a + i * h, hi = lo + h;
    const double v = GK::integrate(f, lo, hi, 0, 0, &ei);
    total += absolute_gk(f, lo, hi, v, ei, tol / pieces, 12, &e);
  }
  if (err) *err = e;
  return total;
}

}  // namespace

FourierValue fourier_real(const RealLine& g, double xi, double tol) {
  const double R = g.reach;
  const int pieces = std::max(1, static_cast<int>(std::ceil(4 * R * std::abs(xi))));
  double ec = 0, es = 0;
  double re = integrate_split([&](double b) { return g(b) * std::cos(2 * M_PI * b * xi); }, -R, R, pieces, tol, &ec);
  double im = integrate_split([&](double b) { return g(b) * std::sin(2 * M_PI * b * xi); }, -R, R, pieces, tol, &es);
  return {{re, im}, ec + es};
}

double integral(const RealLine& g, double tol, double* error) {
  return integrate_split([&](double b) { return g(b); }, -g.reach, g.reach, 8, tol, error);
}

FiniteLine derive_fx(const LocalTestFn& f, const Mat2Q& x, long long tau, const LineChart& chart) {
  const long long p = f.place;
  const Mat2Q xi = inverse_exact(x);
  // x^{-1} E12 x
  const Mat2Q M{xi.a * x.c, xi.a * x.d, xi.c * x.c, xi.c * x.d};
  const Mat2Q Mt = f.twist * M * inverse_exact(f.twist);
  int mu = 1 << 20;
  for (const Rational* q : {&Mt.a, &Mt.b, &Mt.c}) {
    Rational s = chart.scale * *q;
    if (s != 0) mu = std::min(mu, valuation(s, p));
  }
  FiniteLine g;
  g.p = p;
  g.lo = -mu;
  g.hi = g.lo + (f.kind == LocalTestFn::Kind::basic ? 1 : f.level);
  const long long n = llpow(p, g.hi - g.lo);
  g.values.assign(n, Rational(0));
  const Rational step = rpow(p, g.lo);
  for (long long k = 0; k < n; ++k) {
    const Rational b = chart.scale * Rational(k) * step;
    QPoint pt{chart.alpha0, b * M.a, b * M.b, b * M.c};
    g.values[k] = f.eval(pt, tau);
  }
  return g;
}

RealLine derive_fx(const LocalTestFn& f, const Mat2R& x, const LineChart& chart) {
  const Mat2R xi = x.inverse();
  const Mat2R M{xi.a * x.c, xi.a * x.d, xi.c * x.c, xi.c * x.d};
  const double sc = to_double(chart.scale), a0 = to_double(chart.alpha0);
  const double mmax = std::max({std::abs(M.a), std::abs(M.b), std::abs(M.c)});
  RealLine r;
  r.reach = f.support_box() / (std::abs(sc) * mmax);
  r.fn = [f, M, sc, a0](double b) { return f.eval(RPoint{a0, sc * b * M.a, sc * b * M.b, sc * b * M.c}); };
  return r;
}

std::vector<Mat2Q> compact_representatives(long long p, int e, CompactGroup group) {
  const long long q = llpow(p, e);
  std::vector<Mat2Q> out;
  for (long long a = 0; a < q; ++a)
    for (long long b = 0; b < q; ++b)
      for (long long c = 0; c < q; ++c)
        for (long long d = 0; d < q; ++d) {
          long long det = ((a * d - b * c) % q + q) % q;
          bool ok = group == CompactGroup::SL2 ? det == 1 % q : det % p != 0;
          if (ok) out.push_back({a, b, c, d});
        }
  return out;
}

FiniteLine kappa_average(const LocalTestFn& f, const QuadraticCharacter& kappa, long long tau,
                         CompactGroup group, const LineChart& chart) {
  const long long p = f.place;
  const bool twisted = group == CompactGroup::GL2 && kappa.ramified_at(p);
  const Mat2Q one{1, 0, 0, 1};
  if (f.is_basic()) {
    FiniteLine g = derive_fx(f, one, tau, chart);
    return twisted ? scale(g, 0) : g;
  }
  int e = f.effective_level();
  if (twisted) e = std::max(e, p == 2 ? 3 : 1);
  const auto reps = compact_representatives(p, e, group);
  std::vector<std::pair<FiniteLine, int>> parts;
  int lo = 1 << 20, hi = -(1 << 20);
  std::map<long long, int> char_cache;
  for (const auto& k : reps) {
    int sign = 1;
    if (twisted) {
      long long det = to_ll(numer(k.det()));
      long long key = ((det % 64) + 64) % 64 + 64 * ((det % p + p) % p);
      auto it = char_cache.find(key);
      if (it == char_cache.end()) it = char_cache.emplace(key, kappa.local(Rational(det), p)).first;
      sign = it->second;
    }
    FiniteLine g = derive_fx(f, k, tau, chart);
    lo = std::min(lo, g.lo);
    hi = std::max(hi, g.hi);
    parts.emplace_back(std::move(g), sign);
  }
  FiniteLine total;
  total.p = p;
  total.lo = lo;
  total.hi = hi;
  total.values.assign(llpow(p, hi - lo), Rational(0));
  for (const auto& [g, sign] : parts) {
    FiniteLine r = g.refined(lo, hi);
    for (size_t i = 0; i < r.values.size(); ++i) total.values[i] += sign * r.values[i];
  }
  return scale(total, Rational(1, reps.size()));
}

RealLine kappa_average_real(const LocalTestFn& f, const QuadraticCharacter& kappa, CompactGroup group,
                            const LineChart& chart, int nodes) {
  const double sc = to_double(chart.scale), a0 = to_double(chart.alpha0);
  const int refl = group == CompactGroup::GL2 ? (kappa.local(Rational(-1), kInfinity)) : 0;
  RealLine r;
  r.reach = std::sqrt(6.0) * f.support_box() / std::abs(sc);
  r.fn = [f, sc, a0, refl, nodes](double b) {
    double s = 0;
    for (int i = 0; i < nodes; ++i) {
      const double th = M_PI * i / nodes;
      const double co = std::cos(th), si = std::sin(th);
      // k^{-1} E12 k for k = rotation(th), then for rotation(th) diag(1, -1)
      const Mat2R k{co, -si, si, co};
      const Mat2R ki{co, si, -si, co};
      const Mat2R M{ki.a * k.c, ki.a * k.d, ki.c * k.c, ki.c * k.d};
      double v = f.eval(RPoint{a0, sc * b * M.a, sc * b * M.b, sc * b * M.c});
      if (refl != 0) {
        double w = f.eval(RPoint{a0, sc * b * M.a, -sc * b * M.b, -sc * b * M.c});
        v = 0.5 * (v + refl * w);
      }
      s += v;
    }
    return s / nodes;
  };
  return r;
}

PoissonResult poisson_check(const RealLine& g, double tail_tol, long long max_terms) {
  PoissonResult res;
  const long long R = static_cast<long long>(std::ceil(g.reach)) + 1;
  for (long long n = -R; n <= R; ++n) res.lhs += g(static_cast<double>(n));
  res.terms_lhs = 2 * R + 1;
  int quiet = 0;
  long long n = 0;
  for (; n <= max_terms && quiet < 6; ++n) {
    FourierValue v = fourier_real(g, static_cast<double>(n), tail_tol);
    double term = n == 0 ? v.value.real() : 2 * v.value.real();
    res.rhs += term;
    res.tail_bound = std::abs(v.value);
    quiet = std::abs(v.value) < tail_tol ? quiet + 1 : 0;
  }
  res.terms_rhs = 2 * n - 1;
  if (quiet < 6) throw AccuracyError("poisson_check: Fourier side did not decay", res.tail_bound);
  return res;
}

}  // namespace rtf
