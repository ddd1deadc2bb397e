#include "rtf/kernel.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace rtf {

namespace {

int min_valuation(const Mat2Q& g, long long p) {
  int v = 0;
  for (const Rational& e : {g.a, g.b, g.c, g.d})
    if (e != 0) v = std::min(v, valuation(e, p));
  return v;
}

double frobenius(const Mat2R& m) { return std::sqrt(m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d); }

// a d - b c = 1 with bottom row (c, d), gcd(c, d) = 1.
Mat2Q completion(long long c, long long d) {
  long long old_r = d, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long long q = old_r / r;
    old_r -= q * r, std::swap(old_r, r);
    old_s -= q * s, std::swap(old_s, s);
    old_t -= q * t, std::swap(old_t, t);
  }
  // old_s * d + old_t * c = old_r = +-1
  long long a = old_s * old_r, b = -old_t * old_r;
  return {Rational(a), Rational(b), Rational(c), Rational(d)};
}

}  // namespace

double eval_conjugated(const GlobalTestFn& f, const QPoint& eta, const AdelicPoint& x) {
  const long long tau = f.E.core;
  const RPoint re{to_double(eta.alpha), to_double(eta.beta), to_double(eta.b), to_double(eta.c)};
  double val = f.at_infinity().eval(re.conjugate(x.infinity.inverse()));
  if (val == 0) return 0;
  std::set<long long> places;
  for (const auto& [v, g] : f.local)
    if (v != kInfinity) places.insert(v);
  for (const auto& [p, g] : x.finite) places.insert(p);
  for (const Rational* r : {&eta.alpha, &eta.beta, &eta.b, &eta.c})
    for (long long p : prime_divisors(Rational(denom(*r)))) places.insert(p);
  for (long long p : places) {
    auto it = x.finite.find(p);
    const QPoint q = it == x.finite.end() ? eta : eta.conjugate(inverse_exact(it->second), it->second);
    const Rational lv = f.at(p).eval(q, tau);
    if (lv == 0) return 0;
    val *= to_double(lv);
  }
  return val;
}

NilpotentBounds nilpotent_bounds(const GlobalTestFn& f, const AdelicPoint& x) {
  std::set<long long> places{2};
  for (const auto& [v, g] : f.local)
    if (v != kInfinity) places.insert(v);
  for (const auto& [p, g] : x.finite) places.insert(p);
  NilpotentBounds nb;
  for (long long p : places) {
    int k = 1;
    auto it = x.finite.find(p);
    if (it != x.finite.end()) k += -min_valuation(it->second, p) - min_valuation(inverse_exact(it->second), p);
    const LocalTestFn fp = f.at(p);
    k += -min_valuation(fp.twist, p) - min_valuation(inverse_exact(fp.twist), p);
    for (int i = 0; i < k; ++i) nb.denominator *= p;
  }
  nb.box = f.at_infinity().support_box() * frobenius(x.infinity) * frobenius(x.infinity.inverse());
  return nb;
}

KernelComparison unipotent_kernel_check(const GlobalTestFn& f, const AdelicPoint& x) {
  KernelComparison out;
  out.bounds = nilpotent_bounds(f, x);
  const long long D = out.bounds.denominator;
  const long long n_max = static_cast<long long>(std::floor(out.bounds.box * D));
  const Rational one_over_D = Rational(1) / D;

  // Lattice enumeration of beta^2 + b c = 0.
  for (long long i = -n_max; i <= n_max; ++i) {
    for (long long j = -n_max; j <= n_max; ++j) {
      const long long prod = -i * j;
      if (prod < 0) continue;
      const long long k = std::llround(std::sqrt(static_cast<double>(prod)));
      if (k * k != prod || k > n_max) continue;
      for (long long kk : {k, -k}) {
        out.direct += eval_conjugated(f, {1, kk * one_over_D, i * one_over_D, j * one_over_D}, x);
        ++out.terms_direct;
        if (k == 0) break;
      }
    }
  }

  // f(1) + sum over delta in B'(Q)\SL2(Q) and b in Q^x of the conjugated plus line.
  out.unfolded = eval_conjugated(f, {1, 0, 0, 0}, x);
  ++out.terms_unfolded;
  const LineChart chart = LineChart::plus();
  const long long r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(n_max))));
  for (long long d = 0; d <= r; ++d) {
    for (long long c = -r; c <= r; ++c) {
      if (std::gcd(c, d) != 1 || (d == 0 && c != 1)) continue;
      const long long m = std::max({c * c, d * d, std::llabs(c * d)});
      const Mat2Q delta = completion(c, d), delta_inv = inverse_exact(delta);
      for (long long n = -n_max / m; n <= n_max / m; ++n) {
        if (n == 0) continue;
        const QPoint eta = chart.point(Rational(n, 2 * D)).conjugate(delta_inv, delta);
        out.unfolded += eval_conjugated(f, eta, x);
        ++out.terms_unfolded;
      }
    }
  }
  return out;
}

}  // namespace rtf
