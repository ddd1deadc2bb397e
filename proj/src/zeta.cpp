#include "rtf/zeta.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bernoulli.hpp>

#include <cmath>
#include <set>

namespace rtf {

namespace {

long long llpow(long long p, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

// Unit-average of g(p^j u) kappa(p^j u) over Z_p^x.
Rational unit_average(const FiniteLine& g, const QuadraticCharacter& kappa, int j) {
  const long long p = g.p;
  const bool ram = kappa.ramified_at(p);
  const int e = std::max({g.hi - j, ram ? (p == 2 ? 3 : 1) : 0, 1});
  const long long q = llpow(p, e);
  const int kp = kappa.local(Rational(p), p);
  int kpj = 1;
  for (int i = 0; i < std::abs(j); ++i) kpj *= kp;
  const Rational pj = rpow(p, j);
  std::map<long long, int> cache;
  const long long cmod = p == 2 ? 8 : p;
  Rational s = 0;
  long long count = 0;
  for (long long u = 1; u < q; ++u) {
    if (u % p == 0) continue;
    ++count;
    Rational gv = g.at(pj * u);
    if (gv == 0) continue;
    int ku = 1;
    if (ram) {
      auto it = cache.find(u % cmod);
      if (it == cache.end()) it = cache.emplace(u % cmod, kappa.local(Rational(u), p)).first;
      ku = it->second;
    }
    s += gv * (kpj * ku);
  }
  return s / count;
}

struct LocalTerms {
  std::vector<std::pair<int, Rational>> body;  // (j, U_j)
  Rational g0;
  int hi;
  int kp;       // kappa(p) when unramified
  bool tail;    // tail present
};

LocalTerms local_terms(const FiniteLine& g, const QuadraticCharacter& kappa) {
  LocalTerms t;
  for (int j = g.lo; j < g.hi; ++j) t.body.emplace_back(j, unit_average(g, kappa, j));
  t.g0 = g.at_zero();
  t.hi = g.hi;
  t.tail = !kappa.ramified_at(g.p) && t.g0 != 0;
  t.kp = kappa.ramified_at(g.p) ? 0 : kappa.at_prime(g.p);
  return t;
}

}  // namespace

Rational tate_zeta_local_exact(const FiniteLine& g, const QuadraticCharacter& kappa, int s) {
  LocalTerms t = local_terms(g, kappa);
  if (t.tail && s <= 0) throw DomainError("local zeta integral diverges for s <= 0");
  Rational z = 0;
  for (const auto& [j, u] : t.body) z += rpow(g.p, -j * s) * u;
  if (t.tail) {
    Rational q = Rational(t.kp) * rpow(g.p, -s);
    Rational qh = 1;
    for (int i = 0; i < std::abs(t.hi); ++i) qh *= t.hi >= 0 ? q : 1 / q;
    z += t.g0 * qh / (1 - q);
  }
  return z;
}

double tate_zeta_local(const FiniteLine& g, const QuadraticCharacter& kappa, double s) {
  LocalTerms t = local_terms(g, kappa);
  if (t.tail && s <= 0) throw DomainError("local zeta integral diverges for s <= 0");
  const double lp = std::log(static_cast<double>(g.p));
  double z = 0;
  for (const auto& [j, u] : t.body) z += std::exp(-j * s * lp) * to_double(u);
  if (t.tail) {
    double q = t.kp * std::exp(-s * lp);
    z += to_double(t.g0) * std::pow(q, t.hi) / (1 - q);
  }
  return z;
}

double tate_zeta_local_ds(const FiniteLine& g, const QuadraticCharacter& kappa, double s) {
  LocalTerms t = local_terms(g, kappa);
  if (t.tail && s <= 0) throw DomainError("local zeta integral diverges for s <= 0");
  const double lp = std::log(static_cast<double>(g.p));
  double z = 0;
  for (const auto& [j, u] : t.body) z += -j * lp * std::exp(-j * s * lp) * to_double(u);
  if (t.tail) {
    const double q = t.kp * std::exp(-s * lp), dq = -lp * q;
    const int h = t.hi;
    const double num = h * std::pow(q, h - 1) * (1 - q) + std::pow(q, h);
    z += to_double(t.g0) * num / ((1 - q) * (1 - q)) * dq;
  }
  return z;
}

namespace {

double half_line(const RealLine& g, const QuadraticCharacter& kappa, double s, bool with_log, double* error) {
  const int km = kappa.local(Rational(-1), kInfinity);
  auto f = [&](double t) {
    double v = (g(t) + km * g(-t)) * std::pow(t, s - 1);
    return with_log ? v * std::log(t) : v;
  };
  boost::math::quadrature::tanh_sinh<double> ts(12);
  double err = 0;
  double val = ts.integrate(f, 0.0, g.reach, 1e-11, &err);
  if (error) *error = err * std::max(1.0, std::abs(val));
  return val;
}

}  // namespace

double tate_zeta_real(const RealLine& g, const QuadraticCharacter& kappa, double s, double* error) {
  return half_line(g, kappa, s, false, error);
}

double tate_zeta_real_ds(const RealLine& g, const QuadraticCharacter& kappa, double s, double* error) {
  return half_line(g, kappa, s, true, error);
}

double hurwitz_regular(double s, double q) {
  if (!(q > 0)) throw DomainError("hurwitz_regular needs q > 0");
  const int N = 24, J = 10;
  double sum = 0;
  for (int k = 0; k < N; ++k) sum += std::pow(k + q, -s);
  const double x = N + q, L = std::log(x), y = (1 - s) * L;
  // ((x^{1-s} - 1) / (s - 1)
  double pole_part = std::abs(y) < 1e-8 ? -L * (1 + y / 2) : -L * std::expm1(y) / y;
  sum += pole_part + 0.5 * std::pow(x, -s);
  double poch = s, fact = 2;  // s(s+1)...(s+2j-2), (2j)!
  double xp = std::pow(x, -s - 1);
  for (int j = 1; j <= J; ++j) {
    sum += boost::math::bernoulli_b2n<double>(j) / fact * poch * xp;
    poch *= (s + 2 * j - 1) * (s + 2 * j);
    fact *= (2 * j + 1) * (2 * j + 2);
    xp /= x * x;
  }
  return sum;
}

double riemann_zeta(double s) {
  if (s == 1) throw DomainError("riemann_zeta pole at s = 1");
  return hurwitz_regular(s, 1) + 1 / (s - 1);
}

double dirichlet_L(double s, long long D) {
  if (D == 1 || !is_fundamental_discriminant(D)) throw DomainError("dirichlet_L needs a nontrivial fundamental discriminant");
  const long long m = std::llabs(D);
  double sum = 0;
  for (long long a = 1; a <= m; ++a) {
    int chi = kronecker(D, a);
    if (chi) sum += chi * hurwitz_regular(s, static_cast<double>(a) / m);
  }
  return std::pow(static_cast<double>(m), -s) * sum;
}

namespace {

std::map<long long, FiniteLine> full_finite(const GlobalLineData& h, const QuadraticCharacter& kappa) {
  std::map<long long, FiniteLine> out = h.finite;
  for (long long p : kappa.ramified_primes())
    if (!out.count(p)) out[p] = indicator_line(p, 0);
  return out;
}

double euler_correction(const std::map<long long, FiniteLine>& fin, const QuadraticCharacter& kappa, double s) {
  double c = 1;
  for (const auto& [p, g] : fin)
    if (!kappa.ramified_at(p)) c *= 1 - kappa.at_prime(p) * std::pow(static_cast<double>(p), -s);
  return c;
}

}  // namespace

ZetaValue tate_zeta_global(const GlobalLineData& h, const QuadraticCharacter& kappa, double s) {
  ZetaValue z;
  z.s = s;
  const auto fin = full_finite(h, kappa);
  double local = 1, err = 0;
  for (const auto& [p, g] : fin) local *= tate_zeta_local(g, kappa, s);
  local *= tate_zeta_real(h.infinity, kappa, s, &err);
  z.error = err;
  const double corr = euler_correction(fin, kappa, s);
  if (kappa.trivial()) {
    if (s == 1) {
      z.pole = true;
      z.value = INFINITY;
      z.residue = local * corr;
      return z;
    }
    z.value = local * corr * riemann_zeta(s);
  } else {
    z.value = local * corr * dirichlet_L(s, kappa.D);
  }
  return z;
}

double line_mass(const GlobalLineData& h, double* error) {
  double m = 1;
  for (const auto& [p, g] : h.finite) m *= to_double(integral(g));
  return m * integral(h.infinity, 1e-12, error);
}

namespace {

DerivativeResult richardson(const std::function<double(double)>& A, double h0, double tol) {
  std::vector<std::vector<double>> R;
  double h = h0;
  DerivativeResult best{0, INFINITY};
  for (int k = 0; k < 7; ++k, h /= 2) {
    R.push_back({A(h)});
    for (int m = 1; m <= k; ++m) {
      double f = std::pow(4.0, m);
      R[k].push_back(R[k][m - 1] + (R[k][m - 1] - R[k - 1][m - 1]) / (f - 1));
    }
    if (k > 0) {
      double e = std::abs(R[k][k] - R[k - 1][k - 1]);
      if (e < best.error) best = {R[k][k], e};
      if (e < tol) break;
    }
  }
  if (best.error > tol) throw AccuracyError("Richardson extrapolation did not reach tolerance", best.error);
  return best;
}

}  // namespace

DerivativeResult sderivative(const std::function<double(double)>& F, double h0, double tol) {
  auto D = [&](double s) { return s * F(s); };
  return richardson([&](double h) { return (D(h) - D(-h)) / (2 * h); }, h0, tol);
}

DerivativeResult removable_limit(const std::function<double(double)>& G, double h0, double tol) {
  return richardson([&](double h) { return 0.5 * (G(h) + G(-h)); }, h0, tol);
}

DerivativeResult zeta_sderivative(const GlobalLineData& h) {
  QuadraticCharacter one;
  return sderivative([&](double s) { return tate_zeta_global(h, one, 1 + s).value; });
}

double zeta_sderivative_laurent(const GlobalLineData& h) {
  QuadraticCharacter one;
  std::vector<double> a, da;
  for (const auto& [p, g] : h.finite) {
    a.push_back(tate_zeta_local(g, one, 1));
    da.push_back(tate_zeta_local_ds(g, one, 1));
    const double pp = 1.0 / p;
    a.push_back(1 - pp);
    da.push_back(std::log(static_cast<double>(p)) * pp);
  }
  a.push_back(tate_zeta_real(h.infinity, one, 1));
  da.push_back(tate_zeta_real_ds(h.infinity, one, 1));
  double A = 1, dA = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    double prod = da[i];
    for (size_t j = 0; j < a.size(); ++j)
      if (j != i) prod *= a[j];
    dA += prod;
    A *= a[i];
  }
  return dA + kEulerGamma * A;
}

}  // namespace rtf
