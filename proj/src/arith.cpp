#include "rtf/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>

namespace rtf {

Rational rat(long long n, long long d) {
  if (d == 0) throw DomainError("rational with zero denominator");
  return Rational(Integer(n), Integer(d));
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (d == 0) throw DomainError("rational with zero denominator: " + s);
    return Rational(n, d);
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational: " + s);
  }
}

std::string to_string(const Rational& q) { return q.str(); }
double to_double(const Rational& q) { return q.convert_to<double>(); }

long long to_ll(const Integer& z) {
  if (z > std::numeric_limits<long long>::max() || z < std::numeric_limits<long long>::min())
    throw DomainError("integer out of 64-bit range");
  return z.convert_to<long long>();
}

Integer numer(const Rational& q) { return boost::multiprecision::numerator(q); }
Integer denom(const Rational& q) { return boost::multiprecision::denominator(q); }

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<long long, int>> factorize(long long n) {
  if (n == 0) throw DomainError("factorize(0)");
  std::vector<std::pair<long long, int>> out;
  unsigned long long m = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : n;
  for (unsigned long long d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) out.emplace_back(static_cast<long long>(d), e);
  }
  if (m > 1) out.emplace_back(static_cast<long long>(m), 1);
  return out;
}

std::vector<long long> prime_divisors(const Rational& q) {
  if (q == 0) throw DomainError("prime_divisors(0)");
  std::set<long long> ps;
  for (auto [p, e] : factorize(to_ll(abs(numer(q))))) ps.insert(p);
  for (auto [p, e] : factorize(to_ll(denom(q)))) ps.insert(p);
  return {ps.begin(), ps.end()};
}

int valuation(const Integer& z, long long p) {
  if (z == 0) throw DomainError("valuation of zero");
  Integer m = abs(z);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& q, long long p) {
  if (q == 0) throw DomainError("valuation of zero");
  return valuation(numer(q), p) - valuation(denom(q), p);
}

Rational rpow(long long p, int k) {
  Integer r = 1;
  for (int i = 0; i < std::abs(k); ++i) r *= p;
  return k >= 0 ? Rational(r) : Rational(Integer(1), r);
}

Rational padic_abs(const Rational& q, long long p) {
  if (q == 0) return 0;
  return rpow(p, -valuation(q, p));
}

bool is_square(const Rational& q) {
  if (q < 0) return false;
  if (q == 0) return true;
  Integer n = numer(q), d = denom(q);
  Integer rn = sqrt(n), rd = sqrt(d);
  return rn * rn == n && rd * rd == d;
}

long long squarefree_part(long long n) {
  if (n == 0) throw DomainError("squarefree_part(0)");
  long long s = n < 0 ? -1 : 1;
  for (auto [p, e] : factorize(n))
    if (e % 2) s *= p;
  return s;
}

long long squarefree_part(const Rational& q) {
  if (q == 0) throw DomainError("squarefree_part(0)");
  Integer n = numer(q) * denom(q);
  long long s = n < 0 ? -1 : 1;
  Integer m = abs(n);
  for (long long d = 2; Integer(d) * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e % 2) s *= d;
  }
  if (m > 1) s *= to_ll(m);
  return s;
}

namespace {

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

int jacobi_odd(long long a, long long n) {
  // n odd positive
  a = mod(a, n);
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long r = n % 8;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  return n == 1 ? t : 0;
}

}  // namespace

int kronecker(long long D, long long n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    long long r = mod(D, 8);
    if (r == 3 || r == 5) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi_odd(D, n);
}

namespace {

// Unit part of num*den at p; same square class as the unit part of a.
Integer unit_part(const Rational& a, long long p) {
  Integer n = numer(a) * denom(a);
  while (n % p == 0) n /= p;
  return n;
}

int legendre(const Integer& u, long long p) {
  Integer r = u % p;
  if (r < 0) r += p;
  return kronecker(to_ll(r), p);
}

int mod8(const Integer& u) {
  Integer r = u % 8;
  if (r < 0) r += 8;
  return r.convert_to<int>();
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a == 0 || b == 0) throw DomainError("hilbert_symbol of zero");
  if (v == kInfinity) return (a < 0 && b < 0) ? -1 : 1;
  long long p = v;
  Integer u = unit_part(a, p), w = unit_part(b, p);
  int al = valuation(a, p) & 1;
  int be = valuation(b, p) & 1;
  if (p != 2) {
    int s = 1;
    if (al && be && (p % 4 == 3)) s = -s;
    if (be) s *= legendre(u, p);
    if (al) s *= legendre(w, p);
    return s;
  }
  int u8 = mod8(u), w8 = mod8(w);
  auto eps = [](int x) { return ((x - 1) / 2) % 2; };
  auto omega = [](int x) { return ((x * x - 1) / 8) % 2; };
  int e = eps(u8) * eps(w8) + al * omega(w8) + be * omega(u8);
  return (e % 2) ? -1 : 1;
}

std::string to_string(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
  }
  return "?";
}

QuadAlg::QuadAlg(long long c) : core(c) {
  if (c == 0) throw DomainError("quadratic algebra core must be nonzero");
  if (squarefree_part(c) != c) throw DomainError("quadratic algebra core must be squarefree");
}

long long QuadAlg::discriminant() const {
  if (core == 1) return 1;
  return mod(core, 4) == 1 ? core : 4 * core;
}

std::string QuadAlg::name() const {
  if (core == 1) return "split";
  return "Q(sqrt(" + std::to_string(core) + "))";
}

Splitting local_splitting(const QuadAlg& E, long long p) {
  if (E.is_split()) return Splitting::split;
  if (!is_prime(p)) throw DomainError("local_splitting expects a prime");
  long long D = E.discriminant();
  int k = kronecker(D, p);
  if (k == 0) return Splitting::ramified;
  return k == 1 ? Splitting::split : Splitting::inert;
}

Splitting local_splitting_at(const QuadAlg& E, Place v) {
  if (v == kInfinity) return E.core > 0 ? Splitting::split : Splitting::inert;
  return local_splitting(E, v);
}

std::pair<Rational, Rational> QuadElem::split_components() const {
  if (!alg.is_split()) throw DomainError("split_components on a field element");
  return {x + y, x - y};
}

QuadElem QuadElem::inverse() const {
  Rational n = norm();
  if (n == 0) throw SingularInput("inverse of a non-invertible quadratic element");
  return {alg, x / n, -y / n};
}

static void check_same(const QuadElem& a, const QuadElem& b) {
  if (!(a.alg == b.alg)) throw DomainError("quadratic elements from different algebras");
}

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
  check_same(a, b);
  return {a.alg, a.x + b.x, a.y + b.y};
}
QuadElem operator-(const QuadElem& a, const QuadElem& b) {
  check_same(a, b);
  return {a.alg, a.x - b.x, a.y - b.y};
}
QuadElem operator*(const QuadElem& a, const QuadElem& b) {
  check_same(a, b);
  Rational d(a.alg.core);
  return {a.alg, a.x * b.x + d * a.y * b.y, a.x * b.y + a.y * b.x};
}
QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * b.inverse(); }

std::string QuadElem::str() const {
  if (y == 0) return x.str();
  return x.str() + (y < 0 ? " - " : " + ") + Rational(abs(y)).str() + "*sqrt(" +
         std::to_string(alg.core) + ")";
}

bool is_fundamental_discriminant(long long D) {
  if (D == 1 || D == 0) return false;
  long long r = mod(D, 4);
  if (r == 1) return squarefree_part(D) == D;
  if (r != 0) return false;
  long long m = D / 4;
  long long rm = mod(m, 4);
  return (rm == 2 || rm == 3) && squarefree_part(m) == m;
}

QuadraticCharacter::QuadraticCharacter(long long disc) : D(disc) {
  if (disc != 1 && !is_fundamental_discriminant(disc))
    throw DomainError("not a fundamental discriminant: " + std::to_string(disc));
}

bool QuadraticCharacter::ramified_at(Place v) const {
  if (D == 1) return false;
  if (v == kInfinity) return D < 0;
  return D % v == 0;
}

int QuadraticCharacter::local(const Rational& t, Place v) const {
  if (D == 1) return 1;
  return hilbert_symbol(t, Rational(D), v);
}

int QuadraticCharacter::at_prime(long long p) const {
  if (ramified_at(p)) throw DomainError("kappa(p) requested at a ramified prime");
  return kronecker(D, p);
}

std::vector<long long> QuadraticCharacter::ramified_primes() const {
  std::vector<long long> out;
  if (D == 1) return out;
  for (auto [p, e] : factorize(D)) out.push_back(p);
  return out;
}

std::vector<long long> fundamental_discriminants_over(const std::vector<long long>& primes) {
  std::set<long long> ps(primes.begin(), primes.end());
  std::vector<long long> odd;
  for (long long p : ps)
    if (p != 2) odd.push_back(p);
  std::set<long long> out;
  const size_t n = odd.size();
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    long long m = 1;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t{1} << i)) m *= odd[i];
    for (long long sgn : {1LL, -1LL}) {
      long long d = sgn * m;
      if (is_fundamental_discriminant(d)) out.insert(d);
      if (ps.count(2)) {
        for (long long f : {4LL, 8LL}) {
          long long dd = f * d;
          if (is_fundamental_discriminant(dd)) out.insert(dd);
          if (is_fundamental_discriminant(-dd)) out.insert(-dd);
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace rtf
