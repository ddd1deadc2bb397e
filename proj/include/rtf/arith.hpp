#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtf {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Error taxonomy shared by every module.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct SingularInput : DomainError {
  using DomainError::DomainError;
};
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_bound(achieved) {}
  double achieved_bound;
};

// Place of Q: 0 stands for the archimedean place, otherwise a prime.
using Place = long long;
inline constexpr Place kInfinity = 0;

Rational rat(long long n, long long d = 1);
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
long long to_ll(const Integer& z);
Integer numer(const Rational& q);
Integer denom(const Rational& q);

bool is_prime(long long n);
std::vector<std::pair<long long, int>> factorize(long long n);
std::vector<long long> prime_divisors(const Rational& q);

// v_p(q) for q != 0.
int valuation(const Rational& q, long long p);
int valuation(const Integer& z, long long p);
// |q|_p as an exact rational (0 for q = 0).
Rational padic_abs(const Rational& q, long long p);
// p^k for any integer k.
Rational rpow(long long p, int k);

bool is_square(const Rational& q);
long long squarefree_part(long long n);
// Squarefree part of num*den, i.e. the square class of a nonzero rational.
long long squarefree_part(const Rational& q);

int kronecker(long long D, long long n);
// Hilbert symbol (a, b)_v, v = kInfinity or a prime.
int hilbert_symbol(const Rational& a, const Rational& b, Place v);

enum class Splitting { split, inert, ramified };
std::string to_string(Splitting s);

struct QuadAlg {
  long long core = 1;

  QuadAlg() = default;
  explicit QuadAlg(long long c);

  bool is_split() const { return core == 1; }
  // Field discriminant of Q(sqrt core); 1 for the split algebra.
  long long discriminant() const;
  std::string name() const;
  friend bool operator==(const QuadAlg&, const QuadAlg&) = default;
};

Splitting local_splitting(const QuadAlg& E, long long p);
// Splitting at a place including infinity.
Splitting local_splitting_at(const QuadAlg& E, Place v);

// x + y*sqrt(core); on the split algebra the components are (x+y, x-y).
struct QuadElem {
  QuadAlg alg;
  Rational x, y;

  QuadElem() = default;
  QuadElem(QuadAlg a, Rational x_, Rational y_ = 0)
      : alg(a), x(std::move(x_)), y(std::move(y_)) {}

  QuadElem conj() const { return {alg, x, -y}; }
  Rational norm() const { return x * x - Rational(alg.core) * y * y; }
  Rational trace() const { return 2 * x; }
  bool is_zero() const { return x == 0 && y == 0; }
  bool is_rational() const { return y == 0; }
  std::pair<Rational, Rational> split_components() const;
  QuadElem inverse() const;

  QuadElem operator-() const { return {alg, -x, -y}; }
  friend QuadElem operator+(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator-(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator*(const QuadElem& a, const QuadElem& b);
  friend QuadElem operator/(const QuadElem& a, const QuadElem& b);
  friend bool operator==(const QuadElem& a, const QuadElem& b) {
    return a.x == b.x && a.y == b.y && a.alg == b.alg;
  }
  std::string str() const;
};

struct QuadraticCharacter {
  long long D = 1;

  QuadraticCharacter() = default;
  explicit QuadraticCharacter(long long disc);

  bool trivial() const { return D == 1; }
  bool ramified_at(Place v) const;
  // Local component kappa_v(t) = (t, D)_v.
  int local(const Rational& t, Place v) const;
  // kappa_p(p) at an unramified prime.
  int at_prime(long long p) const;
  std::vector<long long> ramified_primes() const;
  friend bool operator==(const QuadraticCharacter&, const QuadraticCharacter&) = default;
};

bool is_fundamental_discriminant(long long D);
// All fundamental discriminants whose prime divisors lie in `primes`
// (sign free), excluding 1.
std::vector<long long> fundamental_discriminants_over(const std::vector<long long>& primes);

}  // namespace rtf
