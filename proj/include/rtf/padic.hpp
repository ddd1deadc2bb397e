#pragma once

#include "rtf/arith.hpp"

#include <vector>

namespace rtf {

inline constexpr int kDefaultPadicPrecision = 20;

// Element of Q_p stored as p^valuation * unit, with the unit known modulo
// p^precision.  A zero marker carries the absolute precision to which it is
// known to vanish (exact zeros use a very large value).
class PadicElem {
 public:
  static constexpr int kExactZero = 1 << 28;

  PadicElem() = default;
  static PadicElem from_rational(const Rational& q, long long p, int precision = kDefaultPadicPrecision);
  static PadicElem zero(long long p, int absolute_precision = kExactZero);

  long long prime() const { return p_; }
  bool is_zero() const { return zero_; }
  int valuation() const;
  int precision() const { return prec_; }
  // Absolute precision: the element is known modulo p^absolute_precision.
  int absolute_precision() const { return zero_ ? val_ : val_ + prec_; }
  const Integer& unit() const { return unit_; }
  std::vector<int> digits() const;
  // Rational representative p^v * unit (unit in [0, p^prec)).
  Rational representative() const;

  PadicElem operator-() const;
  friend PadicElem operator+(const PadicElem& a, const PadicElem& b);
  friend PadicElem operator-(const PadicElem& a, const PadicElem& b);
  friend PadicElem operator*(const PadicElem& a, const PadicElem& b);
  friend PadicElem operator/(const PadicElem& a, const PadicElem& b);
  // Equality to the precision known for both operands.
  bool equals(const PadicElem& other) const;

  bool is_square() const;
  // Square root by Hensel lifting; throws DomainError if not a square.
  PadicElem sqrt() const;

 private:
  long long p_ = 2;
  int val_ = 0;
  int prec_ = kDefaultPadicPrecision;
  Integer unit_ = 1;
  bool zero_ = false;

  static PadicElem make(long long p, int val, Integer unit, int prec);
};

// |x|_p; zero marker maps to 0.
Rational padic_abs(const PadicElem& x);

}  // namespace rtf
