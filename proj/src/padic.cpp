#include "rtf/padic.hpp"

#include <algorithm>

namespace rtf {

namespace {

Integer ipow(long long p, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

PadicElem PadicElem::make(long long p, int val, Integer unit, int prec) {
  if (prec <= 0) return zero(p, val);
  // Normalize: strip factors of p from the unit (loses relative precision).
  Integer mod = ipow(p, prec);
  unit = mod_pos(unit, mod);
  if (unit == 0) return zero(p, val + prec);
  while (unit % p == 0) {
    unit /= p;
    ++val;
    --prec;
    mod /= p;
  }
  PadicElem e;
  e.p_ = p;
  e.val_ = val;
  e.prec_ = prec;
  e.unit_ = unit;
  e.zero_ = false;
  return e;
}

PadicElem PadicElem::zero(long long p, int absolute_precision) {
  PadicElem e;
  e.p_ = p;
  e.zero_ = true;
  e.val_ = absolute_precision;
  e.prec_ = 0;
  e.unit_ = 0;
  return e;
}

PadicElem PadicElem::from_rational(const Rational& q, long long p, int precision) {
  if (!is_prime(p)) throw DomainError("p-adic prime must be prime");
  if (precision <= 0) throw DomainError("p-adic precision must be positive");
  if (q == 0) return zero(p);
  int v = rtf::valuation(q, p);
  Integer n = numer(q), d = denom(q);
  while (n % p == 0) n /= p;
  while (d % p == 0) d /= p;
  Integer mod = ipow(p, precision);
  Integer dinv;
  mpz_invert(dinv.backend().data(), mod_pos(d, mod).backend().data(), mod.backend().data());
  return make(p, v, mod_pos(n * dinv, mod), precision);
}

int PadicElem::valuation() const {
  if (zero_) throw DomainError("valuation of the zero marker");
  return val_;
}

std::vector<int> PadicElem::digits() const {
  std::vector<int> out;
  Integer u = unit_;
  for (int i = 0; i < prec_; ++i) {
    out.push_back((u % p_).convert_to<int>());
    u /= p_;
  }
  return out;
}

Rational PadicElem::representative() const {
  if (zero_) return 0;
  return Rational(unit_) * rpow(p_, val_);
}

PadicElem PadicElem::operator-() const {
  if (zero_) return *this;
  return make(p_, val_, -unit_, prec_);
}

static void same_prime(const PadicElem& a, const PadicElem& b) {
  if (a.prime() != b.prime()) throw DomainError("p-adic operands over different primes");
}

PadicElem operator+(const PadicElem& a, const PadicElem& b) {
  same_prime(a, b);
  const long long p = a.p_;
  int abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
  if (a.zero_ && b.zero_) return PadicElem::zero(p, abs_prec);
  if (a.zero_) return PadicElem::make(p, b.val_, b.unit_, std::min(b.prec_, abs_prec - b.val_));
  if (b.zero_) return PadicElem::make(p, a.val_, a.unit_, std::min(a.prec_, abs_prec - a.val_));
  int v = std::min(a.val_, b.val_);
  Integer sum = a.unit_ * ipow(p, a.val_ - v) + b.unit_ * ipow(p, b.val_ - v);
  return PadicElem::make(p, v, sum, abs_prec - v);
}

PadicElem operator-(const PadicElem& a, const PadicElem& b) { return a + (-b); }

PadicElem operator*(const PadicElem& a, const PadicElem& b) {
  same_prime(a, b);
  const long long p = a.p_;
  if (a.zero_ || b.zero_) {
    if (a.val_ == PadicElem::kExactZero || b.val_ == PadicElem::kExactZero)
      return PadicElem::zero(p);
    // a zero known mod p^k times something of valuation v is zero mod p^(k+v)
    return PadicElem::zero(p, a.val_ + b.val_);
  }
  int prec = std::min(a.prec_, b.prec_);
  return PadicElem::make(p, a.val_ + b.val_, a.unit_ * b.unit_, prec);
}

PadicElem operator/(const PadicElem& a, const PadicElem& b) {
  same_prime(a, b);
  if (b.zero_) throw SingularInput("p-adic division by zero");
  const long long p = a.p_;
  if (a.zero_) {
    int ap = a.val_ == PadicElem::kExactZero ? PadicElem::kExactZero : a.val_ - b.val_;
    return PadicElem::zero(p, ap);
  }
  int prec = std::min(a.prec_, b.prec_);
  Integer mod = ipow(p, prec);
  Integer inv;
  mpz_invert(inv.backend().data(), mod_pos(b.unit_, mod).backend().data(), mod.backend().data());
  return PadicElem::make(p, a.val_ - b.val_, a.unit_ * inv, prec);
}

bool PadicElem::equals(const PadicElem& other) const {
  same_prime(*this, other);
  PadicElem d = *this - other;
  return d.zero_;
}

bool PadicElem::is_square() const {
  if (zero_) return true;
  if (val_ % 2) return false;
  if (p_ == 2) {
    if (prec_ < 3) throw PrecisionError("not enough 2-adic precision to decide squareness");
    return unit_ % 8 == 1;
  }
  return kronecker(mod_pos(unit_, p_).convert_to<long long>(), p_) == 1;
}

PadicElem PadicElem::sqrt() const {
  if (zero_) return zero(p_, val_ == kExactZero ? kExactZero : val_ / 2);
  if (!is_square()) throw DomainError("p-adic element is not a square");
  const long long p = p_;
  // Digit-by-digit Hensel lifting of r^2 = unit.
  Integer r = 1, pk = p;
  int k = 1;
  if (p == 2) {
    pk = 8;
    k = 3;
  } else {
    long long u0 = mod_pos(unit_, p).convert_to<long long>();
    while ((r * r - u0) % p != 0) ++r;
  }
  for (; k < prec_; ++k) {
    Integer next_mod = pk * p;
    if (mod_pos(r * r - unit_, next_mod) != 0) {
      if (p == 2) {
        r += pk / 2;
      } else {
        for (long long t = 1; t < p; ++t) {
          Integer cand = r + pk * t;
          if (mod_pos(cand * cand - unit_, next_mod) == 0) {
            r = cand;
            break;
          }
        }
      }
    }
    pk = next_mod;
  }
  int prec = p == 2 ? prec_ - 1 : prec_;
  return make(p, val_ / 2, r, prec);
}

Rational padic_abs(const PadicElem& x) {
  if (x.is_zero()) return 0;
  return rpow(x.prime(), -x.valuation());
}

}  // namespace rtf
