/**
 * fq.hpp — exact arithmetic in the finite field F_q, q = p^e.
 *
 * Fq is a small value type: an element together with its field parameters
 * (p, e).  Elements of extension fields (e >= 2) are polynomials over F_p
 * modulo a fixed monic irreducible, packed base-p into a 64-bit word; the
 * irreducible is the lexicographically least one for (p, e) and is resolved
 * through a process-wide cache, so two Fq values with equal (p, e) always
 * live in literally the same field.
 *
 * A default-constructed Fq (or one made from a bare int) is an *unbound
 * integer literal*: it has no field attached and binds to the field of the
 * other operand on first contact.  This is what lets generic dense-matrix
 * code (Eigen) use Scalar(0) / Scalar(1) internally while every bound value
 * stays exactly reduced.
 */

#ifndef HECKE_FQ_HPP
#define HECKE_FQ_HPP

#include <cstdint>
#include <string>

namespace hecke {

class Fq {
 public:
  /// Unbound integer literal 0.
  Fq() = default;

  /// Unbound integer literal; binds to a field on first contact.
  Fq(int v) : lit_(v), p_(0), e_(0) {}  // NOLINT: implicit by design
  Fq(long v) : lit_(v), p_(0), e_(0) {}
  Fq(long long v) : lit_(v), p_(0), e_(0) {}

  /// Element of F_{p^e} from an integer (reduced into the prime subfield).
  static Fq make(uint32_t p, uint32_t e, long long value);

  /// Element of F_{p^e} from packed base-p polynomial digits (c_0 + c_1 t + ...).
  static Fq from_rep(uint32_t p, uint32_t e, uint64_t rep);

  bool bound() const { return p_ != 0; }
  uint32_t p() const { return p_; }
  uint32_t e() const { return e_; }
  /// Field size p^e (1 for unbound literals).
  uint64_t q() const;
  /// Packed representation; for unbound literals the raw integer.
  uint64_t rep() const { return bound() ? rep_ : static_cast<uint64_t>(lit_); }

  bool is_zero() const { return bound() ? rep_ == 0 : lit_ == 0; }
  bool is_one() const;

  Fq operator-() const;
  Fq inverse() const;  ///< multiplicative inverse; throws on zero.
  Fq pow(long long n) const;

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b);
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  Fq& operator/=(const Fq& o) { return *this = *this / o; }

  friend bool operator==(const Fq& a, const Fq& b);
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  /// Rebind an unbound literal into the field of `like` (no-op if bound).
  Fq bind_like(const Fq& like) const;
  /// Reduce this element (or literal) into F_{p^e}.
  Fq bind(uint32_t p, uint32_t e) const;

  /// "3" for prime fields, "1+2*t" style for extensions, with field suffix.
  std::string str() const;

 private:
  uint64_t rep_ = 0;  // bound: packed digits; unbound: unused
  int64_t lit_ = 0;   // unbound: literal value
  uint32_t p_ = 0;    // 0 marks an unbound literal
  uint32_t e_ = 0;
};

/// Identity helpers used by generic (Eigen) code paths.
inline const Fq& conj(const Fq& x) { return x; }
inline const Fq& real(const Fq& x) { return x; }
inline Fq imag(const Fq&) { return Fq(0); }
inline Fq abs2(const Fq& x) { return x * x; }

std::string to_string(const Fq& x);

}  // namespace hecke

#endif  // HECKE_FQ_HPP
