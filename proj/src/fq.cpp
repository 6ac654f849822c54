/**
 * fq.cpp — finite-field scalar implementation.
 *
 * Prime fields take the fast residue path.  Extension fields decode the
 * packed representation into digit vectors, do schoolbook polynomial
 * arithmetic, and reduce modulo the cached irreducible for (p, e).
 */

#include "hecke/fq.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hecke {

namespace {

// ---------------------------------------------------------------------------
// Field context cache: the reduction rule x^e = red(x) for the chosen
// irreducible f(x) = x^e - red(x), least in lexicographic digit order.
// ---------------------------------------------------------------------------

struct FieldContext {
  uint32_t p = 0;
  uint32_t e = 1;
  uint64_t q = 0;
  std::vector<uint32_t> red;  // digits of x^e mod f, size e (empty for e = 1)
};

using Poly = std::vector<uint32_t>;  // dense digits over F_p, low degree first

uint32_t mod_p(long long v, uint32_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += p;
  return static_cast<uint32_t>(r);
}

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p;
  poly_trim(c);
  return c;
}

// Remainder of a modulo monic f.
Poly poly_rem(Poly a, const Poly& f, uint32_t p) {
  const size_t d = f.size() - 1;
  while (a.size() > d) {
    uint32_t lead = a.back();
    size_t shift = a.size() - 1 - d;
    if (lead != 0) {
      for (size_t i = 0; i < d; ++i) {
        uint64_t sub = static_cast<uint64_t>(lead) * f[i] % p;
        uint32_t& digit = a[shift + i];
        digit = static_cast<uint32_t>((digit + p - sub) % p);
      }
    }
    a.pop_back();
    poly_trim(a);
    if (a.size() <= d && (a.empty() || a.size() - 1 < d)) break;
  }
  poly_trim(a);
  return a;
}

Poly poly_powmod_x(uint64_t n, const Poly& f, uint32_t p) {
  // x^n mod f by square and multiply.
  Poly result{1};
  Poly base{0, 1};
  poly_trim(base);
  while (n > 0) {
    if (n & 1) result = poly_rem(poly_mul(result, base, p), f, p);
    base = poly_rem(poly_mul(base, base, p), f, p);
    n >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
  auto inv_mod = [&](uint32_t v) {
    uint32_t r = 1;
    uint32_t base = v % p;
    for (uint32_t n = p - 2; n > 0; n >>= 1) {
      if (n & 1) r = static_cast<uint32_t>(static_cast<uint64_t>(r) * base % p);
      base = static_cast<uint32_t>(static_cast<uint64_t>(base) * base % p);
    }
    return r;
  };
  while (!b.empty()) {
    // make b monic, then reduce
    Poly bm = b;
    uint32_t inv = inv_mod(bm.back());
    for (auto& d : bm) d = static_cast<uint32_t>(static_cast<uint64_t>(d) * inv % p);
    a = poly_rem(a, bm, p);
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const Poly& f, uint32_t p) {
  const size_t e = f.size() - 1;
  // x^{p^e} == x mod f, and gcd(x^{p^{e/l}} - x, f) == 1 for prime l | e.
  uint64_t pe = 1;
  for (size_t i = 0; i < e; ++i) pe *= p;
  Poly xpe = poly_powmod_x(pe, f, p);
  Poly x{0, 1};
  if (xpe != x) return false;
  for (size_t l = 2; l <= e; ++l) {
    if (e % l != 0) continue;
    bool prime = true;
    for (size_t d = 2; d * d <= l; ++d)
      if (l % d == 0) prime = false;
    if (!prime) continue;
    uint64_t pk = 1;
    for (size_t i = 0; i < e / l; ++i) pk *= p;
    Poly g = poly_powmod_x(pk, f, p);
    // g - x
    Poly diff = g;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = static_cast<uint32_t>((diff[1] + p - 1) % p);
    poly_trim(diff);
    Poly gc = poly_gcd(f, diff, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

const FieldContext& context(uint32_t p, uint32_t e) {
  static std::map<std::pair<uint32_t, uint32_t>, FieldContext> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  if (p < 2 || e < 1 || e > 10)
    throw std::invalid_argument("Fq: unsupported field parameters");
  FieldContext ctx;
  ctx.p = p;
  ctx.e = e;
  ctx.q = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (ctx.q > (UINT64_MAX / 2) / p)
      throw std::invalid_argument("Fq: field too large");
    ctx.q *= p;
  }
  if (e > 1) {
    // Least monic irreducible of degree e in lexicographic order of
    // (c_{e-1}, ..., c_0): enumerate constant-first counter order and pick
    // the first irreducible; determinism is what matters.
    std::vector<uint32_t> low(e, 0);
    bool found = false;
    while (!found) {
      Poly f(low.begin(), low.end());
      f.push_back(1);  // monic
      if (is_irreducible(f, p)) {
        ctx.red.assign(e, 0);
        // x^e = -(low digits)
        for (uint32_t i = 0; i < e; ++i) ctx.red[i] = (p - low[i] % p) % p;
        found = true;
        break;
      }
      // increment the digit counter
      uint32_t i = 0;
      for (; i < e; ++i) {
        if (++low[i] < p) break;
        low[i] = 0;
      }
      if (i == e) throw std::logic_error("Fq: no irreducible found");
    }
  }
  auto [pos, ok] = cache.emplace(key, std::move(ctx));
  (void)ok;
  return pos->second;
}

Poly decode(uint64_t rep, uint32_t p, uint32_t e) {
  Poly digits(e, 0);
  for (uint32_t i = 0; i < e; ++i) {
    digits[i] = static_cast<uint32_t>(rep % p);
    rep /= p;
  }
  poly_trim(digits);
  return digits;
}

uint64_t encode(const Poly& digits, uint32_t p, uint32_t e) {
  uint64_t rep = 0;
  uint64_t mult = 1;
  for (uint32_t i = 0; i < e; ++i) {
    uint32_t d = i < digits.size() ? digits[i] : 0;
    rep += d * mult;
    mult *= p;
  }
  return rep;
}

// Reduce a product polynomial (degree < 2e-1) using x^e = red(x).
Poly reduce_by_context(Poly a, const FieldContext& ctx) {
  const uint32_t p = ctx.p;
  const uint32_t e = ctx.e;
  while (a.size() > e) {
    uint32_t lead = a.back();
    size_t deg = a.size() - 1;
    a.pop_back();
    if (lead != 0) {
      for (uint32_t i = 0; i < e; ++i) {
        size_t at = deg - e + i;
        uint64_t add = static_cast<uint64_t>(lead) * ctx.red[i] % p;
        if (a.size() <= at) a.resize(at + 1, 0);
        a[at] = static_cast<uint32_t>((a[at] + add) % p);
      }
    }
    poly_trim(a);
  }
  poly_trim(a);
  return a;
}

}  // namespace

Fq Fq::make(uint32_t p, uint32_t e, long long value) {
  const FieldContext& ctx = context(p, e);
  (void)ctx;
  Fq x;
  x.p_ = p;
  x.e_ = e;
  x.rep_ = mod_p(value, p);
  return x;
}

Fq Fq::from_rep(uint32_t p, uint32_t e, uint64_t rep) {
  const FieldContext& ctx = context(p, e);
  if (rep >= ctx.q) throw std::invalid_argument("Fq::from_rep: out of range");
  Fq x;
  x.p_ = p;
  x.e_ = e;
  x.rep_ = rep;
  return x;
}

uint64_t Fq::q() const {
  if (!bound()) return 1;
  return context(p_, e_).q;
}

bool Fq::is_one() const { return bound() ? rep_ == 1 : lit_ == 1; }

Fq Fq::bind_like(const Fq& like) const {
  if (bound() || !like.bound()) return *this;
  return bind(like.p_, like.e_);
}

Fq Fq::bind(uint32_t p, uint32_t e) const {
  if (bound()) {
    if (p_ != p || e_ != e) throw std::invalid_argument("Fq: field mismatch");
    return *this;
  }
  return make(p, e, lit_);
}

Fq Fq::operator-() const {
  if (!bound()) {
    Fq r;
    r.lit_ = -lit_;
    return r;
  }
  if (e_ == 1) return from_rep(p_, e_, rep_ == 0 ? 0 : p_ - rep_);
  Poly a = decode(rep_, p_, e_);
  for (auto& d : a) d = (p_ - d) % p_;
  return from_rep(p_, e_, encode(a, p_, e_));
}

namespace {

// Align operands: bind literals, check fields agree.  Returns false if both
// are unbound (pure literal arithmetic).
bool align(const Fq& a, const Fq& b, Fq& xa, Fq& xb) {
  if (!a.bound() && !b.bound()) return false;
  xa = a.bound() ? a : a.bind_like(b);
  xb = b.bound() ? b : b.bind_like(a);
  if (xa.p() != xb.p() || xa.e() != xb.e())
    throw std::invalid_argument("Fq: mixed-field arithmetic");
  return true;
}

int64_t lit_of(const Fq& x) { return static_cast<int64_t>(x.rep()); }

}  // namespace

Fq operator+(const Fq& a, const Fq& b) {
  Fq xa, xb;
  if (!align(a, b, xa, xb)) return Fq(static_cast<long long>(lit_of(a) + lit_of(b)));
  const uint32_t p = xa.p(), e = xa.e();
  if (e == 1) return Fq::from_rep(p, e, (xa.rep() + xb.rep()) % p);
  Poly ap = decode(xa.rep(), p, e), bp = decode(xb.rep(), p, e);
  if (ap.size() < bp.size()) ap.resize(bp.size(), 0);
  for (size_t i = 0; i < bp.size(); ++i) ap[i] = (ap[i] + bp[i]) % p;
  poly_trim(ap);
  return Fq::from_rep(p, e, encode(ap, p, e));
}

Fq operator-(const Fq& a, const Fq& b) { return a + (-b); }

Fq operator*(const Fq& a, const Fq& b) {
  Fq xa, xb;
  if (!align(a, b, xa, xb)) return Fq(static_cast<long long>(lit_of(a) * lit_of(b)));
  const uint32_t p = xa.p(), e = xa.e();
  if (e == 1)
    return Fq::from_rep(p, e, xa.rep() * xb.rep() % p);
  const FieldContext& ctx = context(p, e);
  Poly prod = poly_mul(decode(xa.rep(), p, e), decode(xb.rep(), p, e), p);
  prod = reduce_by_context(std::move(prod), ctx);
  return Fq::from_rep(p, e, encode(prod, p, e));
}

Fq Fq::pow(long long n) const {
  if (!bound()) throw std::invalid_argument("Fq::pow: unbound literal");
  if (is_zero()) {
    if (n < 0) throw std::domain_error("Fq: zero to negative power");
    return n == 0 ? make(p_, e_, 1) : *this;
  }
  uint64_t nn;
  if (n < 0) {
    uint64_t group = q() - 1;
    nn = group - (static_cast<uint64_t>(-n) % group);
    nn %= group;
  } else {
    nn = static_cast<uint64_t>(n);
  }
  Fq result = make(p_, e_, 1);
  Fq base = *this;
  while (nn > 0) {
    if (nn & 1) result = result * base;
    base = base * base;
    nn >>= 1;
  }
  return result;
}

Fq Fq::inverse() const {
  if (!bound()) throw std::invalid_argument("Fq::inverse: unbound literal");
  if (is_zero()) throw std::domain_error("Fq: division by zero");
  return pow(static_cast<long long>(q()) - 2);
}

Fq operator/(const Fq& a, const Fq& b) {
  Fq xa = a, xb = b;
  if (!b.bound() && a.bound()) xb = b.bind_like(a);
  if (!xb.bound()) throw std::invalid_argument("Fq: division by unbound literal");
  xa = xa.bind_like(xb);
  return xa * xb.inverse();
}

bool operator==(const Fq& a, const Fq& b) {
  Fq xa, xb;
  if (!align(a, b, xa, xb)) return lit_of(a) == lit_of(b);
  return xa.rep() == xb.rep();
}

std::string Fq::str() const {
  if (!bound()) return std::to_string(lit_) + "?";
  if (e_ == 1) return std::to_string(rep_);
  Poly d = decode(rep_, p_, e_);
  if (d.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d[i]);
    } else {
      if (d[i] != 1) s += std::to_string(d[i]) + "*";
      s += "t";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

std::string to_string(const Fq& x) { return x.str(); }

}  // namespace hecke
