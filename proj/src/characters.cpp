#include "hecke/characters.hpp"

#include <sstream>
#include <stdexcept>

namespace hecke {

namespace {

uint32_t exp_mod(int64_t r, uint32_t p) {
  const int64_t m = p - 1;
  int64_t v = r % m;
  if (v < 0) v += m;
  return static_cast<uint32_t>(v);
}

}  // namespace

// ---------------------------------------------------------------------------
// SmoothCharacter

SmoothCharacter SmoothCharacter::make(const GroupDatum& torus,
                                      uint32_t field_e,
                                      const std::vector<int64_t>& exps,
                                      const std::vector<Fq>& unram) {
  if (!torus.is_torus())
    throw std::invalid_argument("SmoothCharacter: datum is not a torus");
  const size_t want = torus.kind() == GroupKind::torus_sl2 ? 1 : 2;
  if (exps.size() != want || unram.size() != want)
    throw std::invalid_argument("SmoothCharacter: wrong component count");
  SmoothCharacter chi;
  chi.kind_ = torus.kind();
  chi.p_ = torus.p();
  chi.field_e_ = field_e;
  for (int64_t r : exps) chi.exps_.push_back(exp_mod(r, torus.p()));
  for (const Fq& c : unram) {
    Fq cc = c.bind_like(Fq::make(torus.p(), field_e, 0));
    if (cc.is_zero())
      throw std::invalid_argument("SmoothCharacter: unramified value is 0");
    chi.unram_.push_back(cc);
  }
  return chi;
}

SmoothCharacter SmoothCharacter::trivial(const GroupDatum& torus,
                                         uint32_t field_e) {
  Fq one = Fq::make(torus.p(), field_e, 1);
  if (torus.kind() == GroupKind::torus_sl2)
    return make(torus, field_e, {0}, {one});
  return make(torus, field_e, {0, 0}, {one, one});
}

SmoothCharacter SmoothCharacter::alpha_bar(const GroupDatum& torus,
                                           uint32_t field_e) {
  Fq one = Fq::make(torus.p(), field_e, 1);
  if (torus.kind() == GroupKind::torus_sl2)
    return make(torus, field_e, {2}, {one});
  return make(torus, field_e, {1, -1}, {one, one});
}

Fq SmoothCharacter::eval(const WElt& t) const {
  if (!t.is_diagonal() || t.p() != p_)
    throw std::invalid_argument("SmoothCharacter: not a torus element");
  Fq out = Fq::make(p_, field_e_, 1);
  if (kind_ == GroupKind::torus_sl2) {
    MonomialEntry d = t.entry(0, 0);
    out *= Fq::make(p_, field_e_, d.unit).pow(exps_[0]);
    out *= unram_[0].pow(d.val);
    return out;
  }
  for (int i = 0; i < 2; ++i) {
    MonomialEntry d = t.entry(i, i);
    out *= Fq::make(p_, field_e_, d.unit).pow(exps_[static_cast<size_t>(i)]);
    out *= unram_[static_cast<size_t>(i)].pow(d.val);
  }
  return out;
}

SmoothCharacter SmoothCharacter::weyl_swap() const {
  SmoothCharacter chi = *this;
  if (kind_ == GroupKind::torus_sl2) {
    chi.exps_[0] = exp_mod(-static_cast<int64_t>(exps_[0]), p_);
    chi.unram_[0] = unram_[0].inverse();
    return chi;
  }
  std::swap(chi.exps_[0], chi.exps_[1]);
  std::swap(chi.unram_[0], chi.unram_[1]);
  return chi;
}

SmoothCharacter SmoothCharacter::inverse() const {
  SmoothCharacter chi = *this;
  for (auto& r : chi.exps_) r = exp_mod(-static_cast<int64_t>(r), p_);
  for (auto& c : chi.unram_) c = c.inverse();
  return chi;
}

SmoothCharacter SmoothCharacter::operator*(const SmoothCharacter& rhs) const {
  if (kind_ != rhs.kind_ || p_ != rhs.p_ || field_e_ != rhs.field_e_)
    throw std::invalid_argument("SmoothCharacter: incompatible product");
  SmoothCharacter chi = *this;
  for (size_t i = 0; i < exps_.size(); ++i) {
    chi.exps_[i] = exp_mod(
        static_cast<int64_t>(exps_[i]) + static_cast<int64_t>(rhs.exps_[i]),
        p_);
    chi.unram_[i] = unram_[i] * rhs.unram_[i];
  }
  return chi;
}

bool SmoothCharacter::operator==(const SmoothCharacter& rhs) const {
  return kind_ == rhs.kind_ && p_ == rhs.p_ && field_e_ == rhs.field_e_ &&
         exps_ == rhs.exps_ && unram_ == rhs.unram_;
}

std::string SmoothCharacter::str() const {
  std::ostringstream os;
  os << "chi[" << to_string(kind_) << "; exp=(";
  for (size_t i = 0; i < exps_.size(); ++i) os << (i ? "," : "") << exps_[i];
  os << "); unram=(";
  for (size_t i = 0; i < unram_.size(); ++i)
    os << (i ? "," : "") << unram_[i].str();
  os << ")]";
  return os.str();
}

// ---------------------------------------------------------------------------
// HCharacter

Fq HCharacter::eval_omega(const WElt& w) const {
  Fq out = Fq::make(p, field_e, 1);
  if (kind == GroupKind::sl2) {
    if (!w.is_diagonal() || w.entry(0, 0).val != 0 || w.entry(1, 1).val != 0)
      throw std::invalid_argument("eval_omega: not length zero");
    return Fq::make(p, field_e, w.entry(0, 0).unit).pow(r);
  }
  GroupDatum g(GroupKind::gl2, p);
  auto [k, t] = g.omega_decompose(w);
  out = gamma.pow(k);
  uint64_t prod = (static_cast<uint64_t>(t.entry(0, 0).unit) *
                   t.entry(1, 1).unit) %
                  p;
  out *= Fq::make(p, field_e, static_cast<int64_t>(prod)).pow(r);
  return out;
}

bool HCharacter::omega_trivial() const {
  if (kind == GroupKind::gl2) return r == 0 && gamma.is_one();
  return r == 0;
}

bool HCharacter::operator==(const HCharacter& rhs) const {
  return kind == rhs.kind && p == rhs.p && field_e == rhs.field_e &&
         a0 == rhs.a0 && a1 == rhs.a1 && r == rhs.r && gamma == rhs.gamma;
}

std::string HCharacter::str() const {
  std::ostringstream os;
  os << "hchar[" << to_string(kind) << "; T_s0->" << a0.str() << ", T_s1->"
     << a1.str() << ", r=" << r;
  if (kind == GroupKind::gl2) os << ", T_pi->" << gamma.str();
  os << "]";
  return os.str();
}

std::vector<HCharacter> HCharacter::enumerate(const GroupDatum& g,
                                              uint32_t field_e) {
  if (g.is_torus())
    throw std::invalid_argument("HCharacter::enumerate: torus datum");
  const uint32_t p = g.p();
  const Fq zero = Fq::make(p, field_e, 0);
  const Fq one = Fq::make(p, field_e, 1);
  std::vector<HCharacter> out;
  if (g.kind() == GroupKind::gl2) {
    // a0 == a1 (pi-conjugation), torus exponent pair (r, r), gamma free.
    const uint64_t q = zero.q();
    for (uint32_t r = 0; r < p - 1; ++r)
      for (int a = 0; a < 2; ++a)
        for (uint64_t grep = 1; grep < q; ++grep) {
          HCharacter chi;
          chi.kind = g.kind();
          chi.p = p;
          chi.field_e = field_e;
          chi.a0 = chi.a1 = (a == 0) ? zero : -one;
          chi.r = r;
          chi.gamma = Fq::from_rep(p, field_e, grep);
          out.push_back(chi);
        }
    return out;
  }
  // sl2: a nonzero affine value a must satisfy a^2 = (sum_u u^r) a, and the
  // character sum over F_p^* vanishes unless (p-1) | r; the swap-equivariance
  // constraint 2r = 0 is implied.  So nonzero affine values occur only at r = 0.
  for (uint32_t r = 0; r < p - 1; ++r) {
    const bool quad = r == 0;
    for (int a0i = 0; a0i < 2; ++a0i)
      for (int a1i = 0; a1i < 2; ++a1i) {
        if (!quad && (a0i || a1i)) continue;
        HCharacter chi;
        chi.kind = g.kind();
        chi.p = p;
        chi.field_e = field_e;
        chi.a0 = a0i ? -one : zero;
        chi.a1 = a1i ? -one : zero;
        chi.r = r;
        chi.gamma = one;
        out.push_back(chi);
      }
  }
  return out;
}

namespace {

HCharacter base_char(const GroupDatum& g, uint32_t field_e) {
  HCharacter chi;
  chi.kind = g.kind();
  chi.p = g.p();
  chi.field_e = field_e;
  chi.a0 = chi.a1 = Fq::make(g.p(), field_e, 0);
  chi.r = 0;
  chi.gamma = Fq::make(g.p(), field_e, 1);
  return chi;
}

}  // namespace

HCharacter h_trivial(const GroupDatum& g, uint32_t field_e) {
  return base_char(g, field_e);
}

HCharacter h_sign(const GroupDatum& g, uint32_t field_e) {
  HCharacter chi = base_char(g, field_e);
  chi.a0 = chi.a1 = Fq::make(g.p(), field_e, -1);
  return chi;
}

HCharacter h_sign_star(const GroupDatum& g, uint32_t field_e) {
  if (g.kind() != GroupKind::gl2)
    throw std::invalid_argument("h_sign_star: gl2 only");
  HCharacter chi = h_sign(g, field_e);
  chi.gamma = Fq::make(g.p(), field_e, -1);
  return chi;
}

HCharacter h_trivial_star(const GroupDatum& g, uint32_t field_e) {
  if (g.kind() != GroupKind::gl2)
    throw std::invalid_argument("h_trivial_star: gl2 only");
  HCharacter chi = h_trivial(g, field_e);
  chi.gamma = Fq::make(g.p(), field_e, -1);
  return chi;
}

}  // namespace hecke
