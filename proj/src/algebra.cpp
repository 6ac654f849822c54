#include "hecke/algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace hecke {

// ---------------------------------------------------------------------------
// HElt

void HElt::add_term(const WElt& w, const Fq& c) {
  if (c.is_zero()) return;
  std::string k = w.key();
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), std::make_pair(w, c));
    return;
  }
  it->second.second += c;
  if (it->second.second.is_zero()) terms_.erase(it);
}

HElt& HElt::operator+=(const HElt& rhs) {
  for (const auto& [k, term] : rhs.terms_) add_term(term.first, term.second);
  return *this;
}

HElt& HElt::operator-=(const HElt& rhs) {
  for (const auto& [k, term] : rhs.terms_) add_term(term.first, -term.second);
  return *this;
}

HElt operator*(const Fq& c, const HElt& x) {
  HElt out;
  for (const auto& [k, term] : x.terms_) out.add_term(term.first, c * term.second);
  return out;
}

std::string HElt::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, term] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (!term.second.is_one()) os << term.second.str() << "*";
    os << "T[" << term.first.str() << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// HeckeAlgebra

HeckeAlgebra::HeckeAlgebra(const GroupDatum& group, uint32_t field_e)
    : group_(group), field_e_(field_e) {
  if (field_e < 1) throw std::invalid_argument("field_e must be positive");
}

uint64_t HeckeAlgebra::q() const { return scalar(0).q(); }

Fq HeckeAlgebra::scalar(int64_t v) const {
  return Fq::make(group_.p(), field_e_, v);
}

HElt HeckeAlgebra::one() const { return basis(WElt::identity(2, group_.p())); }

HElt HeckeAlgebra::basis(const WElt& w) const {
  if (!group_.contains(w))
    throw std::invalid_argument("basis: element not in group");
  HElt out;
  out.add_term(w, scalar(1));
  return out;
}

HElt HeckeAlgebra::c_elt() const {
  HElt out;
  for (const WElt& t : group_.c_set()) out.add_term(t, scalar(1));
  return out;
}

HElt HeckeAlgebra::right_mul_simple(const HElt& a, int i) const {
  const WElt s = group_.simple_lift(i);
  HElt out;
  for (const auto& [k, term] : a.terms()) {
    const WElt& x = term.first;
    const Fq& c = term.second;
    WElt xs = x * s;
    if (group_.length(xs) == group_.length(x) + 1) {
      out.add_term(xs, c);
    } else {
      for (const WElt& t : group_.c_set()) out.add_term(x * t, c);
    }
  }
  return out;
}

HElt HeckeAlgebra::theta_embed(const HElt& x) const {
  const GroupDatum torus = group_.torus();
  HElt out;
  for (const auto& [k, term] : x.terms()) {
    const WElt& w = term.first;
    if (!torus.contains(w))
      throw std::invalid_argument("theta_embed: not a torus class: " + w.str());
    if (!group_.is_positive(w))
      throw std::invalid_argument("theta_embed: not a dominant class: " +
                                  w.str());
    out.add_term(w, term.second);
  }
  return out;
}

HElt HeckeAlgebra::mul(const HElt& a, const HElt& b) const {
  HElt out;
  for (const auto& [k, term] : b.terms()) {
    const WElt& v = term.first;
    const Fq& cv = term.second;
    auto rw = group_.reduced_word(v);
    HElt acc = a;
    for (int i : rw.word) acc = right_mul_simple(acc, i);
    // free right multiplication by the length-zero remainder
    HElt shifted;
    for (const auto& [k2, t2] : acc.terms())
      shifted.add_term(t2.first * rw.omega, t2.second);
    out += cv * shifted;
  }
  return out;
}

}  // namespace hecke
