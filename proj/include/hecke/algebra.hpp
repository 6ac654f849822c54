/**
 * algebra.hpp — pro-p Iwahori Hecke algebras at q = 0.
 *
 * The algebra H has an F_q-basis {T_w} indexed by the monomial classes of
 * weyl.hpp.  Products are driven by two rules:
 *
 *   T_u * T_v = T_{uv}                     when lengths add,
 *   T_x * T_s = sum_{t in c_set} T_{x t}   when ell(x s) = ell(x) - 1,
 *
 * the second being the q = 0 quadratic relation T_s^2 = c T_s pushed through
 * a reduced decomposition.  Length-zero elements multiply freely.  For torus
 * data every element has length zero, so H_T is the group algebra of the
 * monomial class group.
 *
 * HElt is a plain linear combination (deterministically ordered by the
 * canonical element key); the product lives on HeckeAlgebra because it needs
 * the group's length function.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hecke/fq.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Finite F_q-linear combination of basis elements T_w.
class HElt {
 public:
  HElt() = default;

  /// Adds c * T_w, pruning the term if the total coefficient vanishes.
  void add_term(const WElt& w, const Fq& c);
  const std::map<std::string, std::pair<WElt, Fq>>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }
  /// Number of basis terms with nonzero coefficient.
  size_t size() const { return terms_.size(); }

  HElt& operator+=(const HElt& rhs);
  HElt& operator-=(const HElt& rhs);
  friend HElt operator+(HElt lhs, const HElt& rhs) { return lhs += rhs; }
  friend HElt operator-(HElt lhs, const HElt& rhs) { return lhs -= rhs; }
  friend HElt operator*(const Fq& c, const HElt& x);
  bool operator==(const HElt& rhs) const { return terms_ == rhs.terms_; }
  bool operator!=(const HElt& rhs) const { return !(*this == rhs); }

  std::string str() const;

 private:
  std::map<std::string, std::pair<WElt, Fq>> terms_;
};

/// The Hecke algebra of a group datum over F_{p^e} (same characteristic as
/// the residue field of the group).
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(const GroupDatum& group, uint32_t field_e = 1);

  const GroupDatum& group() const { return group_; }
  uint32_t p() const { return group_.p(); }
  uint32_t field_e() const { return field_e_; }
  uint64_t q() const;

  /// Scalar v in the coefficient field.
  Fq scalar(int64_t v) const;

  HElt zero() const { return HElt(); }
  HElt one() const;
  /// The basis element T_w (validates membership of w).
  HElt basis(const WElt& w) const;
  /// The quadratic-relation coefficient c = sum_{t in c_set} T_t.
  HElt c_elt() const;

  HElt mul(const HElt& a, const HElt& b) const;

  /// Embedding of the dominant part of the torus algebra: T_t for a dominant
  /// diagonal class t maps to the basis element T_t of this algebra.  Every
  /// term of x must be a dominant torus class; throws otherwise, naming the
  /// offending element.
  HElt theta_embed(const HElt& x) const;

 private:
  HElt right_mul_simple(const HElt& a, int i) const;

  GroupDatum group_;
  uint32_t field_e_;
};

}  // namespace hecke
