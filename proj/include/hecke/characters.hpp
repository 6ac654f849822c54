/**
 * characters.hpp — smooth characters of tori and one-dimensional characters
 * of the rank-one Hecke algebras.
 *
 * A smooth F_q^x-valued character of a torus class group factors through
 * units-mod-p and valuations: on torus_gl2 it is determined by finite
 * exponents (r1, r2) mod (p-1) and unramified values (c1, c2) in F_q^x, with
 *   chi(diag(u1 p^k1, u2 p^k2)) = u1^r1 u2^r2 c1^k1 c2^k2;
 * on torus_sl2 by a single pair (r, c) via diag(x p^k, x^-1 p^-k) -> x^r c^k.
 * These are exactly the one-dimensional modules of the torus Hecke algebra.
 *
 * A one-dimensional module of H itself is pinned by its values on the two
 * affine generators (each 0 or -1, equal for gl2), an s-invariant finite
 * torus exponent, and for gl2 a unit value at T_pi.  HCharacter carries that
 * data and can enumerate every valid tuple.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hecke/fq.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// Smooth character of a torus datum (torus_sl2 or torus_gl2).
class SmoothCharacter {
 public:
  /// exps/unram have one entry for torus_sl2, two for torus_gl2.
  /// Exponents are taken mod (p - 1); unramified values must be nonzero.
  static SmoothCharacter make(const GroupDatum& torus, uint32_t field_e,
                              const std::vector<int64_t>& exps,
                              const std::vector<Fq>& unram);
  static SmoothCharacter trivial(const GroupDatum& torus, uint32_t field_e);
  /// Reduction of the positive root: diag(a, b) -> units(a/b).
  static SmoothCharacter alpha_bar(const GroupDatum& torus, uint32_t field_e);

  GroupKind kind() const { return kind_; }
  uint32_t p() const { return p_; }
  uint32_t field_e() const { return field_e_; }
  const std::vector<uint32_t>& exps() const { return exps_; }
  const std::vector<Fq>& unram() const { return unram_; }

  Fq eval(const WElt& t) const;
  /// Action of the nontrivial Weyl element (coordinate swap; inversion on
  /// the sl2 torus).
  SmoothCharacter weyl_swap() const;
  /// The inverse character (the dual one-dimensional module).
  SmoothCharacter inverse() const;
  SmoothCharacter operator*(const SmoothCharacter& rhs) const;
  bool operator==(const SmoothCharacter& rhs) const;
  bool operator!=(const SmoothCharacter& rhs) const { return !(*this == rhs); }
  /// Regular means not fixed by the Weyl swap.
  bool is_regular() const { return !(*this == weyl_swap()); }

  std::string str() const;

 private:
  GroupKind kind_ = GroupKind::torus_sl2;
  uint32_t p_ = 0;
  uint32_t field_e_ = 1;
  std::vector<uint32_t> exps_;
  std::vector<Fq> unram_;
};

/// One-dimensional character of the Hecke algebra of sl2 or gl2.
struct HCharacter {
  GroupKind kind = GroupKind::sl2;
  uint32_t p = 0;
  uint32_t field_e = 1;
  Fq a0;          // value at T_{s~0}
  Fq a1;          // value at T_{s~1} (gl2 forces a0 == a1)
  uint32_t r = 0; // finite torus exponent: diag(u1, u2) -> (u1 u2)^r for gl2,
                  // diag(u, u^-1) -> u^r for sl2
  Fq gamma;       // value at T_pi (gl2 only; 1 otherwise)

  /// Value on a length-zero basis element T_w.
  Fq eval_omega(const WElt& w) const;
  /// Trivial on the whole length-zero subalgebra?
  bool omega_trivial() const;
  bool operator==(const HCharacter& rhs) const;
  bool operator!=(const HCharacter& rhs) const { return !(*this == rhs); }
  std::string str() const;

  /// Every valid character of the given group's Hecke algebra over F_{p^e}.
  static std::vector<HCharacter> enumerate(const GroupDatum& g,
                                           uint32_t field_e);
};

/// T_s -> 0 on both affine generators, trivial elsewhere.
HCharacter h_trivial(const GroupDatum& g, uint32_t field_e);
/// T_s -> -1 on both affine generators, trivial elsewhere.
HCharacter h_sign(const GroupDatum& g, uint32_t field_e);
/// gl2 only: T_s -> -1 with T_pi -> -1.
HCharacter h_sign_star(const GroupDatum& g, uint32_t field_e);
/// gl2 only: T_s -> 0 with T_pi -> -1.
HCharacter h_trivial_star(const GroupDatum& g, uint32_t field_e);

}  // namespace hecke
