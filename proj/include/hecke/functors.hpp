/**
 * functors.hpp — parabolic induction from the diagonal torus and its right
 * adjoint.
 *
 * The torus Hecke algebra H_T embeds into H on the positive (dominant)
 * monoid: theta(T_t) = T_t whenever t has weakly decreasing valuations.
 * Induction sends a smooth character chi of the torus to the unique
 * two-dimensional H-module generated by a vector on which theta acts through
 * chi.  Its right adjoint localizes a finite-dimensional H-module at the
 * operator T_{z^{-1}} for the standard antidominant translation z: the torus
 * acts on the eventual image of that operator, with negative powers supplied
 * by the now-invertible restriction.  adjunction_check compares
 * dim Hom_H(Ind(chi), m) with dim Hom_{H_T}(chi, R(m)) and reports.
 */
#pragma once

#include <cstdint>
#include <string>

#include "hecke/characters.hpp"
#include "hecke/modules.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/**
 * An ambient rank-one group together with its diagonal torus and the chosen
 * antidominant translation z.  Construction validates that z^{-1} is
 * positive and that the antidominant valuation cone together with z^{-1}
 * generates the full valuation lattice of the torus as a monoid (checked by
 * a bounded lattice walk), so localization at T_{z^{-1}} reaches every
 * torus class.
 */
class LeviDatum {
 public:
  LeviDatum(const GroupDatum& ambient, const WElt& z);

  /// The default datum: z = diag(p^{-1}, p) for sl2, diag(1, p) for gl2.
  static LeviDatum standard(GroupKind ambient_kind, uint32_t p);

  const GroupDatum& ambient() const { return ambient_; }
  const GroupDatum& torus() const { return torus_; }
  const WElt& z() const { return z_; }

 private:
  GroupDatum ambient_;
  GroupDatum torus_;
  WElt z_;
};

/**
 * Parabolic induction of a smooth torus character.  The result is the
 * two-dimensional module whose first basis vector v is cyclic and satisfies
 * v * theta(T_t) = chi(t) * v for every positive torus class t.
 *
 * The module is produced by an enumeration oracle: candidate structures in
 * the basis (v, v*T_{s~1}) are solved from the defining relations, then
 * audited (relations, the eigenvector property on monoid generators,
 * cyclicity, and R(result) ~= chi).  Exactly one isomorphism class must
 * survive; zero or several throw std::runtime_error, since either indicates
 * an inconsistent presentation rather than a user error.
 */
HModule induce(const LeviDatum& levi, const SmoothCharacter& chi);

/**
 * Right adjoint of induce on a finite-dimensional module m.  Concretely:
 * A = act of T_{z^{-1}}, E = eventual image of A (where A becomes
 * invertible), and a torus class t acts on E by
 *   act(T_{t z^{-k}})|_E * (A|_E)^{-k}
 * for the minimal k >= 0 with t z^{-k} positive.  Independence from the
 * choice of k is audited by recomputing with k + 1; an audit failure throws
 * std::runtime_error.  The result lives over the torus datum; a vanishing
 * eventual image gives the zero module.
 */
HModule right_adjoint(const LeviDatum& levi, const HModule& m);

/// Outcome of the adjunction comparison for one (character, module) pair.
struct AdjunctionReport {
  size_t induced_side = 0;  ///< dim Hom_H(Ind(chi), m)
  size_t adjoint_side = 0;  ///< dim Hom_{H_T}(chi, R(m))
  bool ok = false;          ///< the two dimensions agree
  std::string detail;       ///< printable one-line summary
};

/// Computes both sides of dim Hom_H(Ind(chi), m) = dim Hom_{H_T}(chi, R(m)).
/// Inequality is reported, not thrown.
AdjunctionReport adjunction_check(const LeviDatum& levi,
                                  const SmoothCharacter& chi,
                                  const HModule& m);

}  // namespace hecke
