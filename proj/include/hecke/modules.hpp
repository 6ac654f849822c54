#pragma once
/**
 * Finite-dimensional right modules over the mod-p Hecke algebras of
 * algebra.hpp, given by explicit matrices over F_q acting on row vectors.
 *
 * A module is specified by one matrix per affine generator T_{s~i} (none for
 * torus data) plus one matrix per length-zero generator, in the order of
 * GroupDatum::length_zero_generators().  The constructor replays the defining
 * relations of the algebra on this data and throws std::invalid_argument on
 * any inconsistency, so every live HModule is an actual module.
 *
 * On top of the raw type sit the structural operations used everywhere else:
 * duals, character twists, direct sums (with their decomposition recorded),
 * sub/quotient extraction, Hom spaces, isomorphism testing with explicit
 * witnesses, composition series, and a small-dimension classifier for simple
 * modules with a fixed length-zero action.
 */
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hecke/algebra.hpp"
#include "hecke/characters.hpp"
#include "hecke/linalg.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

class HModule {
 public:
  /// simple_mats = matrices of T_{s~0}, T_{s~1} (empty for torus kinds);
  /// omega_mats matches GroupDatum::length_zero_generators() order.
  HModule(const GroupDatum& group, uint32_t field_e,
          std::vector<Mat> simple_mats, std::vector<Mat> omega_mats,
          std::string name);

  const GroupDatum& group() const { return group_; }
  uint32_t field_e() const { return field_e_; }
  uint32_t p() const { return group_.p(); }
  uint64_t q() const;
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  const Mat& simple_mat(int i) const;
  const std::vector<Mat>& omega_gen_mats() const { return omega_; }
  /// The generating matrices in a fixed order (simples then length-zero);
  /// intertwining with these is intertwining with the whole algebra.
  std::vector<const Mat*> generator_mats() const;
  std::vector<WElt> generator_elts() const;

  /// Matrix of T_w acting on row vectors (any class of the group).
  Mat act(const WElt& w) const;
  Mat act(const HElt& x) const;
  /// Matrix of T_w for a length-zero w.
  Mat act_omega(const WElt& w) const;

  /// Recorded direct-sum decomposition: nonempty only for modules built by
  /// direct_sum (and transported through make_dual / make_twist).
  const std::vector<std::shared_ptr<const HModule>>& summands() const {
    return summands_;
  }

  std::string str() const;

 private:
  void audit() const;

  GroupDatum group_;
  uint32_t field_e_ = 1;
  int dim_ = 0;
  std::string name_;
  std::vector<Mat> simple_;
  std::vector<Mat> omega_;
  // Matrices of every finite-torus class, built by closing the generator
  // matrices (conflicts caught during the closure).
  std::map<std::string, Mat> fin_;
  // Positions in omega_ of the special generators, found by inspecting the
  // generator elements: pi (gl2), and the free diagonal generators with their
  // elements (torus kinds).
  int pi_index_ = -1;
  std::vector<std::pair<WElt, int>> free_diag_;
  std::vector<std::shared_ptr<const HModule>> summands_;

  friend HModule direct_sum(const std::vector<HModule>& parts);
};

/// One-dimensional module attached to a character of the algebra.
HModule from_hcharacter(const HCharacter& chi);
/// One-dimensional module over a torus algebra.
HModule from_smooth_character(const SmoothCharacter& chi);
/// The zero module over the given algebra.
HModule zero_module(const GroupDatum& g, uint32_t field_e);

HModule direct_sum(const std::vector<HModule>& parts);
HModule direct_sum(const HModule& a, const HModule& b);
HModule direct_power(const HModule& m, int k);

/// Dual module: T_w acts by the transpose of T_{w^{-1}}.  Applying it twice
/// reproduces the original matrices exactly.
HModule make_dual(const HModule& m);

/**
 * Character of the ambient group trivial on the pro-p Iwahori subgroup: it
 * factors through the determinant as (unit part)^r * c^(valuation).  On sl2
 * data every such character is trivial.
 */
struct GChar {
  GroupKind kind = GroupKind::gl2;
  uint32_t p = 0;
  uint32_t field_e = 1;
  uint32_t r = 0;  ///< exponent on the unit part of det, mod p - 1
  Fq c;            ///< value on classes of det-valuation 1 (nonzero)

  static GChar trivial(const GroupDatum& g, uint32_t field_e);
  static GChar make(const GroupDatum& g, uint32_t field_e, uint32_t r,
                    const Fq& c);
  Fq eval(const WElt& w) const;
  bool is_trivial() const;
  std::string str() const;
};

/// Twist by a group character: T_w acts by xi(w) times the old action.  The
/// result is validated like any module (a twist that breaks the quadratic
/// relation on this particular module is rejected).
HModule make_twist(const HModule& m, const GChar& xi);

/// Submodule on the (invariant) row space of `rows`, in that basis.
HModule sub_module(const HModule& m, const Mat& rows);
/// Quotient by the invariant row space of `rows`.
HModule quotient_module(const HModule& m, const Mat& rows);

/// Basis of the space of module homomorphisms m -> n (matrices F with
/// rho_m(g) F = F rho_n(g) for every generator, mapping row coordinates of m
/// to row coordinates of n by right multiplication: v -> v F).
std::vector<Mat> hom_space(const HModule& m, const HModule& n);
size_t hom_dim(const HModule& m, const HModule& n);
bool verify_intertwiner(const HModule& m, const HModule& n, const Mat& f);

struct IsoResult {
  enum class Status { yes, no, inconclusive };
  Status status = Status::inconclusive;
  Mat witness;  ///< verified invertible intertwiner (status yes only)
  std::string detail;
  bool ok() const { return status == Status::yes; }
};

/**
 * Isomorphism test.  Decisive whenever dim Hom <= 3 (exhaustive search over
 * the projectivized Hom space), whenever the projective search fits in a
 * fixed budget, or whenever both sides carry recorded direct-sum
 * decompositions that can be matched summand by summand.  A yes always comes
 * with a verified witness; inconclusive is reported as such, never as no.
 */
IsoResult is_isomorphic(const HModule& m, const HModule& n);

/// No proper nonzero invariant subspace (dimension budget as below).
bool is_simple(const HModule& m);

/// Composition factors, innermost first: the first entry is a simple
/// submodule, then a simple submodule of the quotient, and so on.
/// Dimension budget: dim <= 4.
std::vector<HModule> composition_factors(const HModule& m);

/// T_{z^{-1}} eventually zero (z the standard translation of the group).
bool translation_nilpotent(const HModule& m);

/**
 * All simple modules of the given dimension (1 or 2) whose length-zero
 * action is exactly the supplied matrices, up to isomorphism, found by
 * exhausting the affine generator matrices against the defining relations.
 */
std::vector<HModule> classify_simples(const GroupDatum& g, uint32_t field_e,
                                      int dim,
                                      const std::vector<Mat>& omega_mats);

/// The simple 2-dimensional gl2 module with nilpotent T_{z^{-1}} over the
/// standard weight-r length-zero datum (diagonal finite torus action with
/// exponents (r, 0) and (0, r), T_pi swapping the two lines).
HModule supersingular_gl2(uint32_t p, uint32_t field_e, uint32_t r);

/// The analogous sl2 module for r in [0, p-1].  Interior r give the unique
/// structure with both affine generators acting by zero; the two boundary
/// labels r = 0 and r = p - 1 select the structure where T_{s~0}
/// (respectively T_{s~1}) acts by -1 and the other by 0.
HModule supersingular_sl2(uint32_t p, uint32_t field_e, uint32_t r);

}  // namespace hecke
