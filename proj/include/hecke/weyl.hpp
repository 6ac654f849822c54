/**
 * weyl.hpp — pro-p variants of (extended) affine Weyl groups in rank one.
 *
 * Elements are monomial matrices over Q_p taken modulo principal units:
 * every nonzero entry is u * p^v with u in {1, ..., p-1} and v an integer.
 * This quotient is exactly what indexes the standard basis of the Hecke
 * algebras built on top (algebra.hpp).
 *
 * Four group data are supported: sl2 and gl2 (2x2 monomial matrices, with
 * the determinant-one constraint for sl2) and their diagonal tori.  Lengths
 * come from the action on the affine line (x -> eps*x + m), under which
 *   diag(p^a, p^b)            acts as x -> x + (b - a),
 *   antidiag entries p^c, p^d acts as x -> (d - c) - x,
 * and ell = |m| for eps = +1, |m - 1| for eps = -1.  Torus data have length
 * zero throughout.  In the rank-one affine Weyl group every element has a
 * unique reduced word, found by repeatedly splitting off the unique left
 * descent.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hecke {

/// One nonzero entry of a monomial matrix: unit * p^val, unit in 1..p-1.
/// unit == 0 encodes a zero entry (only returned by accessors).
struct MonomialEntry {
  uint32_t unit = 0;
  int64_t val = 0;
};

/// Monomial matrix modulo principal units.
class WElt {
 public:
  WElt() = default;

  static WElt identity(int n, uint32_t p);
  /// Diagonal element; entries[i] = (unit, val), unit taken mod p (nonzero).
  static WElt diagonal(uint32_t p,
                       const std::vector<std::pair<int64_t, int64_t>>& entries);
  /// General monomial element: row i has its nonzero entry in column col[i],
  /// equal to unit[i] * p^(val[i]).  col must be a permutation.
  static WElt monomial(uint32_t p, const std::vector<int>& col,
                       const std::vector<int64_t>& unit,
                       const std::vector<int64_t>& val);

  int n() const { return n_; }
  uint32_t p() const { return p_; }
  int col_of_row(int i) const { return col_[static_cast<size_t>(i)]; }
  /// Entry at (i, j); unit == 0 means the entry is zero.
  MonomialEntry entry(int i, int j) const;

  WElt operator*(const WElt& rhs) const;
  WElt inverse() const;
  /// w^k for any integer k (negative powers via inverse).
  WElt pow(int64_t k) const;
  bool operator==(const WElt& rhs) const;
  bool operator!=(const WElt& rhs) const { return !(*this == rhs); }

  bool is_diagonal() const;
  int64_t val_sum() const;
  /// Determinant of the class: (unit mod p, valuation).
  MonomialEntry det() const;

  /// Canonical serialization, usable as a hash/map key.
  std::string key() const;
  /// Human-readable form, e.g. "diag(1*p^-1, 1*p^1)".
  std::string str() const;

 private:
  uint32_t p_ = 0;
  int n_ = 0;
  std::vector<int> col_;
  std::vector<uint32_t> unit_;
  std::vector<int64_t> val_;
};

enum class GroupKind { sl2, gl2, torus_sl2, torus_gl2 };

std::string to_string(GroupKind kind);
/// Parses "sl2", "gl2", "torus_sl2", "torus_gl2"; throws std::invalid_argument.
GroupKind group_kind_from_string(const std::string& name);

/// A supported p-adic group together with its chosen generator lifts.
class GroupDatum {
 public:
  GroupDatum(GroupKind kind, uint32_t p);

  GroupKind kind() const { return kind_; }
  uint32_t p() const { return p_; }
  bool is_torus() const;
  /// The diagonal torus datum of this group (identity on torus data).
  GroupDatum torus() const;
  /// Matrix size of the elements (always 2 here).
  int dim() const { return 2; }

  /// Membership of a monomial class in this group (shape + determinant).
  bool contains(const WElt& w) const;

  /// Lift of the simple affine reflection s_i, i in {0, 1} (non-torus only).
  WElt simple_lift(int i) const;
  /// gl2 only: the length-zero generator of the extended part.
  WElt pi_lift() const;
  /// Translation element z: diag(p^-1, p) for sl2, diag(1, p) for gl2;
  /// available on torus data as well (same matrices).
  WElt z_elt() const;

  /// All unit-diagonal elements of the finite torus inside this group.
  std::vector<WElt> finite_torus() const;
  /// Generators of the length-zero subgroup (finite torus generators, plus
  /// pi for gl2).  Torus data additionally include z.
  std::vector<WElt> length_zero_generators() const;
  /// Elements appearing in the quadratic relation coefficient: the classes
  /// diag(u, u^-1) for u in F_p^* (shared by both simple reflections).
  std::vector<WElt> c_set() const;

  int64_t length(const WElt& w) const;

  struct ReducedWord {
    std::vector<int> word;  // indices in {0, 1}; w = lifts(word) * omega
    WElt omega;             // length-zero remainder
  };
  /// The unique reduced decomposition w = s~_{i1} ... s~_{ik} * omega.
  ReducedWord reduced_word(const WElt& w) const;

  /// Diagonal with weakly decreasing valuations (dominant/positive classes).
  bool is_positive(const WElt& w) const;

  /// gl2 length-zero elements factor uniquely as pi^k * t with t in the
  /// finite torus; returns (k, t).  For sl2, k = 0 and t = w.
  std::pair<int64_t, WElt> omega_decompose(const WElt& w) const;

 private:
  GroupKind kind_;
  uint32_t p_;
};

}  // namespace hecke
