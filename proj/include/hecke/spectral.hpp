/**
 * spectral.hpp — first-quadrant spectral-sequence bookkeeping over exact
 * dimensions and module handles.
 *
 * A Slot is one table or grid entry: zero, a formal dimension (optionally
 * named), a resolved module handle, or unknown.  CohomologyTable maps
 * degrees to slots below a declared top degree; E2Page is a sparse grid with
 * differentials d_r: (i, j) -> (i + r, j - r + 1) converging to a table,
 * either at total degree i + j (mode sum) or at cd - i - j with dualized
 * values (mode dual).
 *
 * Checkers: poincare_check compares complementary degrees of one table
 * through dual-plus-twist; duality_shift_check does the same across two
 * tables at complementary degrees for a parabolic dimension; ordinary_check
 * reconstructs localized cohomology from a two-row page with binomial
 * multiplicities; ss_propagate performs sound constraint propagation (zero
 * antidiagonals, corner identifications, forced-zero entries, forced
 * differential isomorphisms) and reports contradictions with the conflicting
 * constraint set.
 *
 * Page text grammar (whitespace-insensitive, '#' starts a comment):
 *   cd = <int>                 required; abutment vanishes outside [0, cd]
 *   mode = sum | dual          optional, default sum
 *   tag = <word>               optional label echoed in reports
 *   E2 <i> <j> = <entry>       grid cell (first quadrant)
 *   abutment <m> = <entry>     declared abutment constraint
 * where <entry> is '?', a nonnegative integer dimension, or <name>(<dim>).
 * Undeclared cells are zero.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/functors.hpp"
#include "hecke/modules.hpp"

namespace hecke {

/// One entry of a table or grid.
class Slot {
 public:
  enum class Kind { zero, formal, module, unknown };

  Slot() = default;  // zero
  static Slot zero();
  static Slot unknown();
  /// Formal dimension, optionally carrying a module name; dim 0 collapses
  /// to the zero slot.
  static Slot formal(int dim, std::string name = "");
  static Slot of_module(const HModule& m);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::zero; }
  bool is_unknown() const { return kind_ == Kind::unknown; }
  /// Could this entry be nonzero, for all we know?
  bool possibly_nonzero() const { return kind_ != Kind::zero; }
  /// Known dimension; throws std::logic_error on unknown slots.
  int dim() const;
  /// Name of a formal or module slot ("" when absent).
  const std::string& name() const { return name_; }
  bool has_module() const { return module_ != nullptr; }
  const HModule& module() const;

  /// Grammar form: "0", "?", "<dim>" or "<name>(<dim>)".
  std::string str() const;
  /// Parses the grammar form above; throws std::invalid_argument.
  static Slot parse(const std::string& token);

 private:
  Kind kind_ = Kind::zero;
  int dim_ = 0;
  std::string name_;
  std::shared_ptr<const HModule> module_;
};

/// Degree-indexed module data with a top degree above which entries vanish.
class CohomologyTable {
 public:
  CohomologyTable(std::string tag, int top);

  const std::string& tag() const { return tag_; }
  int top() const { return top_; }

  /// Sets the entry in degree n; nonzero entries above top or below 0 are
  /// rejected (std::invalid_argument).
  void set(int degree, Slot s);
  /// Declared entry, zero outside [0, top], unknown when undeclared inside.
  Slot at(int degree) const;

  std::string str() const;

 private:
  std::string tag_;
  int top_ = 0;
  std::map<int, Slot> entries_;
};

/// How grid coordinates meet the abutment.
enum class PageMode { sum, dual };

/// Sparse first-quadrant page with declared cells and abutment constraints.
struct E2Page {
  int cd = -1;
  PageMode mode = PageMode::sum;
  std::string tag;
  std::map<std::pair<int, int>, Slot> cells;
  std::map<int, Slot> abutment;

  /// Declared cell or zero.
  Slot cell(int i, int j) const;
  /// Declared constraint, zero outside [0, cd], else unknown.
  Slot abutment_at(int m) const;
  /// Abutment degree fed by the antidiagonal i + j = n.
  int abutment_degree(int n) const {
    return mode == PageMode::sum ? n : cd - n;
  }
};

/// Parses the page grammar documented in the header comment.
E2Page parse_page(const std::string& text);
std::string to_text(const E2Page& page);

/// Yes/no/can't-tell outcome of one named check.
struct CheckResult {
  enum class Status { pass, fail, inconclusive };
  std::string name;
  Status status = Status::inconclusive;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  bool any_fail() const;
  std::string str() const;
};

/// Compares two slots as modules: pass/fail via is_isomorphic when both are
/// resolved (zero counting as the zero module), inconclusive on unknown or
/// formal entries.  `transform` names the applied right-hand transformation
/// in the detail line.
CheckResult compare_slots(const std::string& check_name, const Slot& lhs,
                          const Slot& rhs_raw, const Slot& rhs_transformed,
                          const std::string& transform);

/// Degreewise self-duality of a table: entry i against the twisted dual of
/// entry top - i for every i.
CheckReport poincare_check(const CohomologyTable& table, const GChar& xi);

/// Cross-table duality at complementary degrees i and dim_p - i: the
/// `twisted` table (built from chi^{-1} chi_P) against the dual of the
/// `plain` table (built from chi), twisted by xi.
CheckReport duality_shift_check(const SmoothCharacter& chi,
                                const CohomologyTable& twisted,
                                const CohomologyTable& plain, int dim_p,
                                const GChar& xi);

/// Overload with no labelling character (data not induced from one).
CheckReport duality_shift_check(const CohomologyTable& twisted,
                                const CohomologyTable& plain, int dim_p,
                                const GChar& xi);

/// The character by which duality twists parabolically induced data: the
/// product of the positive roots outside the Levi, reduced mod p.  For the
/// Borel (levi = diagonal torus) this is alpha_bar; for levi = ambient the
/// empty product is trivial.  Other data are rejected.
SmoothCharacter dualizing_character(const GroupDatum& ambient,
                                    const GroupDatum& levi, uint32_t field_e);

/// dim H^i of a rank-n torus pro-p group with trivial coefficients:
/// binomial(n, i) (exterior algebra), 0 outside [0, n].
int64_t torus_cohomology(int rank, int degree);

/**
 * Two-row ordinary-parts consistency: m_table holds the localized values in
 * rows j = 0, 1 (top degree 1 over the torus); big_table holds ambient
 * modules.  When exactly one row is nonzero the page degenerates and degree
 * n of the localized big table must match row j with multiplicity
 * binomial(rank, n - j); with both rows nonzero every degree is reported
 * inconclusive.  rank is 2 for the gl2 torus and 1 for the sl2 torus.
 */
CheckReport ordinary_check(const CohomologyTable& m_table,
                           const CohomologyTable& big_table,
                           const LeviDatum& levi);

/// One deduced fact: either about an abutment degree or about a grid cell.
struct Fact {
  enum class Target { abutment, entry };
  Target target = Target::abutment;
  int degree = 0;         ///< abutment degree (Target::abutment)
  int i = 0, j = 0;       ///< cell coordinates (Target::entry)
  bool is_zero = false;   ///< the identified value vanishes
  int dim = -1;           ///< deduced dimension, -1 when not pinned
  std::string name;       ///< carried module name, "" when absent
  bool dualized = false;  ///< value is the dual of the named cell content
  std::string rule;       ///< producing rule tag
  std::string detail;
  std::string str() const;
};

/// Result of constraint propagation on a page.
struct Propagation {
  std::vector<Fact> facts;
  bool contradiction = false;
  std::vector<std::string> conflict;  ///< minimal conflicting constraint set
  std::string str() const;
};

/**
 * Sound fixed-point propagation:
 *  - zero antidiagonal: all cells on an antidiagonal vanish => abutment 0;
 *  - corner: a single possibly-nonzero cell with no reachable differential
 *    partners identifies the abutment degree (dualized in mode dual);
 *  - forced zero: a cell whose abutment degree vanishes and which has no
 *    differential partners must itself vanish;
 *  - capacity: such a cell with known dimension larger than the total
 *    dimension of its possible partners is a contradiction;
 *  - forced isomorphism: two cells that must both die and can only trade
 *    rank with each other through a single differential are identified.
 * Facts are tagged with the producing rule; contradictions carry the
 * conflicting constraints.  Adding cells or constraints never retracts a
 * previously derivable fact (monotonicity is exercised in the tests).
 */
Propagation ss_propagate(const E2Page& page);

}  // namespace hecke
