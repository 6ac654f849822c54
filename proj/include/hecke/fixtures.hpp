#pragma once
// Fixture files: machine-readable example data — cohomology tables, build
// recipes, and expected relations — living in fixtures/*.fix and compiled
// into the library as an embedded registry.
//
// File grammar ('#' starts a comment, blank lines are skipped):
//
//   [fixture <id>]
//   cite "<citation>"
//   group sl2 | gl2 | gl3
//
//   build
//     <name> = trivialchar                     torus character 1
//     <name> = alphabar                        reduced positive root
//     <name> = smooth e1[,e2] : u1[,u2]        torus character from data
//     <name> = dualize <char>                  chi^-1 times the dualizing char
//     <name> = hchar trivial|sign|sign-star|trivial-star
//     <name> = smoothmod <char>                torus-side rank-one module
//     <name> = induce <char>                   parabolic induction
//     <name> = dual <module>
//     <name> = twist <module> r,c              twist by the det character (r, c)
//     <name> = sum <m1> <m2> [...]
//     <name> = power <module> <k>
//     <name> = ss <r>                          simple supersingular module
//     <name> = zero
//     <name> = table <top> : <tok> ...         slots by degree 0, 1, ...;
//                                              tok = module name or slot literal
//     page <line in the page grammar>
//     splitpatch E2 <i> <j> = <entry>          patch applied in split mode
//
//   expect                                     (optional trailing: cite "<...>")
//     iso <a> <b>
//     noniso <a> <b>
//     dim <module> <n>
//     simple <module>
//     factors <module> : <f1> <f2> ...
//     localize <module> <rhs|0>
//     poincare <table>
//     shift <twisted> <plain> <k> [<char>]
//     ordinary <rows> <big>
//     deduce abutment <m> = <slot>
//     deduce entry <i> <j> = <slot>
//     no-extra-identifications
//     consistent
//
// Integer tokens may use the form `p-<k>` for prime-dependent indices.
// Unknown statements are rejected at load time, so a fixture can never
// declare a relation the library has no check for.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hecke/characters.hpp"
#include "hecke/functors.hpp"
#include "hecke/modules.hpp"
#include "hecke/spectral.hpp"
#include "hecke/weyl.hpp"

namespace hecke {

/// One fixture file baked into the library by the build (see
/// cmake/embed_fixtures.cmake).  `name` is the original file name.
struct EmbeddedFixtureFile {
  std::string name;
  std::string text;
};

/// The generated registry, ordered by file name.
const std::vector<EmbeddedFixtureFile>& embedded_fixture_files();

/// One expected relation, resolved against the fixture environment.
struct Expectation {
  std::string core;      ///< canonical statement text (verb + arguments)
  std::string verb;
  std::vector<std::string> args;
  std::string citation;  ///< per-line citation, defaulted from the header
};

/**
 * A parsed and fully resolved fixture: every named character, module and
 * table has been constructed for a concrete prime, and every expectation
 * has been validated against the registered check vocabulary.  Read-only
 * after construction.
 */
class Fixture {
 public:
  /// Parses and resolves one fixture block.  Throws std::invalid_argument
  /// on grammar errors, unknown statements, or unresolved names, and
  /// std::runtime_error when a construction oracle fails.
  static Fixture from_text(const std::string& text, uint32_t p,
                           uint32_t field_e);

  const std::string& id() const { return id_; }
  const std::string& group_tag() const { return group_tag_; }
  const std::string& citation() const { return citation_; }
  uint32_t p() const { return p_; }
  uint32_t field_e() const { return field_e_; }

  /// False exactly for bookkeeping-only tags (gl3) with no module layer.
  bool has_group() const { return group_.has_value(); }
  const GroupDatum& group() const;
  const LeviDatum& levi() const;

  const std::map<std::string, SmoothCharacter>& characters() const {
    return chars_;
  }
  const std::map<std::string, HModule>& modules() const { return modules_; }
  const std::map<std::string, CohomologyTable>& tables() const {
    return tables_;
  }

  bool has_page() const { return page_.has_value(); }
  const E2Page& page() const;
  bool has_split_patch() const { return split_patch_.has_value(); }
  /// The page with the split-mode patch applied.
  E2Page patched_page() const;

  const std::vector<Expectation>& expectations() const { return expects_; }

  /// Set when the fixture was narrowed to one table degree ("<id>.h<n>").
  bool has_focus() const { return focus_degree_ >= 0; }
  int focus_degree() const { return focus_degree_; }
  /// The slot of the main table (named "h") at the focus degree.
  const Slot& focus() const;

  /// Canonical serialization; parsing it back yields the same fixture.
  std::string to_text() const;

 private:
  Fixture() = default;

  std::string id_;
  std::string group_tag_;
  std::string citation_;
  uint32_t p_ = 5;
  uint32_t field_e_ = 1;
  std::optional<GroupDatum> group_;
  std::optional<LeviDatum> levi_;
  std::map<std::string, SmoothCharacter> chars_;
  std::map<std::string, HModule> modules_;
  std::map<std::string, CohomologyTable> tables_;
  std::optional<E2Page> page_;
  struct SplitPatch {
    int i = 0, j = 0;
    Slot slot;
    std::string raw;
  };
  std::optional<SplitPatch> split_patch_;
  std::vector<std::string> build_lines_;  ///< canonical build section
  std::vector<Expectation> expects_;
  int focus_degree_ = -1;
  std::optional<Slot> focus_;

  friend Fixture load_fixture(const std::string& id, uint32_t p,
                              uint32_t field_e);
};

/// Registry ids (sorted).  Reads the directory named by the environment
/// variable HECKE_FIXTURE_DIR when set, the embedded files otherwise.
std::vector<std::string> fixture_registry();

/// Raw fixture text by registry id.  Throws on unknown ids.
std::string fixture_source_text(const std::string& id);

/**
 * Loads and resolves a fixture.  `id` is either a registry id or a
 * narrowed form "<registry-id>.h<n>" addressing degree n of the fixture's
 * main cohomology table.  Errors carry the fixture id in their message.
 */
Fixture load_fixture(const std::string& id, uint32_t p = 5,
                     uint32_t field_e = 1);

/// Outcome of one fixture check, ready for report assembly.
struct CheckOutcome {
  std::string name;
  CheckResult::Status status = CheckResult::Status::inconclusive;
  std::string detail;
  std::string citation;
};

/**
 * Runs every expectation of the fixture and returns one outcome per check
 * (multi-part checks such as `poincare` contribute one outcome per degree).
 * With `assume_split` set, page-based checks run against the patched page,
 * so a fixture carrying a splitpatch records the resulting contradiction.
 */
std::vector<CheckOutcome> run_checks(const Fixture& fixture,
                                     bool assume_split = false);

}  // namespace hecke
