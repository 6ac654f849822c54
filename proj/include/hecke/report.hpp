#pragma once
// Verification reports: the outcome of running one fixture's checks,
// together with serializers.  The structured (JSON) form is byte-stable for
// fixed inputs: the measured time is normalized to 0 there, and key order
// is fixed.  The human form is a small table and includes the measured
// time.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hecke/fixtures.hpp"

namespace hecke {

struct VerificationReport {
  std::string fixture_id;
  uint32_t p = 5;
  uint64_t q = 5;             ///< residue field size p^e
  std::string group_tag;
  bool assume_split = false;
  double timing_ms = 0.0;     ///< wall time of the checks (human form only)
  std::vector<CheckOutcome> checks;

  /// fail if any check fails, else inconclusive if any check is, else pass.
  CheckResult::Status overall() const;
};

std::string status_word(CheckResult::Status s);

/// Loads the fixture and runs its checks, timing the run.
VerificationReport verify_fixture(const std::string& id, uint32_t p,
                                  uint32_t field_e, bool assume_split = false);

/// Every registry fixture, ordered by id.
std::vector<VerificationReport> verify_all(uint32_t p, uint32_t field_e,
                                           bool assume_split = false);

nlohmann::ordered_json structured_report(const VerificationReport& report);
nlohmann::ordered_json structured_report(
    const std::vector<VerificationReport>& reports);

std::string human_report(const VerificationReport& report);
std::string human_report(const std::vector<VerificationReport>& reports);

/// True when no check in any report failed (inconclusive does not fail).
bool all_clear(const std::vector<VerificationReport>& reports);

}  // namespace hecke
