#include "hecke/report.hpp"

#include <chrono>
#include <sstream>

namespace hecke {

CheckResult::Status VerificationReport::overall() const {
  bool inconclusive = false;
  for (const auto& c : checks) {
    if (c.status == CheckResult::Status::fail) return CheckResult::Status::fail;
    if (c.status == CheckResult::Status::inconclusive) inconclusive = true;
  }
  return inconclusive ? CheckResult::Status::inconclusive
                      : CheckResult::Status::pass;
}

std::string status_word(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::pass: return "pass";
    case CheckResult::Status::fail: return "fail";
    default: return "inconclusive";
  }
}

VerificationReport verify_fixture(const std::string& id, uint32_t p,
                                  uint32_t field_e, bool assume_split) {
  VerificationReport report;
  report.fixture_id = id;
  report.p = p;
  report.q = 1;
  for (uint32_t k = 0; k < field_e; ++k) report.q *= p;
  report.assume_split = assume_split;

  const auto start = std::chrono::steady_clock::now();
  Fixture fx = load_fixture(id, p, field_e);
  report.group_tag = fx.group_tag();
  report.checks = run_checks(fx, assume_split);
  const auto stop = std::chrono::steady_clock::now();
  report.timing_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

std::vector<VerificationReport> verify_all(uint32_t p, uint32_t field_e,
                                           bool assume_split) {
  std::vector<VerificationReport> out;
  for (const std::string& id : fixture_registry())
    out.push_back(verify_fixture(id, p, field_e, assume_split));
  return out;
}

nlohmann::ordered_json structured_report(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["fixture"] = report.fixture_id;
  j["config"] = {{"p", report.p},
                 {"q", report.q},
                 {"group", report.group_tag},
                 {"assume_split", report.assume_split}};
  j["status"] = status_word(report.overall());
  j["timing_ms"] = 0;  // normalized for byte-stable output
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"status", status_word(c.status)},
                      {"witness", c.detail},
                      {"citation", c.citation}});
  }
  j["checks"] = std::move(checks);
  return j;
}

nlohmann::ordered_json structured_report(
    const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : reports) j.push_back(structured_report(r));
  return j;
}

std::string human_report(const VerificationReport& report) {
  std::ostringstream out;
  out << "fixture " << report.fixture_id << "  (group " << report.group_tag
      << ", p = " << report.p << ", q = " << report.q;
  if (report.assume_split) out << ", assuming the extension splits";
  out << ")\n";
  out << "  status: " << status_word(report.overall()) << "  ["
      << static_cast<long long>(report.timing_ms + 0.5) << " ms, "
      << report.checks.size() << " checks]\n";
  for (const auto& c : report.checks) {
    out << "    " << status_word(c.status);
    for (size_t pad = status_word(c.status).size(); pad < 13; ++pad)
      out << ' ';
    out << c.name << "  -- " << c.citation << "\n";
    if (c.status != CheckResult::Status::pass && !c.detail.empty()) {
      // Indent multi-line details under their check.
      std::istringstream lines(c.detail);
      std::string line;
      while (std::getline(lines, line)) out << "        " << line << "\n";
    }
  }
  return out.str();
}

std::string human_report(const std::vector<VerificationReport>& reports) {
  std::string out;
  int fails = 0;
  int inconclusive = 0;
  size_t total = 0;
  for (const auto& r : reports) {
    out += human_report(r);
    total += r.checks.size();
    for (const auto& c : r.checks) {
      if (c.status == CheckResult::Status::fail) ++fails;
      if (c.status == CheckResult::Status::inconclusive) ++inconclusive;
    }
  }
  out += "total: " + std::to_string(reports.size()) + " fixtures, " +
         std::to_string(total) + " checks, " + std::to_string(fails) +
         " failed, " + std::to_string(inconclusive) + " inconclusive\n";
  return out;
}

bool all_clear(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (r.overall() == CheckResult::Status::fail) return false;
  return true;
}

}  // namespace hecke
