#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "hecke/fixtures.hpp"
#include "hecke/functors.hpp"
#include "hecke/modules.hpp"

using namespace hecke;

namespace {

int count_status(const std::vector<CheckOutcome>& res,
                 CheckResult::Status st) {
  int n = 0;
  for (const auto& c : res)
    if (c.status == st) ++n;
  return n;
}

// Restores the fixture-directory override on scope exit.
struct EnvGuard {
  ~EnvGuard() { unsetenv("HECKE_FIXTURE_DIR"); }
};

}  // namespace

TEST_CASE("the registry lists the ten fixtures in order") {
  std::vector<std::string> ids = fixture_registry();
  std::vector<std::string> want = {
      "findim.duality",  "gl2.ps",           "gl2.steinberg",
      "gl2.supersingular", "gl2.trivial",    "gl3.steinberg",
      "sl2.ps",          "sl2.steinberg",    "sl2.supersingular",
      "sl2.trivial"};
  CHECK(ids == want);
  CHECK_THROWS_AS(load_fixture("gl4.trivial", 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(fixture_source_text("nope"), std::invalid_argument);
}

TEST_CASE("fixtures resolve into concrete tables and modules") {
  Fixture fx = load_fixture("sl2.trivial", 5, 1);
  CHECK(fx.id() == "sl2.trivial");
  CHECK(fx.group_tag() == "sl2");
  CHECK(fx.p() == 5);
  CHECK(fx.has_group());
  CHECK_FALSE(fx.has_page());
  CHECK_FALSE(fx.has_focus());

  const CohomologyTable& h = fx.tables().at("h");
  CHECK(h.top() == 3);
  CHECK(h.at(0).dim() == 1);
  CHECK(h.at(3).dim() == 1);
  HModule ind = induce(fx.levi(),
                       SmoothCharacter::alpha_bar(fx.levi().torus(), 1));
  CHECK(is_isomorphic(h.at(1).module(), ind).ok());
  CHECK(is_isomorphic(h.at(2).module(), ind).ok());

  // Citations default to the header and ride along on every expectation.
  for (const auto& ex : fx.expectations()) CHECK_FALSE(ex.citation.empty());
}

TEST_CASE("narrowed ids address a single table degree") {
  Fixture fx = load_fixture("gl2.steinberg.h1", 5, 1);
  CHECK(fx.id() == "gl2.steinberg.h1");
  CHECK(fx.has_focus());
  CHECK(fx.focus_degree() == 1);
  REQUIRE(fx.focus().has_module());

  GroupDatum g(GroupKind::gl2, 5);
  LeviDatum levi = LeviDatum::standard(GroupKind::gl2, 5);
  HModule want = direct_sum(
      induce(levi, SmoothCharacter::trivial(levi.torus(), 1)),
      from_hcharacter(h_sign_star(g, 1)));
  CHECK(is_isomorphic(fx.focus().module(), want).ok());

  Fixture ss = load_fixture("gl2.supersingular.h1", 5, 1);
  REQUIRE(ss.focus().has_module());
  CHECK(is_isomorphic(ss.focus().module(),
                      direct_power(supersingular_gl2(5, 1, 1), 3))
            .ok());

  // Degree 2 of the same table is recorded by dimension only.
  Fixture f2 = load_fixture("gl2.steinberg.h2", 5, 1);
  CHECK_FALSE(f2.focus().has_module());
  CHECK(f2.focus().dim() == 3);

  CHECK_THROWS_AS(load_fixture("gl2.trivial.h9", 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(load_fixture("gl3.steinberg.h1", 5, 1),
                  std::invalid_argument);
}

TEST_CASE("every fixture verifies cleanly at both primes") {
  const std::map<std::string, int> want_checks = {
      {"findim.duality", 3},  {"gl2.ps", 10},           {"gl2.steinberg", 14},
      {"gl2.supersingular", 9}, {"gl2.trivial", 12},    {"gl3.steinberg", 6},
      {"sl2.ps", 9},          {"sl2.steinberg", 7},     {"sl2.supersingular", 12},
      {"sl2.trivial", 9}};
  for (uint32_t p : {5u, 7u}) {
    for (const std::string& id : fixture_registry()) {
      CAPTURE(id);
      CAPTURE(p);
      Fixture fx = load_fixture(id, p, 1);
      auto res = run_checks(fx);
      CHECK(static_cast<int>(res.size()) == want_checks.at(id));
      CHECK(count_status(res, CheckResult::Status::fail) == 0);
      // The only unresolved entries live in the gl2 Steinberg fixture:
      // its dimension-only degree 2 and the undeclared companion entries.
      int inconclusive = count_status(res, CheckResult::Status::inconclusive);
      CHECK(inconclusive == (id == "gl2.steinberg" ? 4 : 0));
    }
  }
}

TEST_CASE("the split patch flips the page fixture to a contradiction") {
  Fixture fx = load_fixture("gl3.steinberg", 5, 1);
  REQUIRE(fx.has_page());
  REQUIRE(fx.has_split_patch());

  auto plain = run_checks(fx, false);
  CHECK(count_status(plain, CheckResult::Status::fail) == 0);

  auto split = run_checks(fx, true);
  CHECK(count_status(split, CheckResult::Status::fail) == 3);
  bool traced = false;
  for (const auto& c : split) {
    if (c.name == "consistent") {
      CHECK(c.status == CheckResult::Status::fail);
      CHECK(c.detail.find("CONTRADICTION") != std::string::npos);
      CHECK(c.detail.find("E2(7, 3) = 6") != std::string::npos);
      traced = true;
    }
  }
  CHECK(traced);

  // Module fixtures carry no page, so split mode changes nothing for them.
  auto st = run_checks(load_fixture("gl2.steinberg", 5, 1), true);
  CHECK(count_status(st, CheckResult::Status::fail) == 0);
}

TEST_CASE("registry entries round-trip through their serialization") {
  for (const std::string& id : fixture_registry()) {
    CAPTURE(id);
    std::string source = fixture_source_text(id);
    Fixture first = Fixture::from_text(source, 5, 1);
    std::string canon = first.to_text();
    Fixture second = Fixture::from_text(canon, 5, 1);
    CHECK(second.to_text() == canon);
    CHECK(second.id() == first.id());
    CHECK(second.citation() == first.citation());
    CHECK(second.expectations().size() == first.expectations().size());
    for (const auto& [name, table] : first.tables())
      CHECK(second.tables().at(name).str() == table.str());
    if (first.has_page())
      CHECK(to_text(second.page()) == to_text(first.page()));
  }
}

TEST_CASE("registration rejects statements the library cannot check") {
  auto parse = [](const std::string& body) {
    return Fixture::from_text("[fixture t.t]\ncite \"c\"\ngroup sl2\n" + body,
                              5, 1);
  };
  // A relation outside the check vocabulary.
  CHECK_THROWS_AS(parse("build\n  a = hchar trivial\nexpect\n  magic a a\n"),
                  std::invalid_argument);
  // An unknown constructor.
  CHECK_THROWS_AS(parse("build\n  a = conjure\n"), std::invalid_argument);
  // Unresolved names.
  CHECK_THROWS_AS(parse("build\n  a = hchar trivial\nexpect\n  iso a b\n"),
                  std::invalid_argument);
  // Duplicate names.
  CHECK_THROWS_AS(parse("build\n  a = hchar trivial\n  a = hchar sign\n"),
                  std::invalid_argument);
  // Page-side expectations without a page.
  CHECK_THROWS_AS(parse("build\n  a = hchar trivial\nexpect\n  consistent\n"),
                  std::invalid_argument);
  // An unknowable deduction target.
  CHECK_THROWS_AS(
      Fixture::from_text("[fixture t.t]\ncite \"c\"\ngroup gl3\n"
                         "build\n  page cd = 2\nexpect\n"
                         "  deduce abutment 1 = ?\n",
                         5, 1),
      std::invalid_argument);
  // Module construction under a bookkeeping-only tag.
  CHECK_THROWS_AS(
      Fixture::from_text(
          "[fixture t.t]\ncite \"c\"\ngroup gl3\nbuild\n  a = hchar trivial\n",
          5, 1),
      std::invalid_argument);
  // A patch with no page to patch.
  CHECK_THROWS_AS(parse("build\n  splitpatch E2 0 0 = 1\n"),
                  std::invalid_argument);
  // Unknown group tags.
  CHECK_THROWS_AS(
      Fixture::from_text("[fixture t.t]\ncite \"c\"\ngroup sp4\nbuild\n", 5, 1),
      std::invalid_argument);
}

TEST_CASE("per-line citations override the header citation") {
  Fixture fx = Fixture::from_text(
      "[fixture t.t]\ncite \"base\"\ngroup sl2\n"
      "build\n  a = hchar trivial\n  b = dual a\n"
      "expect\n  iso a b cite \"special\"\n  dim a 1\n",
      5, 1);
  REQUIRE(fx.expectations().size() == 2);
  CHECK(fx.expectations()[0].citation == "special");
  CHECK(fx.expectations()[0].core == "iso a b");
  CHECK(fx.expectations()[1].citation == "base");

  // The override survives serialization.
  Fixture again = Fixture::from_text(fx.to_text(), 5, 1);
  CHECK(again.expectations()[0].citation == "special");
}

TEST_CASE("prime-dependent tokens resolve against the loading prime") {
  for (uint32_t p : {5u, 7u}) {
    CAPTURE(p);
    Fixture fx = load_fixture("sl2.supersingular", p, 1);
    const HModule& mc = fx.modules().at("mc");
    CHECK(is_isomorphic(mc, supersingular_sl2(p, 1, p - 2)).ok());
    const HModule& mtop = fx.modules().at("mtop");
    CHECK(is_isomorphic(mtop, supersingular_sl2(p, 1, p - 1)).ok());
  }
}

TEST_CASE("a directory override replaces the embedded registry") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hecke_fixture_override";
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "only.fix");
    out << "[fixture only.one]\ncite \"c\"\ngroup sl2\n"
        << "build\n  a = hchar trivial\nexpect\n  dim a 1\n";
  }
  EnvGuard guard;
  setenv("HECKE_FIXTURE_DIR", dir.c_str(), 1);

  std::vector<std::string> ids = fixture_registry();
  REQUIRE(ids.size() == 1);
  CHECK(ids[0] == "only.one");
  Fixture fx = load_fixture("only.one", 5, 1);
  auto res = run_checks(fx);
  REQUIRE(res.size() == 1);
  CHECK(res[0].status == CheckResult::Status::pass);
  CHECK_THROWS_AS(load_fixture("sl2.trivial", 5, 1), std::invalid_argument);
}
