#include "hecke/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hecke {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Strips a '#' comment, ignoring '#' inside double quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (size_t k = 0; k < line.size(); ++k) {
    if (line[k] == '"') quoted = !quoted;
    else if (line[k] == '#' && !quoted) return line.substr(0, k);
  }
  return line;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string join_ws(const std::vector<std::string>& toks) {
  std::string out;
  for (const auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  return true;
}

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("fixture: " + msg);
}

// Integer token: plain digits, or `p-<k>` for prime-dependent values.
int64_t int_token(const std::string& tok, uint32_t p) {
  std::string t = trim(tok);
  if (t == "p") return p;
  if (t.rfind("p-", 0) == 0) {
    const std::string rest = t.substr(2);
    if (rest.empty()) bad("malformed integer token '" + tok + "'");
    size_t used = 0;
    long long k = std::stoll(rest, &used);
    if (used != rest.size() || k < 0) bad("malformed integer token '" + tok + "'");
    if (k > static_cast<long long>(p)) bad("token '" + tok + "' is negative");
    return static_cast<int64_t>(p) - k;
  }
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    bad("malformed integer token '" + tok + "'");
  }
  if (used != t.size()) bad("malformed integer token '" + tok + "'");
  return v;
}

std::vector<int64_t> int_list(const std::string& csv, uint32_t p) {
  std::vector<int64_t> out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) out.push_back(int_token(cur, p));
  if (out.empty()) bad("empty integer list");
  return out;
}

// Extracts a trailing `cite "<text>"` clause; returns the remaining core.
std::string take_citation(const std::string& line, std::string* citation) {
  const std::string key = "cite";
  size_t pos = line.rfind(key);
  if (pos == std::string::npos) return line;
  // Must be a standalone token followed by a quoted string.
  std::string tail = trim(line.substr(pos + key.size()));
  bool standalone = pos == 0 || std::isspace(static_cast<unsigned char>(line[pos - 1]));
  if (!standalone || tail.size() < 2 || tail.front() != '"' || tail.back() != '"')
    return line;
  *citation = tail.substr(1, tail.size() - 2);
  return trim(line.substr(0, pos));
}

std::string quoted(const std::string& line, const std::string& what) {
  size_t a = line.find('"');
  size_t b = line.rfind('"');
  if (a == std::string::npos || b <= a)
    bad(what + " expects a double-quoted string");
  return line.substr(a + 1, b - a - 1);
}

const std::set<std::string> kExpectVerbs = {
    "iso",       "noniso",   "dim",     "simple",
    "factors",   "localize", "poincare", "shift",
    "ordinary",  "deduce",   "no-extra-identifications", "consistent"};

}  // namespace

const GroupDatum& Fixture::group() const {
  if (!group_) throw std::logic_error("fixture " + id_ + ": no module layer");
  return *group_;
}

const LeviDatum& Fixture::levi() const {
  if (!levi_) throw std::logic_error("fixture " + id_ + ": no module layer");
  return *levi_;
}

const E2Page& Fixture::page() const {
  if (!page_) throw std::logic_error("fixture " + id_ + ": no page");
  return *page_;
}

E2Page Fixture::patched_page() const {
  if (!page_) throw std::logic_error("fixture " + id_ + ": no page");
  E2Page out = *page_;
  if (split_patch_)
    out.cells[{split_patch_->i, split_patch_->j}] = split_patch_->slot;
  return out;
}

const Slot& Fixture::focus() const {
  if (!focus_) throw std::logic_error("fixture " + id_ + ": not narrowed");
  return *focus_;
}

Fixture Fixture::from_text(const std::string& text, uint32_t p,
                           uint32_t field_e) {
  Fixture fx;
  fx.p_ = p;
  fx.field_e_ = field_e;

  enum class Section { header, build, expect };
  Section section = Section::header;
  std::vector<std::string> page_lines;
  std::set<std::string> names;

  uint64_t unit_order = 1;
  for (uint32_t k = 0; k < field_e; ++k) unit_order *= p;
  unit_order -= 1;

  auto known = [&](const std::string& n) { return names.count(n) != 0; };
  auto declare = [&](const std::string& n) {
    if (!is_identifier(n) || n.find('.') != std::string::npos)
      bad("invalid name '" + n + "'");
    if (known(n)) bad("duplicate name '" + n + "'");
    names.insert(n);
  };
  auto need_char = [&](const std::string& n) -> const SmoothCharacter& {
    auto it = fx.chars_.find(n);
    if (it == fx.chars_.end()) bad("unknown character '" + n + "'");
    return it->second;
  };
  auto need_module = [&](const std::string& n) -> const HModule& {
    auto it = fx.modules_.find(n);
    if (it == fx.modules_.end()) bad("unknown module '" + n + "'");
    return it->second;
  };
  auto need_table = [&](const std::string& n) -> const CohomologyTable& {
    auto it = fx.tables_.find(n);
    if (it == fx.tables_.end()) bad("unknown table '" + n + "'");
    return it->second;
  };
  auto need_group = [&]() -> const GroupDatum& {
    if (!fx.group_) bad("group tag '" + fx.group_tag_ + "' has no module layer");
    return *fx.group_;
  };

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (!fx.id_.empty()) bad("duplicate [fixture] header");
      if (line.back() != ']') bad("malformed header '" + line + "'");
      auto toks = split_ws(line.substr(1, line.size() - 2));
      if (toks.size() != 2 || toks[0] != "fixture")
        bad("malformed header '" + line + "'");
      fx.id_ = toks[1];
      continue;
    }
    if (fx.id_.empty()) bad("text must start with a [fixture <id>] header");

    auto toks = split_ws(line);
    const std::string& head = toks[0];

    if (section == Section::header) {
      if (head == "cite") {
        fx.citation_ = quoted(line, "cite");
        continue;
      }
      if (head == "group") {
        if (toks.size() != 2) bad("group expects one tag");
        fx.group_tag_ = toks[1];
        if (fx.group_tag_ == "sl2" || fx.group_tag_ == "gl2") {
          fx.group_.emplace(group_kind_from_string(fx.group_tag_), p);
          fx.levi_.emplace(LeviDatum::standard(fx.group_->kind(), p));
        } else if (fx.group_tag_ != "gl3") {
          bad("unknown group tag '" + fx.group_tag_ + "'");
        }
        continue;
      }
      if (head == "build") {
        if (fx.citation_.empty() || fx.group_tag_.empty())
          bad("build section before cite/group header lines");
        section = Section::build;
        continue;
      }
      bad("unexpected header line '" + line + "'");
    }

    if (head == "expect") {
      if (section != Section::build) bad("expect section requires a build section");
      section = Section::expect;
      continue;
    }

    if (section == Section::build) {
      if (head == "page") {
        if (toks.size() < 2) bad("empty page line");
        page_lines.push_back(trim(line.substr(4)));
        fx.build_lines_.push_back("page " + join_ws(split_ws(line.substr(4))));
        continue;
      }
      if (head == "splitpatch") {
        // splitpatch E2 <i> <j> = <entry>
        if (toks.size() != 6 || toks[1] != "E2" || toks[4] != "=")
          bad("malformed splitpatch '" + line + "'");
        SplitPatch patch;
        patch.i = static_cast<int>(int_token(toks[2], p));
        patch.j = static_cast<int>(int_token(toks[3], p));
        patch.slot = Slot::parse(toks[5]);
        patch.raw = "splitpatch E2 " + std::to_string(patch.i) + " " +
                    std::to_string(patch.j) + " = " + toks[5];
        if (fx.split_patch_) bad("duplicate splitpatch");
        fx.split_patch_ = std::move(patch);
        fx.build_lines_.push_back(fx.split_patch_->raw);
        continue;
      }

      // <name> = <verb> <args...>
      if (toks.size() < 3 || toks[1] != "=")
        bad("malformed build line '" + line + "'");
      const std::string& name = toks[0];
      const std::string& verb = toks[2];
      std::vector<std::string> args(toks.begin() + 3, toks.end());
      declare(name);

      if (verb == "trivialchar") {
        if (!args.empty()) bad("trivialchar takes no arguments");
        need_group();
        fx.chars_.emplace(name,
                          SmoothCharacter::trivial(fx.levi_->torus(), field_e));
      } else if (verb == "alphabar") {
        if (!args.empty()) bad("alphabar takes no arguments");
        need_group();
        fx.chars_.emplace(
            name, SmoothCharacter::alpha_bar(fx.levi_->torus(), field_e));
      } else if (verb == "smooth") {
        // smooth e1[,e2] : u1[,u2]
        std::string rest = join_ws(args);
        size_t colon = rest.find(':');
        if (colon == std::string::npos) bad("smooth expects ':' between lists");
        need_group();
        std::vector<int64_t> exps = int_list(trim(rest.substr(0, colon)), p);
        std::vector<int64_t> uvals = int_list(trim(rest.substr(colon + 1)), p);
        std::vector<Fq> unram;
        for (int64_t u : uvals)
          unram.push_back(Fq::make(p, field_e, u));
        fx.chars_.emplace(name, SmoothCharacter::make(fx.levi_->torus(),
                                                      field_e, exps, unram));
      } else if (verb == "dualize") {
        if (args.size() != 1) bad("dualize expects one character");
        const SmoothCharacter& c = need_char(args[0]);
        fx.chars_.emplace(
            name, c.inverse() * dualizing_character(need_group(),
                                                    fx.levi_->torus(), field_e));
      } else if (verb == "hchar") {
        if (args.size() != 1) bad("hchar expects one kind");
        const GroupDatum& g = need_group();
        HCharacter hc = h_trivial(g, field_e);
        if (args[0] == "trivial") hc = h_trivial(g, field_e);
        else if (args[0] == "sign") hc = h_sign(g, field_e);
        else if (args[0] == "sign-star") hc = h_sign_star(g, field_e);
        else if (args[0] == "trivial-star") hc = h_trivial_star(g, field_e);
        else bad("unknown hchar kind '" + args[0] + "'");
        fx.modules_.emplace(name, from_hcharacter(hc));
      } else if (verb == "smoothmod") {
        if (args.size() != 1) bad("smoothmod expects one character");
        fx.modules_.emplace(name, from_smooth_character(need_char(args[0])));
      } else if (verb == "induce") {
        if (args.size() != 1) bad("induce expects one character");
        fx.modules_.emplace(name, induce(*fx.levi_, need_char(args[0])));
      } else if (verb == "dual") {
        if (args.size() != 1) bad("dual expects one module");
        fx.modules_.emplace(name, make_dual(need_module(args[0])));
      } else if (verb == "twist") {
        if (args.size() != 2) bad("twist expects a module and r,c");
        const HModule& m = need_module(args[0]);
        std::vector<int64_t> rc = int_list(args[1], p);
        if (rc.size() != 2) bad("twist expects exactly r,c");
        uint32_t r = static_cast<uint32_t>(((rc[0] % static_cast<int64_t>(
                         unit_order)) + unit_order) % unit_order);
        GChar xi = GChar::make(need_group(), field_e, r,
                               Fq::make(p, field_e, rc[1]));
        fx.modules_.emplace(name, make_twist(m, xi));
      } else if (verb == "sum") {
        if (args.size() < 2) bad("sum expects at least two modules");
        std::vector<HModule> parts;
        for (const auto& a : args) parts.push_back(need_module(a));
        fx.modules_.emplace(name, direct_sum(parts));
      } else if (verb == "power") {
        if (args.size() != 2) bad("power expects a module and an exponent");
        int64_t k = int_token(args[1], p);
        if (k < 0) bad("power expects a nonnegative exponent");
        fx.modules_.emplace(
            name, direct_power(need_module(args[0]), static_cast<size_t>(k)));
      } else if (verb == "ss") {
        if (args.size() != 1) bad("ss expects one index");
        const GroupDatum& g = need_group();
        int64_t r = int_token(args[0], p);
        if (r < 0) bad("ss expects a nonnegative index");
        HModule m = g.kind() == GroupKind::gl2
                        ? supersingular_gl2(p, field_e, static_cast<uint32_t>(r))
                        : supersingular_sl2(p, field_e, static_cast<uint32_t>(r));
        fx.modules_.emplace(name, std::move(m));
      } else if (verb == "zero") {
        if (!args.empty()) bad("zero takes no arguments");
        fx.modules_.emplace(name, zero_module(need_group(), field_e));
      } else if (verb == "table") {
        // table <top> : <tok> ...
        if (args.size() < 3 || args[1] != ":")
          bad("table expects '<top> : <entries>'");
        int top = static_cast<int>(int_token(args[0], p));
        CohomologyTable table(name, top);
        for (size_t d = 2; d < args.size(); ++d) {
          const std::string& tok = args[d];
          const int degree = static_cast<int>(d) - 2;
          if (fx.modules_.count(tok))
            table.set(degree, Slot::of_module(fx.modules_.at(tok)));
          else if (is_identifier(tok))
            bad("unknown module '" + tok + "' in table '" + name + "'");
          else
            table.set(degree, Slot::parse(tok));
        }
        fx.tables_.emplace(name, std::move(table));
      } else {
        bad("unknown build verb '" + verb + "'");
      }
      // Canonical spelling of the line just consumed.
      fx.build_lines_.push_back(join_ws(toks));
      continue;
    }

    // Expect section.
    Expectation ex;
    ex.citation = fx.citation_;
    std::string core = take_citation(line, &ex.citation);
    auto ctoks = split_ws(core);
    if (ctoks.empty()) bad("empty expect line");
    ex.verb = ctoks[0];
    ex.args.assign(ctoks.begin() + 1, ctoks.end());
    ex.core = join_ws(ctoks);
    if (!kExpectVerbs.count(ex.verb))
      bad("unknown expect verb '" + ex.verb + "'");

    // Registration-time validation: every expectation must resolve.
    const auto& a = ex.args;
    if (ex.verb == "iso" || ex.verb == "noniso") {
      if (a.size() != 2) bad(ex.verb + " expects two modules");
      need_module(a[0]);
      need_module(a[1]);
    } else if (ex.verb == "dim") {
      if (a.size() != 2) bad("dim expects a module and a value");
      need_module(a[0]);
      int_token(a[1], p);
    } else if (ex.verb == "simple") {
      if (a.size() != 1) bad("simple expects one module");
      need_module(a[0]);
    } else if (ex.verb == "factors") {
      if (a.size() < 3 || a[1] != ":") bad("factors expects '<m> : <list>'");
      need_module(a[0]);
      for (size_t k = 2; k < a.size(); ++k) need_module(a[k]);
    } else if (ex.verb == "localize") {
      if (a.size() != 2) bad("localize expects a module and a value");
      need_module(a[0]);
      if (a[1] != "0") need_module(a[1]);
    } else if (ex.verb == "poincare") {
      if (a.size() != 1) bad("poincare expects one table");
      need_table(a[0]);
      need_group();
    } else if (ex.verb == "shift") {
      if (a.size() != 3 && a.size() != 4)
        bad("shift expects '<twisted> <plain> <k> [<char>]'");
      need_table(a[0]);
      need_table(a[1]);
      need_group();
      if (int_token(a[2], p) < 0) bad("shift expects a nonnegative dimension");
      if (a.size() == 4) need_char(a[3]);
    } else if (ex.verb == "ordinary") {
      if (a.size() != 2) bad("ordinary expects two tables");
      need_table(a[0]);
      need_table(a[1]);
      need_group();
    } else if (ex.verb == "deduce") {
      bool ab = a.size() == 4 && a[0] == "abutment" && a[2] == "=";
      bool en = a.size() == 5 && a[0] == "entry" && a[3] == "=";
      if (!ab && !en) bad("malformed deduce '" + core + "'");
      Slot s = Slot::parse(a.back());
      if (s.is_unknown()) bad("deduce target value may not be '?'");
      int_token(a[1], p);
      if (en) int_token(a[2], p);
      if (page_lines.empty()) bad("deduce requires a page");
    } else {  // no-extra-identifications, consistent
      if (!a.empty()) bad(ex.verb + " takes no arguments");
      if (page_lines.empty()) bad(ex.verb + " requires a page");
    }
    fx.expects_.push_back(std::move(ex));
  }

  if (fx.id_.empty()) bad("missing [fixture <id>] header");
  if (fx.citation_.empty()) bad("missing cite line");
  if (fx.group_tag_.empty()) bad("missing group line");
  if (!page_lines.empty()) {
    std::string joined;
    for (const auto& l : page_lines) joined += l + "\n";
    fx.page_ = parse_page(joined);
  }
  if (fx.split_patch_ && !fx.page_) bad("splitpatch requires a page");
  return fx;
}

std::string Fixture::to_text() const {
  std::string out = "[fixture " + id_ + "]\n";
  out += "cite \"" + citation_ + "\"\n";
  out += "group " + group_tag_ + "\n";
  out += "\nbuild\n";
  for (const auto& l : build_lines_) out += "  " + l + "\n";
  if (!expects_.empty()) {
    out += "\nexpect\n";
    for (const auto& e : expects_) {
      out += "  " + e.core;
      if (e.citation != citation_) out += " cite \"" + e.citation + "\"";
      out += "\n";
    }
  }
  return out;
}

namespace {

// id -> (file name, text) from the active source (directory override or the
// embedded registry).
std::map<std::string, std::pair<std::string, std::string>> fixture_sources() {
  std::map<std::string, std::pair<std::string, std::string>> out;
  auto add = [&out](const std::string& file, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string id;
    while (std::getline(in, line)) {
      line = trim(strip_comment(line));
      if (line.empty()) continue;
      auto toks = split_ws(line);
      if (toks.size() == 2 && toks[0] == "[fixture" && toks[1].back() == ']') {
        id = toks[1].substr(0, toks[1].size() - 1);
        break;
      }
      break;
    }
    if (id.empty())
      throw std::runtime_error("fixture file " + file +
                               ": missing [fixture <id>] header");
    if (!out.emplace(id, std::make_pair(file, text)).second)
      throw std::runtime_error("duplicate fixture id '" + id + "'");
  };

  const char* dir = std::getenv("HECKE_FIXTURE_DIR");
  if (dir != nullptr && *dir != '\0') {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.path().extension() == ".fix") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::ifstream s(f);
      std::ostringstream buf;
      buf << s.rdbuf();
      add(f.filename().string(), buf.str());
    }
  } else {
    for (const auto& f : embedded_fixture_files()) add(f.name, f.text);
  }
  return out;
}

}  // namespace

std::vector<std::string> fixture_registry() {
  std::vector<std::string> ids;
  for (const auto& [id, src] : fixture_sources()) ids.push_back(id);
  return ids;
}

std::string fixture_source_text(const std::string& id) {
  auto sources = fixture_sources();
  auto it = sources.find(id);
  if (it == sources.end())
    throw std::invalid_argument("unknown fixture id '" + id + "'");
  return it->second.second;
}

Fixture load_fixture(const std::string& id, uint32_t p, uint32_t field_e) {
  auto sources = fixture_sources();
  std::string base = id;
  int focus_degree = -1;

  if (!sources.count(id)) {
    // Narrowed form "<base>.h<n>".
    size_t dot = id.rfind('.');
    if (dot != std::string::npos && dot + 1 < id.size() &&
        id[dot + 1] == 'h') {
      std::string suffix = id.substr(dot + 2);
      if (!suffix.empty() &&
          std::all_of(suffix.begin(), suffix.end(),
                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        base = id.substr(0, dot);
        focus_degree = std::stoi(suffix);
      }
    }
    if (!sources.count(base))
      throw std::invalid_argument("unknown fixture id '" + id + "'");
  }

  Fixture fx;
  try {
    fx = Fixture::from_text(sources.at(base).second, p, field_e);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("fixture " + base + ": " + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error("fixture " + base + ": " + e.what());
  }
  if (fx.id() != base)
    throw std::runtime_error("fixture file for '" + base +
                             "' declares id '" + fx.id() + "'");

  if (focus_degree >= 0) {
    auto it = fx.tables_.find("h");
    if (it == fx.tables_.end())
      throw std::invalid_argument("fixture " + base +
                                  ": no main table 'h' to narrow");
    if (focus_degree > it->second.top())
      throw std::invalid_argument("fixture " + id +
                                  ": focus degree above the table top");
    fx.focus_degree_ = focus_degree;
    fx.focus_ = it->second.at(focus_degree);
    fx.id_ = id;
  }
  return fx;
}

namespace {

CheckResult::Status iso_status(IsoResult::Status s) {
  switch (s) {
    case IsoResult::Status::yes: return CheckResult::Status::pass;
    case IsoResult::Status::no: return CheckResult::Status::fail;
    default: return CheckResult::Status::inconclusive;
  }
}

CheckOutcome outcome(const Expectation& ex, CheckResult::Status st,
                     const std::string& detail) {
  CheckOutcome out;
  out.name = ex.core;
  out.status = st;
  out.detail = detail;
  out.citation = ex.citation;
  return out;
}

bool fact_matches_slot(const Fact& fact, const Slot& want) {
  if (want.is_zero()) return fact.is_zero;
  if (fact.is_zero) return false;
  if (fact.dim != static_cast<int>(want.dim())) return false;
  return want.name().empty() || want.name() == fact.name;
}

}  // namespace

std::vector<CheckOutcome> run_checks(const Fixture& fx, bool assume_split) {
  std::vector<CheckOutcome> out;
  std::optional<Propagation> prop;
  auto propagation = [&]() -> const Propagation& {
    if (!prop) {
      prop = ss_propagate(assume_split && fx.has_split_patch()
                              ? fx.patched_page()
                              : fx.page());
    }
    return *prop;
  };
  auto append_report = [&out](const Expectation& ex, const CheckReport& rep) {
    for (const auto& c : rep.checks) {
      CheckOutcome o;
      o.name = ex.core + ": " + c.name;
      o.status = c.status;
      o.detail = c.detail;
      o.citation = ex.citation;
      out.push_back(std::move(o));
    }
  };

  for (const Expectation& ex : fx.expectations()) {
    const auto& a = ex.args;
    if (ex.verb == "iso" || ex.verb == "noniso") {
      IsoResult r =
          is_isomorphic(fx.modules().at(a[0]), fx.modules().at(a[1]));
      CheckResult::Status st = iso_status(r.status);
      if (ex.verb == "noniso") {
        if (st == CheckResult::Status::pass) st = CheckResult::Status::fail;
        else if (st == CheckResult::Status::fail) st = CheckResult::Status::pass;
      }
      out.push_back(outcome(ex, st, r.detail));
    } else if (ex.verb == "dim") {
      const HModule& m = fx.modules().at(a[0]);
      int64_t want = int_token(a[1], fx.p());
      bool ok = static_cast<int64_t>(m.dim()) == want;
      out.push_back(outcome(
          ex, ok ? CheckResult::Status::pass : CheckResult::Status::fail,
          "dim = " + std::to_string(m.dim()) + ", expected " +
              std::to_string(want)));
    } else if (ex.verb == "simple") {
      bool ok = is_simple(fx.modules().at(a[0]));
      out.push_back(outcome(
          ex, ok ? CheckResult::Status::pass : CheckResult::Status::fail,
          ok ? "no proper nonzero submodule" : "proper submodule found"));
    } else if (ex.verb == "factors") {
      const HModule& m = fx.modules().at(a[0]);
      std::vector<HModule> got = composition_factors(m);
      if (got.size() != a.size() - 2) {
        out.push_back(outcome(ex, CheckResult::Status::fail,
                              "found " + std::to_string(got.size()) +
                                  " factors, expected " +
                                  std::to_string(a.size() - 2)));
        continue;
      }
      CheckResult::Status st = CheckResult::Status::pass;
      std::string detail = "factors match in order";
      for (size_t k = 0; k < got.size(); ++k) {
        IsoResult r = is_isomorphic(got[k], fx.modules().at(a[k + 2]));
        if (r.status == IsoResult::Status::no) {
          st = CheckResult::Status::fail;
          detail = "factor " + std::to_string(k) + " differs: " + r.detail;
          break;
        }
        if (r.status == IsoResult::Status::inconclusive &&
            st == CheckResult::Status::pass) {
          st = CheckResult::Status::inconclusive;
          detail = "factor " + std::to_string(k) + " unresolved: " + r.detail;
        }
      }
      out.push_back(outcome(ex, st, detail));
    } else if (ex.verb == "localize") {
      HModule loc = right_adjoint(fx.levi(), fx.modules().at(a[0]));
      if (a[1] == "0") {
        bool ok = loc.dim() == 0;
        out.push_back(outcome(
            ex, ok ? CheckResult::Status::pass : CheckResult::Status::fail,
            "localized dim = " + std::to_string(loc.dim())));
      } else {
        IsoResult r = is_isomorphic(loc, fx.modules().at(a[1]));
        out.push_back(outcome(ex, iso_status(r.status), r.detail));
      }
    } else if (ex.verb == "poincare") {
      append_report(ex, poincare_check(fx.tables().at(a[0]),
                                       GChar::trivial(fx.group(), fx.field_e())));
    } else if (ex.verb == "shift") {
      const CohomologyTable& twisted = fx.tables().at(a[0]);
      const CohomologyTable& plain = fx.tables().at(a[1]);
      int dim_p = static_cast<int>(int_token(a[2], fx.p()));
      GChar xi = GChar::trivial(fx.group(), fx.field_e());
      CheckReport rep =
          a.size() == 4
              ? duality_shift_check(fx.characters().at(a[3]), twisted, plain,
                                    dim_p, xi)
              : duality_shift_check(twisted, plain, dim_p, xi);
      append_report(ex, rep);
    } else if (ex.verb == "ordinary") {
      append_report(ex, ordinary_check(fx.tables().at(a[0]),
                                       fx.tables().at(a[1]), fx.levi()));
    } else if (ex.verb == "deduce") {
      const Propagation& pr = propagation();
      const bool ab = a[0] == "abutment";
      const int d0 = static_cast<int>(int_token(a[1], fx.p()));
      const int d1 = ab ? 0 : static_cast<int>(int_token(a[2], fx.p()));
      Slot want = Slot::parse(a.back());
      const Fact* found = nullptr;
      for (const Fact& f : pr.facts) {
        if (ab && f.target == Fact::Target::abutment && f.degree == d0)
          found = &f;
        if (!ab && f.target == Fact::Target::entry && f.i == d0 && f.j == d1)
          found = &f;
        if (found) break;
      }
      if (found == nullptr) {
        out.push_back(outcome(ex, CheckResult::Status::fail,
                              "no fact derived for this position"));
      } else if (fact_matches_slot(*found, want)) {
        out.push_back(outcome(ex, CheckResult::Status::pass, found->str()));
      } else {
        out.push_back(outcome(ex, CheckResult::Status::fail,
                              "derived " + found->str()));
      }
    } else if (ex.verb == "no-extra-identifications") {
      const Propagation& pr = propagation();
      std::string extra;
      for (const Fact& f : pr.facts) {
        if (f.is_zero || f.rule == "euler" || f.rule == "bound") continue;
        bool declared = false;
        for (const Expectation& other : fx.expectations()) {
          if (other.verb != "deduce") continue;
          bool ab = other.args[0] == "abutment";
          int d0 = static_cast<int>(int_token(other.args[1], fx.p()));
          if (ab && f.target == Fact::Target::abutment && f.degree == d0)
            declared = true;
          if (!ab && f.target == Fact::Target::entry && f.i == d0 &&
              f.j == static_cast<int>(int_token(other.args[2], fx.p())))
            declared = true;
          if (declared) break;
        }
        if (!declared) {
          extra = f.str();
          break;
        }
      }
      if (pr.contradiction) {
        out.push_back(outcome(ex, CheckResult::Status::fail,
                              "propagation found a contradiction"));
      } else if (extra.empty()) {
        out.push_back(outcome(ex, CheckResult::Status::pass,
                              "every identification is declared"));
      } else {
        out.push_back(outcome(ex, CheckResult::Status::fail,
                              "undeclared identification: " + extra));
      }
    } else if (ex.verb == "consistent") {
      const Propagation& pr = propagation();
      out.push_back(outcome(ex,
                            pr.contradiction ? CheckResult::Status::fail
                                             : CheckResult::Status::pass,
                            pr.str()));
    }
  }
  return out;
}

}  // namespace hecke
