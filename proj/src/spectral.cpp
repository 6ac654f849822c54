#include "hecke/spectral.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
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

std::string remove_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

int parse_int(const std::string& token, const std::string& where) {
  try {
    size_t used = 0;
    int v = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument("junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_page: expected an integer in " + where +
                                ", got '" + token + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Slot

Slot Slot::zero() { return Slot{}; }

Slot Slot::unknown() {
  Slot s;
  s.kind_ = Kind::unknown;
  s.dim_ = -1;
  return s;
}

Slot Slot::formal(int dim, std::string name) {
  if (dim < 0) throw std::invalid_argument("Slot::formal: negative dimension");
  if (dim == 0) return zero();
  Slot s;
  s.kind_ = Kind::formal;
  s.dim_ = dim;
  s.name_ = std::move(name);
  return s;
}

Slot Slot::of_module(const HModule& m) {
  if (m.dim() == 0) return zero();
  Slot s;
  s.kind_ = Kind::module;
  s.dim_ = m.dim();
  s.name_ = m.name();
  s.module_ = std::make_shared<const HModule>(m);
  return s;
}

int Slot::dim() const {
  if (kind_ == Kind::unknown)
    throw std::logic_error("Slot: dimension of an unknown entry");
  return dim_;
}

const HModule& Slot::module() const {
  if (!module_) throw std::logic_error("Slot: no module handle attached");
  return *module_;
}

std::string Slot::str() const {
  switch (kind_) {
    case Kind::zero:
      return "0";
    case Kind::unknown:
      return "?";
    default:
      break;
  }
  if (name_.empty()) return std::to_string(dim_);
  return name_ + "(" + std::to_string(dim_) + ")";
}

Slot Slot::parse(const std::string& token) {
  std::string t = remove_spaces(token);
  if (t.empty())
    throw std::invalid_argument("Slot::parse: empty entry");
  if (t == "?") return unknown();
  if (all_digits(t)) return formal(parse_int(t, "entry"));
  // name(dim): peel a trailing parenthesized integer off the last '('.
  if (t.back() == ')') {
    size_t open = t.rfind('(');
    if (open != std::string::npos && open > 0) {
      std::string inner = t.substr(open + 1, t.size() - open - 2);
      if (all_digits(inner))
        return formal(parse_int(inner, "entry"), t.substr(0, open));
    }
  }
  throw std::invalid_argument(
      "Slot::parse: entry must be '?', a dimension, or name(dim), got '" + t +
      "'");
}

// ---------------------------------------------------------------------------
// CohomologyTable

CohomologyTable::CohomologyTable(std::string tag, int top)
    : tag_(std::move(tag)), top_(top) {
  if (top < 0)
    throw std::invalid_argument("CohomologyTable: negative top degree");
}

void CohomologyTable::set(int degree, Slot s) {
  if ((degree < 0 || degree > top_) && s.possibly_nonzero())
    throw std::invalid_argument("CohomologyTable: entries must vanish outside [0, " +
                                std::to_string(top_) + "], got degree " +
                                std::to_string(degree));
  if (degree < 0 || degree > top_) return;  // explicit zero outside: no-op
  entries_[degree] = std::move(s);
}

Slot CohomologyTable::at(int degree) const {
  if (degree < 0 || degree > top_) return Slot::zero();
  auto it = entries_.find(degree);
  if (it != entries_.end()) return it->second;
  return Slot::unknown();
}

std::string CohomologyTable::str() const {
  std::ostringstream os;
  os << "table " << tag_ << " (top degree " << top_ << ")\n";
  for (int n = 0; n <= top_; ++n)
    os << "  H^" << n << ": " << at(n).str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// E2Page and its text form

Slot E2Page::cell(int i, int j) const {
  auto it = cells.find({i, j});
  return it == cells.end() ? Slot::zero() : it->second;
}

Slot E2Page::abutment_at(int m) const {
  auto it = abutment.find(m);
  if (it != abutment.end()) return it->second;
  if (m < 0 || m > cd) return Slot::zero();
  return Slot::unknown();
}

E2Page parse_page(const std::string& text) {
  E2Page page;
  bool saw_cd = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);

    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parse_page: missing '=' on " + where);
    std::string head = trim(line.substr(0, eq));
    std::string value = remove_spaces(line.substr(eq + 1));
    if (value.empty())
      throw std::invalid_argument("parse_page: empty value on " + where);

    std::istringstream hs(head);
    std::vector<std::string> words;
    for (std::string w; hs >> w;) words.push_back(w);
    if (words.empty())
      throw std::invalid_argument("parse_page: missing key on " + where);

    if (words[0] == "cd") {
      if (words.size() != 1 || saw_cd)
        throw std::invalid_argument("parse_page: bad cd line (" + where + ")");
      page.cd = parse_int(value, where);
      if (page.cd < 0)
        throw std::invalid_argument("parse_page: cd must be nonnegative (" +
                                    where + ")");
      saw_cd = true;
    } else if (words[0] == "mode") {
      if (words.size() != 1)
        throw std::invalid_argument("parse_page: bad mode line (" + where + ")");
      if (value == "sum")
        page.mode = PageMode::sum;
      else if (value == "dual")
        page.mode = PageMode::dual;
      else
        throw std::invalid_argument("parse_page: mode must be sum or dual (" +
                                    where + ")");
    } else if (words[0] == "tag") {
      if (words.size() != 1)
        throw std::invalid_argument("parse_page: bad tag line (" + where + ")");
      page.tag = value;
    } else if (words[0] == "E2") {
      if (words.size() != 3)
        throw std::invalid_argument("parse_page: E2 lines read 'E2 i j = entry' (" +
                                    where + ")");
      int i = parse_int(words[1], where);
      int j = parse_int(words[2], where);
      if (i < 0 || j < 0)
        throw std::invalid_argument("parse_page: first-quadrant coordinates only (" +
                                    where + ")");
      if (page.cells.count({i, j}))
        throw std::invalid_argument("parse_page: duplicate cell (" + where + ")");
      page.cells[{i, j}] = Slot::parse(value);
    } else if (words[0] == "abutment") {
      if (words.size() != 2)
        throw std::invalid_argument(
            "parse_page: abutment lines read 'abutment m = entry' (" + where +
            ")");
      int m = parse_int(words[1], where);
      if (page.abutment.count(m))
        throw std::invalid_argument("parse_page: duplicate abutment degree (" +
                                    where + ")");
      page.abutment[m] = Slot::parse(value);
    } else {
      throw std::invalid_argument("parse_page: unknown key '" + words[0] +
                                  "' (" + where + ")");
    }
  }
  if (!saw_cd) throw std::invalid_argument("parse_page: missing 'cd = ...' line");
  for (const auto& [m, s] : page.abutment)
    if ((m < 0 || m > page.cd) && s.possibly_nonzero())
      throw std::invalid_argument(
          "parse_page: abutment must vanish outside [0, cd], degree " +
          std::to_string(m));
  return page;
}

std::string to_text(const E2Page& page) {
  std::ostringstream os;
  os << "cd = " << page.cd << "\n";
  os << "mode = " << (page.mode == PageMode::sum ? "sum" : "dual") << "\n";
  if (!page.tag.empty()) os << "tag = " << page.tag << "\n";
  for (const auto& [ij, s] : page.cells)
    os << "E2 " << ij.first << " " << ij.second << " = " << s.str() << "\n";
  for (const auto& [m, s] : page.abutment)
    os << "abutment " << m << " = " << s.str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Check reports

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckResult::Status::pass;
  });
}

bool CheckReport::any_fail() const {
  return std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.status == CheckResult::Status::fail;
  });
}

std::string CheckReport::str() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    const char* s = c.status == CheckResult::Status::pass   ? "pass"
                    : c.status == CheckResult::Status::fail ? "FAIL"
                                                            : "inconclusive";
    os << "  [" << s << "] " << c.name;
    if (!c.detail.empty()) os << " -- " << c.detail;
    os << "\n";
  }
  return os.str();
}

CheckResult compare_slots(const std::string& check_name, const Slot& lhs,
                          const Slot& rhs_raw, const Slot& rhs_transformed,
                          const std::string& transform) {
  CheckResult res;
  res.name = check_name;
  const std::string shapes =
      lhs.str() + " vs " + transform + " of " + rhs_raw.str();
  if (lhs.is_unknown() || rhs_raw.is_unknown()) {
    res.status = CheckResult::Status::inconclusive;
    res.detail = "gap: " + shapes;
    return res;
  }
  if (lhs.dim() != rhs_transformed.dim()) {
    res.status = CheckResult::Status::fail;
    res.detail = "dimension mismatch: " + std::to_string(lhs.dim()) + " vs " +
                 std::to_string(rhs_transformed.dim()) + " (" + shapes + ")";
    return res;
  }
  if (lhs.is_zero() && rhs_transformed.is_zero()) {
    res.status = CheckResult::Status::pass;
    res.detail = "both vanish";
    return res;
  }
  if (lhs.has_module() && rhs_transformed.has_module()) {
    IsoResult iso = is_isomorphic(lhs.module(), rhs_transformed.module());
    switch (iso.status) {
      case IsoResult::Status::yes:
        res.status = CheckResult::Status::pass;
        res.detail = shapes;
        return res;
      case IsoResult::Status::no:
        res.status = CheckResult::Status::fail;
        res.detail = "not isomorphic: " + shapes + "; " + iso.detail;
        return res;
      case IsoResult::Status::inconclusive:
        res.status = CheckResult::Status::inconclusive;
        res.detail = "isomorphism test inconclusive: " + shapes;
        return res;
    }
  }
  res.status = CheckResult::Status::inconclusive;
  res.detail = "dimensions agree but module structure unresolved: " + shapes;
  return res;
}

namespace {

/// Dual-plus-twist of a table slot, staying formal on formal entries
/// (duality and twisting preserve dimension).
Slot dual_twist_slot(const Slot& s, const GChar& xi) {
  if (s.has_module()) return Slot::of_module(make_twist(make_dual(s.module()), xi));
  return s;
}

}  // namespace

CheckReport poincare_check(const CohomologyTable& table, const GChar& xi) {
  CheckReport rep;
  const int d = table.top();
  for (int i = 0; i <= d; ++i) {
    const int k = d - i;
    Slot a = table.at(i);
    Slot b = table.at(k);
    rep.checks.push_back(compare_slots(
        "H^" + std::to_string(i) + " against H^" + std::to_string(k), a, b,
        dual_twist_slot(b, xi), "twisted dual"));
  }
  return rep;
}

namespace {

CheckReport shift_check_impl(const std::string& suffix,
                             const CohomologyTable& twisted,
                             const CohomologyTable& plain, int dim_p,
                             const GChar& xi) {
  if (dim_p < 0)
    throw std::invalid_argument("duality_shift_check: negative parabolic dimension");
  CheckReport rep;
  const int hi = std::max(dim_p, std::max(twisted.top(), plain.top()));
  for (int i = 0; i <= hi; ++i) {
    const int k = dim_p - i;
    Slot a = twisted.at(i);
    Slot b = plain.at(k);
    CheckResult res = compare_slots(
        "H^" + std::to_string(i) + " against H^" + std::to_string(k), a, b,
        dual_twist_slot(b, xi), "twisted dual");
    res.detail += suffix;
    rep.checks.push_back(std::move(res));
  }
  return rep;
}

}  // namespace

CheckReport duality_shift_check(const SmoothCharacter& chi,
                                const CohomologyTable& twisted,
                                const CohomologyTable& plain, int dim_p,
                                const GChar& xi) {
  return shift_check_impl(" [chi = " + chi.str() + "]", twisted, plain, dim_p,
                          xi);
}

CheckReport duality_shift_check(const CohomologyTable& twisted,
                                const CohomologyTable& plain, int dim_p,
                                const GChar& xi) {
  return shift_check_impl("", twisted, plain, dim_p, xi);
}

SmoothCharacter dualizing_character(const GroupDatum& ambient,
                                    const GroupDatum& levi, uint32_t field_e) {
  if (levi.p() != ambient.p())
    throw std::invalid_argument("dualizing_character: mismatched primes");
  if (levi.kind() == ambient.kind())
    return SmoothCharacter::trivial(ambient.torus(), field_e);
  if (levi.is_torus() && levi.kind() == ambient.torus().kind())
    return SmoothCharacter::alpha_bar(levi, field_e);
  throw std::invalid_argument(
      "dualizing_character: levi must be the diagonal torus or the whole group");
}

int64_t torus_cohomology(int rank, int degree) {
  if (rank < 0)
    throw std::invalid_argument("torus_cohomology: negative rank");
  if (degree < 0 || degree > rank) return 0;
  int64_t b = 1;
  for (int i = 1; i <= degree; ++i) b = b * (rank - i + 1) / i;
  return b;
}

CheckReport ordinary_check(const CohomologyTable& m_table,
                           const CohomologyTable& big_table,
                           const LeviDatum& levi) {
  if (m_table.top() > 1)
    throw std::invalid_argument("ordinary_check: localized table must live in rows 0 and 1");
  const int rank = levi.torus().kind() == GroupKind::torus_gl2 ? 2 : 1;
  CheckReport rep;

  const Slot row0 = m_table.at(0);
  const Slot row1 = m_table.at(1);
  auto degree_name = [](int n) { return "degree " + std::to_string(n); };
  const int top = std::max(big_table.top(), rank + 1);

  if (row0.is_unknown() || row1.is_unknown()) {
    rep.checks.push_back({"rows", CheckResult::Status::inconclusive,
                          "a localized row is unknown"});
    return rep;
  }
  if (row0.possibly_nonzero() && row1.possibly_nonzero()) {
    for (int n = 0; n <= top; ++n)
      rep.checks.push_back({degree_name(n), CheckResult::Status::inconclusive,
                            "both rows nonzero: degeneration not established"});
    return rep;
  }

  // Degenerate page: a single surviving row j, abutment in degree n equal to
  // row j with multiplicity binomial(rank, n - j).
  const int j = row0.possibly_nonzero() ? 0 : 1;
  const Slot& row = j == 0 ? row0 : row1;
  for (int n = 0; n <= top; ++n) {
    const int64_t mult = torus_cohomology(rank, n - j);
    Slot big = big_table.at(n);
    const std::string nm = degree_name(n);
    if (big.is_unknown()) {
      rep.checks.push_back({nm, CheckResult::Status::inconclusive,
                            "ambient entry unknown"});
      continue;
    }
    // Expected localized value.
    Slot expected = Slot::zero();
    if (mult > 0 && row.possibly_nonzero()) {
      if (!row.has_module()) {
        rep.checks.push_back({nm, CheckResult::Status::inconclusive,
                              "localized row is a formal entry"});
        continue;
      }
      expected = Slot::of_module(
          direct_power(row.module(), static_cast<int>(mult)));
    }
    // Localize the ambient entry.
    Slot localized;
    if (big.is_zero()) {
      localized = Slot::zero();
    } else if (big.has_module()) {
      localized = Slot::of_module(right_adjoint(levi, big.module()));
    } else {
      rep.checks.push_back({nm, CheckResult::Status::inconclusive,
                            "ambient entry is a formal dimension only"});
      continue;
    }
    CheckResult res = compare_slots(nm, localized, big, expected,
                                    "row " + std::to_string(j) +
                                        " with multiplicity " +
                                        std::to_string(mult));
    rep.checks.push_back(std::move(res));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Propagation

std::string Fact::str() const {
  std::ostringstream os;
  if (target == Target::abutment)
    os << "abutment " << degree << ": ";
  else
    os << "E2(" << i << ", " << j << "): ";
  if (is_zero) {
    os << "0";
  } else {
    std::string value = name.empty() ? ("dim " + std::to_string(dim))
                                     : name + "(" + std::to_string(dim) + ")";
    if (dualized) value = "dual of " + value;
    if (rule == "upper-bound")
      os << "dim <= " << dim;
    else
      os << value;
  }
  os << "  [" << rule << "]";
  return os.str();
}

std::string Propagation::str() const {
  std::ostringstream os;
  for (const auto& f : facts) os << "  " << f.str() << "\n";
  if (contradiction) {
    os << "  CONTRADICTION; conflicting constraints:\n";
    for (const auto& c : conflict) os << "    - " << c << "\n";
  }
  return os.str();
}

namespace {

constexpr int64_t kInfinity = std::numeric_limits<int64_t>::max() / 4;

struct CellSt {
  int dim = -1;  // -1 unknown
  std::string name;
  bool known() const { return dim >= 0; }
};

struct AbSt {
  int dim = -1;  // -1 unknown
  std::string name;
  std::string why;  // provenance of a known value, for conflict messages
  bool known() const { return dim >= 0; }
};

std::string cell_label(int i, int j, const CellSt& st) {
  std::string v = st.known() ? std::to_string(st.dim) : "?";
  return "E2(" + std::to_string(i) + ", " + std::to_string(j) + ") = " + v;
}

std::string ab_label(int m, const AbSt& st) {
  return "abutment " + std::to_string(m) + " = " +
         (st.known() ? std::to_string(st.dim) : "?") +
         (st.why.empty() ? "" : " (" + st.why + ")");
}

}  // namespace

Propagation ss_propagate(const E2Page& page) {
  if (page.cd < 0)
    throw std::invalid_argument("ss_propagate: page is missing cd");
  Propagation out;

  // --- state ---------------------------------------------------------------
  std::map<std::pair<int, int>, CellSt> cells;
  for (const auto& [ij, s] : page.cells) {
    CellSt st;
    if (!s.is_unknown()) {
      st.dim = s.dim();
      st.name = s.name();
    }
    cells[ij] = st;
  }

  std::set<int> degrees;
  for (int m = 0; m <= page.cd; ++m) degrees.insert(m);
  for (const auto& [m, s] : page.abutment) degrees.insert(m);
  for (const auto& [ij, st] : cells)
    degrees.insert(page.abutment_degree(ij.first + ij.second));

  std::map<int, AbSt> abut;
  for (int m : degrees) {
    AbSt st;
    auto it = page.abutment.find(m);
    if (it != page.abutment.end() && !it->second.is_unknown()) {
      st.dim = it->second.dim();
      st.name = it->second.name();
      st.why = "declared";
    } else if (it == page.abutment.end() && (m < 0 || m > page.cd)) {
      st.dim = 0;
      st.why = "outside [0, " + std::to_string(page.cd) + "]";
    }
    abut[m] = st;
  }

  auto possibly_nonzero = [&](int i, int j) {
    auto it = cells.find({i, j});
    if (it == cells.end()) return false;  // undeclared cells vanish
    return !it->second.known() || it->second.dim > 0;
  };

  // Differential partners of (i, j) that could still carry rank: targets
  // (i + r, j - r + 1) and sources (i - r, j + r - 1) over all pages r >= 2.
  auto partners = [&](int i, int j) {
    std::vector<std::pair<int, int>> out_p;
    for (int r = 2; j - r + 1 >= 0; ++r)
      if (possibly_nonzero(i + r, j - r + 1)) out_p.push_back({i + r, j - r + 1});
    for (int r = 2; i - r >= 0; ++r)
      if (possibly_nonzero(i - r, j + r - 1)) out_p.push_back({i - r, j + r - 1});
    std::sort(out_p.begin(), out_p.end());
    return out_p;
  };

  auto must_die = [&](int i, int j) {
    const AbSt& st = abut.at(page.abutment_degree(i + j));
    return st.known() && st.dim == 0;
  };

  auto nonzero_cells_feeding = [&](int m) {
    std::vector<std::pair<int, int>> live;
    for (const auto& [ij, st] : cells) {
      (void)st;
      if (page.abutment_degree(ij.first + ij.second) != m) continue;
      if (possibly_nonzero(ij.first, ij.second)) live.push_back(ij);
    }
    return live;
  };

  auto fail = [&](std::vector<std::string> conflict) {
    out.contradiction = true;
    out.conflict = std::move(conflict);
  };

  // --- fixed point ---------------------------------------------------------
  bool changed = true;
  int guard = static_cast<int>(cells.size() + degrees.size()) + 8;
  while (changed && !out.contradiction && guard-- > 0) {
    changed = false;

    // Zero antidiagonals and corners.
    for (int m : degrees) {
      AbSt& st = abut.at(m);
      auto live = nonzero_cells_feeding(m);
      if (live.empty()) {
        if (!st.known()) {
          st.dim = 0;
          st.why = "zero antidiagonal";
          Fact f;
          f.target = Fact::Target::abutment;
          f.degree = m;
          f.is_zero = true;
          f.dim = 0;
          f.rule = "zero-antidiagonal";
          f.detail = "every entry feeding this degree vanishes";
          out.facts.push_back(f);
          changed = true;
        } else if (st.dim > 0) {
          fail({ab_label(m, st), "every entry feeding degree " +
                                      std::to_string(m) + " vanishes"});
          break;
        }
        continue;
      }
      if (live.size() != 1) continue;
      auto [ci, cj] = live[0];
      const CellSt& cst = cells.at({ci, cj});
      if (!cst.known()) continue;
      if (!partners(ci, cj).empty()) continue;
      // Corner: the single surviving entry is untouched by differentials.
      if (st.known()) {
        if (st.dim != cst.dim) {
          fail({ab_label(m, st), cell_label(ci, cj, cst),
                "the corner entry survives to the abutment unchanged"});
          break;
        }
        continue;
      }
      st.dim = cst.dim;
      st.name = cst.name;
      st.why = "corner";
      Fact f;
      f.target = Fact::Target::abutment;
      f.degree = m;
      f.dim = cst.dim;
      f.name = cst.name;
      f.dualized = page.mode == PageMode::dual && !cst.name.empty();
      f.is_zero = cst.dim == 0;
      f.rule = "corner";
      f.detail = "single surviving entry E2(" + std::to_string(ci) + ", " +
                 std::to_string(cj) + ") with no differentials in or out";
      out.facts.push_back(f);
      changed = true;
    }
    if (out.contradiction) break;

    // Cells that must die: forced zeros, capacity bounds, forced isomorphisms.
    for (auto& [ij, st] : cells) {
      const auto [i, j] = ij;
      if (!possibly_nonzero(i, j) || !must_die(i, j)) continue;
      const int m = page.abutment_degree(i + j);
      auto prt = partners(i, j);

      if (prt.empty()) {
        if (st.known() && st.dim > 0) {
          fail({cell_label(i, j, st), ab_label(m, abut.at(m)),
                "no differential can move rank off this entry"});
          break;
        }
        st.dim = 0;
        Fact f;
        f.target = Fact::Target::entry;
        f.i = i;
        f.j = j;
        f.is_zero = true;
        f.dim = 0;
        f.rule = "forced-zero";
        f.detail = "abutment degree " + std::to_string(m) +
                   " vanishes and no differential reaches this entry";
        out.facts.push_back(f);
        changed = true;
        continue;
      }

      if (st.known()) {
        int64_t capacity = 0;
        for (auto [pi, pj] : prt) {
          const CellSt& pst = cells.at({pi, pj});
          capacity += pst.known() ? pst.dim : kInfinity;
        }
        if (capacity < st.dim) {
          std::vector<std::string> conflict{cell_label(i, j, st)};
          for (auto [pi, pj] : prt)
            conflict.push_back("partner " + cell_label(pi, pj, cells.at({pi, pj})));
          conflict.push_back(ab_label(m, abut.at(m)));
          fail(std::move(conflict));
          break;
        }
      }

      // Forced isomorphism: one partner each way, both doomed.
      if (prt.size() != 1) continue;
      auto [yi, yj] = prt[0];
      CellSt& yst = cells.at({yi, yj});
      if (!must_die(yi, yj)) continue;
      auto back = partners(yi, yj);
      if (back.size() != 1 || back[0] != ij) continue;
      if (st.known() && yst.known()) {
        if (st.dim != yst.dim) {
          fail({cell_label(i, j, st), cell_label(yi, yj, yst),
                ab_label(m, abut.at(m)),
                ab_label(page.abutment_degree(yi + yj),
                         abut.at(page.abutment_degree(yi + yj))),
                "the only differential joining them must be an isomorphism"});
          break;
        }
        continue;
      }
      if (!st.known() && !yst.known()) continue;
      CellSt& src = st.known() ? st : yst;
      CellSt& dst = st.known() ? yst : st;
      const auto dst_ij = st.known() ? prt[0] : ij;
      dst.dim = src.dim;
      dst.name = src.name;
      Fact f;
      f.target = Fact::Target::entry;
      f.i = dst_ij.first;
      f.j = dst_ij.second;
      f.dim = src.dim;
      f.name = src.name;
      f.is_zero = src.dim == 0;
      f.rule = "forced-iso";
      f.detail = "must vanish at the abutment and can only trade rank with E2(" +
                 std::to_string(st.known() ? i : yi) + ", " +
                 std::to_string(st.known() ? j : yj) +
                 ") through a single differential";
      out.facts.push_back(f);
      changed = true;
    }
  }
  if (guard <= 0 && !out.contradiction)
    throw std::logic_error("ss_propagate: propagation failed to stabilize");

  if (out.contradiction) return out;

  // Upper bounds for still-unknown abutment degrees with fully known input.
  for (int m : degrees) {
    const AbSt& st = abut.at(m);
    if (st.known()) continue;
    int64_t bound = 0;
    bool usable = true;
    for (const auto& [ij, cst] : cells) {
      if (page.abutment_degree(ij.first + ij.second) != m) continue;
      if (!cst.known()) {
        usable = false;
        break;
      }
      bound += cst.dim;
    }
    if (!usable) continue;
    Fact f;
    f.target = Fact::Target::abutment;
    f.degree = m;
    f.dim = static_cast<int>(bound);
    f.rule = "upper-bound";
    f.detail = "at most the total dimension of the feeding entries";
    out.facts.push_back(f);
  }

  // Euler characteristic, once everything is pinned down.
  bool complete = std::all_of(cells.begin(), cells.end(),
                              [](const auto& kv) { return kv.second.known(); });
  for (int m = 0; m <= page.cd && complete; ++m)
    if (!abut.at(m).known()) complete = false;
  if (complete) {
    int64_t lhs = 0;
    for (const auto& [ij, cst] : cells)
      lhs += ((ij.first + ij.second) % 2 == 0 ? 1 : -1) * cst.dim;
    int64_t rhs = 0;
    for (const auto& [m, st] : abut) {
      if (!st.known() || st.dim == 0) continue;
      const int n = page.mode == PageMode::sum ? m : page.cd - m;
      rhs += (((n % 2) + 2) % 2 == 0 ? 1 : -1) * st.dim;
    }
    if (lhs != rhs) {
      fail({"alternating sum of entries = " + std::to_string(lhs),
            "alternating sum of abutment dimensions = " + std::to_string(rhs)});
      return out;
    }
    Fact f;
    f.target = Fact::Target::abutment;
    f.degree = 0;
    f.dim = static_cast<int>(lhs);
    f.rule = "euler";
    f.detail = "alternating sums of entries and abutment agree";
    out.facts.push_back(f);
  }
  return out;
}

}  // namespace hecke
