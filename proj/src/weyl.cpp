#include "hecke/weyl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hecke {

namespace {

uint32_t unit_mod(int64_t u, uint32_t p) {
  int64_t m = u % static_cast<int64_t>(p);
  if (m < 0) m += p;
  if (m == 0) throw std::invalid_argument("monomial entry unit is zero mod p");
  return static_cast<uint32_t>(m);
}

uint32_t unit_inverse(uint32_t u, uint32_t p) {
  // p is small; scan is fine and obviously correct.
  for (uint32_t v = 1; v < p; ++v)
    if ((static_cast<uint64_t>(u) * v) % p == 1) return v;
  throw std::invalid_argument("unit not invertible");
}

uint32_t primitive_root(uint32_t p) {
  auto order = [p](uint32_t g) {
    uint32_t k = 1;
    uint64_t x = g;
    while (x != 1) {
      x = (x * g) % p;
      ++k;
    }
    return k;
  };
  for (uint32_t g = 2; g < p; ++g)
    if (order(g) == p - 1) return g;
  if (p == 2) return 1;
  throw std::logic_error("no primitive root found");
}

/// Action on the affine line: x -> eps * x + m.
struct AffMap {
  int eps = 1;
  int64_t m = 0;
};

AffMap affine_action(const WElt& w) {
  if (w.is_diagonal()) {
    return {1, w.entry(1, 1).val - w.entry(0, 0).val};
  }
  return {-1, w.entry(1, 0).val - w.entry(0, 1).val};
}

int64_t aff_length(const AffMap& a) {
  return a.eps == 1 ? std::abs(a.m) : std::abs(a.m - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// WElt

WElt WElt::identity(int n, uint32_t p) {
  WElt w;
  w.p_ = p;
  w.n_ = n;
  w.col_.resize(static_cast<size_t>(n));
  w.unit_.assign(static_cast<size_t>(n), 1);
  w.val_.assign(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) w.col_[static_cast<size_t>(i)] = i;
  return w;
}

WElt WElt::diagonal(uint32_t p,
                    const std::vector<std::pair<int64_t, int64_t>>& entries) {
  WElt w = identity(static_cast<int>(entries.size()), p);
  for (size_t i = 0; i < entries.size(); ++i) {
    w.unit_[i] = unit_mod(entries[i].first, p);
    w.val_[i] = entries[i].second;
  }
  return w;
}

WElt WElt::monomial(uint32_t p, const std::vector<int>& col,
                    const std::vector<int64_t>& unit,
                    const std::vector<int64_t>& val) {
  const size_t n = col.size();
  if (unit.size() != n || val.size() != n)
    throw std::invalid_argument("monomial: size mismatch");
  std::vector<bool> seen(n, false);
  for (int c : col) {
    if (c < 0 || static_cast<size_t>(c) >= n || seen[static_cast<size_t>(c)])
      throw std::invalid_argument("monomial: col is not a permutation");
    seen[static_cast<size_t>(c)] = true;
  }
  WElt w;
  w.p_ = p;
  w.n_ = static_cast<int>(n);
  w.col_ = col;
  w.unit_.resize(n);
  w.val_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    w.unit_[i] = unit_mod(unit[i], p);
    w.val_[i] = val[i];
  }
  return w;
}

MonomialEntry WElt::entry(int i, int j) const {
  if (col_[static_cast<size_t>(i)] != j) return {};
  return {unit_[static_cast<size_t>(i)], val_[static_cast<size_t>(i)]};
}

WElt WElt::operator*(const WElt& rhs) const {
  if (p_ != rhs.p_ || n_ != rhs.n_)
    throw std::invalid_argument("WElt product: incompatible elements");
  WElt out;
  out.p_ = p_;
  out.n_ = n_;
  out.col_.resize(static_cast<size_t>(n_));
  out.unit_.resize(static_cast<size_t>(n_));
  out.val_.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const size_t si = static_cast<size_t>(i);
    const size_t mid = static_cast<size_t>(col_[si]);
    out.col_[si] = rhs.col_[mid];
    out.unit_[si] = static_cast<uint32_t>(
        (static_cast<uint64_t>(unit_[si]) * rhs.unit_[mid]) % p_);
    out.val_[si] = val_[si] + rhs.val_[mid];
  }
  return out;
}

WElt WElt::inverse() const {
  WElt out;
  out.p_ = p_;
  out.n_ = n_;
  out.col_.resize(static_cast<size_t>(n_));
  out.unit_.resize(static_cast<size_t>(n_));
  out.val_.resize(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const size_t si = static_cast<size_t>(i);
    const size_t j = static_cast<size_t>(col_[si]);
    out.col_[j] = i;
    out.unit_[j] = unit_inverse(unit_[si], p_);
    out.val_[j] = -val_[si];
  }
  return out;
}

WElt WElt::pow(int64_t k) const {
  WElt base = k < 0 ? inverse() : *this;
  int64_t e = k < 0 ? -k : k;
  WElt acc = identity(n_, p_);
  for (int64_t i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

bool WElt::operator==(const WElt& rhs) const {
  return p_ == rhs.p_ && n_ == rhs.n_ && col_ == rhs.col_ &&
         unit_ == rhs.unit_ && val_ == rhs.val_;
}

bool WElt::is_diagonal() const {
  for (int i = 0; i < n_; ++i)
    if (col_[static_cast<size_t>(i)] != i) return false;
  return true;
}

int64_t WElt::val_sum() const {
  int64_t s = 0;
  for (int64_t v : val_) s += v;
  return s;
}

MonomialEntry WElt::det() const {
  // permutation sign from inversion count
  int inversions = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (col_[static_cast<size_t>(i)] > col_[static_cast<size_t>(j)])
        ++inversions;
  uint64_t u = (inversions % 2 == 0) ? 1 : p_ - 1;
  for (uint32_t x : unit_) u = (u * x) % p_;
  return {static_cast<uint32_t>(u), val_sum()};
}

std::string WElt::key() const {
  std::ostringstream os;
  os << p_ << '|' << n_;
  for (int i = 0; i < n_; ++i) {
    const size_t si = static_cast<size_t>(i);
    os << '|' << col_[si] << ',' << unit_[si] << ',' << val_[si];
  }
  return os.str();
}

std::string WElt::str() const {
  auto entry_str = [](uint32_t u, int64_t v) {
    std::ostringstream os;
    if (v == 0) {
      os << u;
    } else {
      if (u != 1) os << u << '*';
      os << 'p';
      if (v != 1) os << '^' << v;
    }
    return os.str();
  };
  std::ostringstream os;
  if (is_diagonal()) {
    os << "diag(";
    for (int i = 0; i < n_; ++i) {
      if (i) os << ", ";
      const size_t si = static_cast<size_t>(i);
      os << entry_str(unit_[si], val_[si]);
    }
    os << ')';
  } else {
    os << "mono[";
    for (int i = 0; i < n_; ++i) {
      if (i) os << ", ";
      const size_t si = static_cast<size_t>(i);
      os << '(' << i << ',' << col_[si]
         << ")=" << entry_str(unit_[si], val_[si]);
    }
    os << ']';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupKind / GroupDatum

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::sl2: return "sl2";
    case GroupKind::gl2: return "gl2";
    case GroupKind::torus_sl2: return "torus_sl2";
    case GroupKind::torus_gl2: return "torus_gl2";
  }
  return "?";
}

GroupKind group_kind_from_string(const std::string& name) {
  if (name == "sl2") return GroupKind::sl2;
  if (name == "gl2") return GroupKind::gl2;
  if (name == "torus_sl2") return GroupKind::torus_sl2;
  if (name == "torus_gl2") return GroupKind::torus_gl2;
  throw std::invalid_argument("unknown group kind: " + name);
}

GroupDatum::GroupDatum(GroupKind kind, uint32_t p) : kind_(kind), p_(p) {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
}

bool GroupDatum::is_torus() const {
  return kind_ == GroupKind::torus_sl2 || kind_ == GroupKind::torus_gl2;
}

GroupDatum GroupDatum::torus() const {
  switch (kind_) {
    case GroupKind::sl2:
    case GroupKind::torus_sl2:
      return GroupDatum(GroupKind::torus_sl2, p_);
    default:
      return GroupDatum(GroupKind::torus_gl2, p_);
  }
}

bool GroupDatum::contains(const WElt& w) const {
  if (w.p() != p_ || w.n() != 2) return false;
  if (is_torus() && !w.is_diagonal()) return false;
  if (kind_ == GroupKind::sl2 || kind_ == GroupKind::torus_sl2) {
    MonomialEntry d = w.det();
    return d.unit == 1 && d.val == 0;
  }
  return true;
}

WElt GroupDatum::simple_lift(int i) const {
  if (is_torus()) throw std::logic_error("torus has no affine reflections");
  if (i != 0 && i != 1) throw std::invalid_argument("simple_lift index");
  const int64_t minus_one = static_cast<int64_t>(p_) - 1;
  if (kind_ == GroupKind::sl2) {
    if (i == 1) return WElt::monomial(p_, {1, 0}, {1, minus_one}, {0, 0});
    return WElt::monomial(p_, {1, 0}, {minus_one, 1}, {-1, 1});
  }
  if (i == 1) return WElt::monomial(p_, {1, 0}, {1, 1}, {0, 0});
  return WElt::monomial(p_, {1, 0}, {1, 1}, {-1, 1});
}

WElt GroupDatum::pi_lift() const {
  if (kind_ != GroupKind::gl2)
    throw std::logic_error("pi_lift is gl2-specific");
  return WElt::monomial(p_, {1, 0}, {1, 1}, {0, 1});
}

WElt GroupDatum::z_elt() const {
  if (kind_ == GroupKind::sl2 || kind_ == GroupKind::torus_sl2)
    return WElt::diagonal(p_, {{1, -1}, {1, 1}});
  return WElt::diagonal(p_, {{1, 0}, {1, 1}});
}

std::vector<WElt> GroupDatum::finite_torus() const {
  std::vector<WElt> out;
  if (kind_ == GroupKind::sl2 || kind_ == GroupKind::torus_sl2) {
    for (uint32_t u = 1; u < p_; ++u)
      out.push_back(WElt::diagonal(
          p_, {{u, 0}, {unit_inverse(u, p_), 0}}));
  } else {
    for (uint32_t u1 = 1; u1 < p_; ++u1)
      for (uint32_t u2 = 1; u2 < p_; ++u2)
        out.push_back(WElt::diagonal(p_, {{u1, 0}, {u2, 0}}));
  }
  return out;
}

std::vector<WElt> GroupDatum::length_zero_generators() const {
  const uint32_t g = primitive_root(p_);
  std::vector<WElt> out;
  switch (kind_) {
    case GroupKind::sl2:
      if (p_ > 2)
        out.push_back(
            WElt::diagonal(p_, {{g, 0}, {unit_inverse(g, p_), 0}}));
      break;
    case GroupKind::gl2:
      if (p_ > 2) {
        out.push_back(WElt::diagonal(p_, {{g, 0}, {1, 0}}));
        out.push_back(WElt::diagonal(p_, {{1, 0}, {g, 0}}));
      }
      out.push_back(pi_lift());
      break;
    case GroupKind::torus_sl2:
      if (p_ > 2)
        out.push_back(
            WElt::diagonal(p_, {{g, 0}, {unit_inverse(g, p_), 0}}));
      out.push_back(z_elt());
      break;
    case GroupKind::torus_gl2:
      if (p_ > 2) {
        out.push_back(WElt::diagonal(p_, {{g, 0}, {1, 0}}));
        out.push_back(WElt::diagonal(p_, {{1, 0}, {g, 0}}));
      }
      out.push_back(WElt::diagonal(p_, {{1, 1}, {1, 0}}));
      out.push_back(WElt::diagonal(p_, {{1, 0}, {1, 1}}));
      break;
  }
  return out;
}

std::vector<WElt> GroupDatum::c_set() const {
  std::vector<WElt> out;
  for (uint32_t u = 1; u < p_; ++u)
    out.push_back(WElt::diagonal(p_, {{u, 0}, {unit_inverse(u, p_), 0}}));
  return out;
}

int64_t GroupDatum::length(const WElt& w) const {
  if (!contains(w)) throw std::invalid_argument("length: element not in group");
  if (is_torus()) return 0;
  return aff_length(affine_action(w));
}

GroupDatum::ReducedWord GroupDatum::reduced_word(const WElt& w) const {
  if (!contains(w))
    throw std::invalid_argument("reduced_word: element not in group");
  ReducedWord out;
  out.omega = w;
  if (is_torus()) return out;
  WElt cur = w;
  int64_t len = length(cur);
  while (len > 0) {
    bool found = false;
    for (int i = 0; i < 2 && !found; ++i) {
      WElt cand = simple_lift(i).inverse() * cur;
      if (length(cand) == len - 1) {
        out.word.push_back(i);
        cur = cand;
        --len;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no left descent found");
  }
  out.omega = cur;
  return out;
}

bool GroupDatum::is_positive(const WElt& w) const {
  if (!w.is_diagonal()) return false;
  return w.entry(0, 0).val >= w.entry(1, 1).val;
}

std::pair<int64_t, WElt> GroupDatum::omega_decompose(const WElt& w) const {
  if (kind_ == GroupKind::sl2) {
    if (!w.is_diagonal() || w.entry(0, 0).val != 0 || w.entry(1, 1).val != 0)
      throw std::invalid_argument("omega_decompose: not length zero");
    return {0, w};
  }
  if (kind_ != GroupKind::gl2)
    throw std::logic_error("omega_decompose supports sl2/gl2 only");
  const int64_t k = w.val_sum();
  WElt t = pi_lift().pow(-k) * w;
  if (!t.is_diagonal() || t.entry(0, 0).val != 0 || t.entry(1, 1).val != 0)
    throw std::invalid_argument("omega_decompose: not length zero");
  return {k, t};
}

}  // namespace hecke
