/**
 * test_weyl.cpp — monomial-matrix Weyl layer.
 *
 * The closed-form length is certified against an independent breadth-first
 * search in the units-stripped quotient, and against the valuation formula
 * |a - b| on diagonal classes.  Generator lifts are pinned by their defining
 * relations; reduced words are checked to reconstruct, alternate, and have
 * the right size.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hecke/weyl.hpp"

using namespace hecke;

namespace {

/// Key of the units-stripped image (permutation + valuations only).
std::string skey(const WElt& w) {
  std::ostringstream os;
  for (int i = 0; i < w.n(); ++i) {
    int j = w.col_of_row(i);
    os << j << ':' << w.entry(i, j).val << ';';
  }
  return os.str();
}

/// BFS distances from the identity in the units-stripped affine Weyl group,
/// out to the given radius.  Generators: the two stripped simple lifts.
std::unordered_map<std::string, int64_t> bfs_lengths(const GroupDatum& g,
                                                     int radius) {
  std::vector<WElt> gens;
  for (int i = 0; i < 2; ++i) {
    WElt s = g.simple_lift(i);
    gens.push_back(WElt::monomial(
        g.p(), {s.col_of_row(0), s.col_of_row(1)}, {1, 1},
        {s.entry(0, s.col_of_row(0)).val, s.entry(1, s.col_of_row(1)).val}));
  }
  std::unordered_map<std::string, int64_t> dist;
  std::vector<WElt> frontier{WElt::identity(2, g.p())};
  dist[skey(frontier[0])] = 0;
  for (int d = 1; d <= radius; ++d) {
    std::vector<WElt> next;
    for (const WElt& w : frontier)
      for (const WElt& s : gens) {
        for (WElt cand : {s * w, w * s}) {
          std::string k = skey(cand);
          if (!dist.count(k)) {
            dist[k] = d;
            next.push_back(cand);
          }
        }
      }
    frontier = std::move(next);
  }
  return dist;
}

WElt strip_units(const WElt& w) {
  std::vector<int> col;
  std::vector<int64_t> unit, val;
  for (int i = 0; i < w.n(); ++i) {
    int j = w.col_of_row(i);
    col.push_back(j);
    unit.push_back(1);
    val.push_back(w.entry(i, j).val);
  }
  return WElt::monomial(w.p(), col, unit, val);
}

}  // namespace

TEST_CASE("generator lifts satisfy their defining relations") {
  for (uint32_t p : {3u, 5u, 7u}) {
    CAPTURE(p);
    GroupDatum sl(GroupKind::sl2, p);
    WElt s1 = sl.simple_lift(1), s0 = sl.simple_lift(0);
    WElt minus_id = WElt::diagonal(p, {{-1, 0}, {-1, 0}});
    CHECK(s1 * s1 == minus_id);
    CHECK(s0 * s0 == minus_id);
    CHECK(s0 * s1 == sl.z_elt());
    CHECK(s1 * s0 == sl.z_elt().inverse());
    CHECK(s1.inverse() == s1 * minus_id);

    GroupDatum gl(GroupKind::gl2, p);
    WElt t1 = gl.simple_lift(1), t0 = gl.simple_lift(0), pi = gl.pi_lift();
    WElt id = WElt::identity(2, p);
    CHECK(t1 * t1 == id);
    CHECK(t0 * t0 == id);
    CHECK(pi * pi == WElt::diagonal(p, {{1, 1}, {1, 1}}));
    CHECK(pi * t1 * pi.inverse() == t0);
    CHECK(pi * t0 * pi.inverse() == t1);
    CHECK(pi * t1 == gl.z_elt());
    CHECK(t1 * pi.inverse() == gl.z_elt().inverse());

    // group membership of everything constructed so far
    for (const WElt& w : {s1, s0, minus_id}) CHECK(sl.contains(w));
    for (const WElt& w : {t1, t0, pi}) CHECK(gl.contains(w));
    CHECK(!sl.contains(pi));
    CHECK(!sl.contains(t1));  // det -1
  }
}

TEST_CASE("conjugation by reflections swaps diagonal coordinates") {
  for (GroupKind kind : {GroupKind::sl2, GroupKind::gl2}) {
    GroupDatum g(kind, 5);
    for (const WElt& t : g.finite_torus()) {
      WElt swapped = WElt::diagonal(5, {{t.entry(1, 1).unit, 0},
                                        {t.entry(0, 0).unit, 0}});
      for (int i = 0; i < 2; ++i) {
        WElt s = g.simple_lift(i);
        CHECK(s * t * s.inverse() == swapped);
      }
    }
  }
}

TEST_CASE("inverse and pow round-trip on random words") {
  std::mt19937 rng(424242);
  for (GroupKind kind : {GroupKind::sl2, GroupKind::gl2}) {
    GroupDatum g(kind, 7);
    std::vector<WElt> gens{g.simple_lift(0), g.simple_lift(1)};
    for (const WElt& t : g.length_zero_generators()) gens.push_back(t);
    WElt id = WElt::identity(2, 7);
    for (int trial = 0; trial < 50; ++trial) {
      WElt w = id;
      int len = static_cast<int>(rng() % 6);
      for (int i = 0; i < len; ++i) w = w * gens[rng() % gens.size()];
      CHECK(w * w.inverse() == id);
      CHECK(w.inverse() * w == id);
      CHECK(w.pow(3) == w * w * w);
      CHECK(w.pow(-2) == (w * w).inverse());
      CHECK(g.contains(w));
    }
  }
}

TEST_CASE("closed-form length agrees with BFS in the stripped quotient") {
  std::mt19937 rng(99173);
  for (GroupKind kind : {GroupKind::sl2, GroupKind::gl2}) {
    CAPTURE(to_string(kind));
    GroupDatum g(kind, 5);
    auto dist = bfs_lengths(g, 9);
    std::vector<WElt> gens{g.simple_lift(0), g.simple_lift(1)};
    std::vector<WElt> zero = g.length_zero_generators();
    for (int trial = 0; trial < 200; ++trial) {
      WElt w = WElt::identity(2, 5);
      int len = static_cast<int>(rng() % 8);
      for (int i = 0; i < len; ++i) {
        w = w * gens[rng() % gens.size()];
        if (rng() % 3 == 0) w = w * zero[rng() % zero.size()];
      }
      // strip the extended part (gl2): w_aff = w * pi^-valsum
      WElt waff = w;
      if (kind == GroupKind::gl2)
        waff = w * g.pi_lift().pow(-w.val_sum());
      std::string k = skey(strip_units(waff));
      REQUIRE(dist.count(k));
      CHECK(g.length(w) == dist.at(k));
    }
  }
}

TEST_CASE("length of diagonal classes is |a - b|") {
  GroupDatum gl(GroupKind::gl2, 5);
  for (int64_t a = -3; a <= 3; ++a)
    for (int64_t b = -3; b <= 3; ++b) {
      WElt w = WElt::diagonal(5, {{2, a}, {3, b}});
      CHECK(gl.length(w) == (a > b ? a - b : b - a));
    }
  GroupDatum sl(GroupKind::sl2, 5);
  for (int64_t a = -3; a <= 3; ++a) {
    WElt w = WElt::diagonal(5, {{2, -a}, {3, a}});
    CHECK(sl.length(w) == (a < 0 ? -2 * a : 2 * a));
  }
}

TEST_CASE("length-zero multiplication preserves length") {
  GroupDatum gl(GroupKind::gl2, 5);
  WElt pi = gl.pi_lift();
  std::mt19937 rng(5);
  std::vector<WElt> gens{gl.simple_lift(0), gl.simple_lift(1)};
  for (int trial = 0; trial < 60; ++trial) {
    WElt w = WElt::identity(2, 5);
    int len = static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) w = w * gens[rng() % gens.size()];
    CHECK(gl.length(pi * w) == gl.length(w));
    CHECK(gl.length(w * pi) == gl.length(w));
    CHECK(gl.length(pi) == 0);
  }
}

TEST_CASE("reduced words reconstruct, alternate, and have length many letters") {
  std::mt19937 rng(777);
  for (GroupKind kind : {GroupKind::sl2, GroupKind::gl2}) {
    GroupDatum g(kind, 5);
    std::vector<WElt> gens{g.simple_lift(0), g.simple_lift(1)};
    std::vector<WElt> zero = g.length_zero_generators();
    for (int trial = 0; trial < 150; ++trial) {
      WElt w = WElt::identity(2, 5);
      int len = static_cast<int>(rng() % 7);
      for (int i = 0; i < len; ++i) w = w * gens[rng() % gens.size()];
      if (rng() % 2) w = w * zero[rng() % zero.size()];
      auto rw = g.reduced_word(w);
      CHECK(static_cast<int64_t>(rw.word.size()) == g.length(w));
      CHECK(g.length(rw.omega) == 0);
      WElt rebuilt = WElt::identity(2, 5);
      for (int i : rw.word) rebuilt = rebuilt * g.simple_lift(i);
      rebuilt = rebuilt * rw.omega;
      CHECK(rebuilt == w);
      for (size_t i = 1; i < rw.word.size(); ++i)
        CHECK(rw.word[i] != rw.word[i - 1]);
    }
  }
}

TEST_CASE("positivity: weakly decreasing valuations on the diagonal") {
  GroupDatum sl(GroupKind::sl2, 5);
  GroupDatum gl(GroupKind::gl2, 5);
  CHECK(sl.is_positive(sl.z_elt().inverse()));   // diag(p, p^-1)
  CHECK(!sl.is_positive(sl.z_elt()));            // diag(p^-1, p)
  CHECK(gl.is_positive(gl.z_elt().inverse()));   // diag(1, p^-1)
  CHECK(!gl.is_positive(gl.z_elt()));            // diag(1, p)
  CHECK(gl.is_positive(WElt::identity(2, 5)));
  CHECK(!gl.is_positive(gl.simple_lift(1)));     // not diagonal
  CHECK(gl.is_positive(WElt::diagonal(5, {{2, 3}, {4, 3}})));
}

TEST_CASE("omega_decompose splits off powers of pi") {
  GroupDatum gl(GroupKind::gl2, 5);
  WElt pi = gl.pi_lift();
  for (int64_t k = -3; k <= 3; ++k)
    for (const WElt& t : gl.finite_torus()) {
      WElt w = pi.pow(k) * t;
      REQUIRE(gl.length(w) == 0);
      auto [kk, tt] = gl.omega_decompose(w);
      CHECK(kk == k);
      CHECK(tt == t);
      CHECK(pi.pow(kk) * tt == w);
    }
  CHECK_THROWS(gl.omega_decompose(gl.simple_lift(1)));

  GroupDatum sl(GroupKind::sl2, 5);
  for (const WElt& t : sl.finite_torus()) {
    auto [k, tt] = sl.omega_decompose(t);
    CHECK(k == 0);
    CHECK(tt == t);
  }
}

TEST_CASE("finite torus and c-set sizes") {
  for (uint32_t p : {3u, 5u, 7u}) {
    CHECK(GroupDatum(GroupKind::sl2, p).finite_torus().size() == p - 1);
    CHECK(GroupDatum(GroupKind::gl2, p).finite_torus().size() ==
          (p - 1) * (p - 1));
    GroupDatum g(GroupKind::sl2, p);
    auto cs = g.c_set();
    CHECK(cs.size() == p - 1);
    for (const WElt& t : cs) {
      CHECK(g.contains(t));
      CHECK(g.length(t) == 0);
    }
  }
}

TEST_CASE("torus data: all elements have length zero; z lives in the torus") {
  GroupDatum tsl(GroupKind::torus_sl2, 5);
  GroupDatum tgl(GroupKind::torus_gl2, 5);
  CHECK(tsl.is_torus());
  CHECK(tgl.is_torus());
  CHECK(GroupDatum(GroupKind::sl2, 5).torus().kind() == GroupKind::torus_sl2);
  CHECK(GroupDatum(GroupKind::gl2, 5).torus().kind() == GroupKind::torus_gl2);
  CHECK(tsl.torus().kind() == GroupKind::torus_sl2);
  for (const GroupDatum& t : {tsl, tgl}) {
    CHECK(t.contains(t.z_elt()));
    CHECK(t.length(t.z_elt()) == 0);
    CHECK(t.length(t.z_elt().pow(-4)) == 0);
    auto rw = t.reduced_word(t.z_elt());
    CHECK(rw.word.empty());
    CHECK(rw.omega == t.z_elt());
  }
  CHECK(!tsl.contains(WElt::diagonal(5, {{1, 1}, {1, 1}})));  // det p^2
  CHECK(tgl.contains(WElt::diagonal(5, {{1, 1}, {1, 1}})));
  CHECK(!tgl.contains(GroupDatum(GroupKind::gl2, 5).simple_lift(1)));
}

TEST_CASE("group kind names round-trip") {
  for (GroupKind k : {GroupKind::sl2, GroupKind::gl2, GroupKind::torus_sl2,
                      GroupKind::torus_gl2})
    CHECK(group_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(group_kind_from_string("so5"));
}
