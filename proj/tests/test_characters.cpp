/**
 * test_characters.cpp — smooth torus characters and Hecke-algebra characters.
 *
 * Hand-pinned evaluations, multiplicativity on random pairs, the semantic
 * meaning of the Weyl swap (conjugation by a reflection lift) and of the
 * inverse (evaluation at inverses), and enumeration counts.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hecke/characters.hpp"

using namespace hecke;

namespace {

WElt random_torus_elt(std::mt19937& rng, const GroupDatum& torus) {
  const uint32_t p = torus.p();
  auto unit = [&] { return static_cast<int64_t>(1 + rng() % (p - 1)); };
  auto val = [&] { return static_cast<int64_t>(rng() % 7) - 3; };
  if (torus.kind() == GroupKind::torus_gl2)
    return WElt::diagonal(p, {{unit(), val()}, {unit(), val()}});
  int64_t u = unit(), k = val();
  WElt t = WElt::diagonal(p, {{u, k}, {1, -k}});
  // fix the second unit so the determinant is 1
  return WElt::diagonal(p, {{u, k}, {t.inverse().entry(0, 0).unit, -k}});
}

}  // namespace

TEST_CASE("hand-pinned evaluations") {
  GroupDatum tgl(GroupKind::torus_gl2, 5);
  Fq c1 = Fq::make(5, 1, 2), c2 = Fq::make(5, 1, 3);
  SmoothCharacter chi = SmoothCharacter::make(tgl, 1, {1, 2}, {c1, c2});
  // 2^1 * 3^2 * 2^1 * 3^-1 = 2 * 4 * 2 * 2 = 32 = 2 (mod 5)
  CHECK(chi.eval(WElt::diagonal(5, {{2, 1}, {3, -1}})) == Fq::make(5, 1, 2));
  CHECK(chi.eval(WElt::identity(2, 5)).is_one());

  GroupDatum tsl(GroupKind::torus_sl2, 5);
  SmoothCharacter psi =
      SmoothCharacter::make(tsl, 1, {3}, {Fq::make(5, 1, 2)});
  // x = 2, k = 2: 2^3 * 2^2 = 32 = 2 (mod 5)
  CHECK(psi.eval(WElt::diagonal(5, {{2, 2}, {3, -2}})) == Fq::make(5, 1, 2));
}

TEST_CASE("trivial character is one everywhere") {
  std::mt19937 rng(11);
  for (GroupKind k : {GroupKind::torus_sl2, GroupKind::torus_gl2}) {
    GroupDatum t(k, 7);
    SmoothCharacter chi = SmoothCharacter::trivial(t, 1);
    for (int i = 0; i < 20; ++i)
      CHECK(chi.eval(random_torus_elt(rng, t)).is_one());
    CHECK(!chi.is_regular());
  }
}

TEST_CASE("alpha_bar evaluates to the unit part of a/b") {
  GroupDatum tgl(GroupKind::torus_gl2, 5);
  SmoothCharacter a = SmoothCharacter::alpha_bar(tgl, 1);
  CHECK(a.eval(WElt::diagonal(5, {{3, 2}, {2, -1}})) ==
        Fq::make(5, 1, 3) / Fq::make(5, 1, 2));
  CHECK(a.eval(WElt::diagonal(5, {{1, 5}, {1, 0}})).is_one());

  GroupDatum tsl(GroupKind::torus_sl2, 5);
  SmoothCharacter b = SmoothCharacter::alpha_bar(tsl, 1);
  // diag(x p^k, ...) -> x^2
  CHECK(b.eval(WElt::diagonal(5, {{3, 4}, {2, -4}})) == Fq::make(5, 1, 4));
}

TEST_CASE("multiplicativity and group laws") {
  std::mt19937 rng(20260825);
  for (GroupKind k : {GroupKind::torus_sl2, GroupKind::torus_gl2}) {
    GroupDatum t(k, 7);
    std::vector<int64_t> exps =
        k == GroupKind::torus_sl2 ? std::vector<int64_t>{4}
                                  : std::vector<int64_t>{2, 5};
    std::vector<Fq> unram =
        k == GroupKind::torus_sl2
            ? std::vector<Fq>{Fq::make(7, 1, 3)}
            : std::vector<Fq>{Fq::make(7, 1, 3), Fq::make(7, 1, 5)};
    SmoothCharacter chi = SmoothCharacter::make(t, 1, exps, unram);
    for (int i = 0; i < 40; ++i) {
      WElt x = random_torus_elt(rng, t), y = random_torus_elt(rng, t);
      CHECK(chi.eval(x * y) == chi.eval(x) * chi.eval(y));
      CHECK(chi.inverse().eval(x) == chi.eval(x.inverse()));
      CHECK(chi.inverse().eval(x) == chi.eval(x).inverse());
    }
    CHECK(chi * chi.inverse() == SmoothCharacter::trivial(t, 1));
    CHECK(chi.weyl_swap().weyl_swap() == chi);
  }
}

TEST_CASE("weyl_swap is conjugation by a reflection lift") {
  std::mt19937 rng(5150);
  for (GroupKind gk : {GroupKind::sl2, GroupKind::gl2}) {
    GroupDatum g(gk, 7);
    GroupDatum t = g.torus();
    std::vector<int64_t> exps = gk == GroupKind::sl2
                                    ? std::vector<int64_t>{3}
                                    : std::vector<int64_t>{1, 4};
    std::vector<Fq> unram =
        gk == GroupKind::sl2
            ? std::vector<Fq>{Fq::make(7, 1, 2)}
            : std::vector<Fq>{Fq::make(7, 1, 2), Fq::make(7, 1, 6)};
    SmoothCharacter chi = SmoothCharacter::make(t, 1, exps, unram);
    for (int i = 0; i < 2; ++i) {
      WElt s = g.simple_lift(i);
      for (int trial = 0; trial < 25; ++trial) {
        WElt x = random_torus_elt(rng, t);
        CHECK(chi.weyl_swap().eval(x) == chi.eval(s * x * s.inverse()));
      }
    }
  }
}

TEST_CASE("alpha_bar swap-invariance is a p = 5 coincidence for sl2") {
  GroupDatum t5(GroupKind::torus_sl2, 5);
  SmoothCharacter a5 = SmoothCharacter::alpha_bar(t5, 1);
  CHECK(!a5.is_regular());  // exponent 2 == -2 mod 4
  GroupDatum t7(GroupKind::torus_sl2, 7);
  SmoothCharacter a7 = SmoothCharacter::alpha_bar(t7, 1);
  CHECK(a7.is_regular());
  GroupDatum g5(GroupKind::torus_gl2, 5);
  CHECK(SmoothCharacter::alpha_bar(g5, 1).is_regular());
}

TEST_CASE("Hecke character enumeration counts") {
  GroupDatum sl(GroupKind::sl2, 5), gl(GroupKind::gl2, 5);
  auto sl_chars = HCharacter::enumerate(sl, 1);
  // r in {0,..,3}; only r = 0 admits nonzero affine values (four pairs);
  // every other r carries the single all-zero structure
  CHECK(sl_chars.size() == 4 + 1 + 1 + 1);
  auto gl_chars = HCharacter::enumerate(gl, 1);
  CHECK(gl_chars.size() == 4 * 2 * 4);  // r x {0,-1} x gamma

  int sl_triv = 0, gl_triv = 0;
  for (const auto& c : sl_chars)
    if (c.omega_trivial()) ++sl_triv;
  for (const auto& c : gl_chars)
    if (c.omega_trivial()) ++gl_triv;
  CHECK(sl_triv == 4);
  CHECK(gl_triv == 2);

  // distinguished characters occur in the enumeration
  auto contains = [](const std::vector<HCharacter>& v, const HCharacter& c) {
    for (const auto& x : v)
      if (x == c) return true;
    return false;
  };
  CHECK(contains(sl_chars, h_trivial(sl, 1)));
  CHECK(contains(sl_chars, h_sign(sl, 1)));
  CHECK(contains(gl_chars, h_trivial(gl, 1)));
  CHECK(contains(gl_chars, h_sign(gl, 1)));
  CHECK(contains(gl_chars, h_sign_star(gl, 1)));
  CHECK(contains(gl_chars, h_trivial_star(gl, 1)));

  // the gate: sum_{u in F_p^*} u^r vanishes unless (p-1) | r, so a quadratic
  // a^2 = (sum) a admits a nonzero root only at r = 0
  for (uint32_t r = 0; r < 4; ++r) {
    Fq sum = Fq::make(5, 1, 0);
    for (uint32_t u = 1; u < 5; ++u) sum = sum + Fq::make(5, 1, u).pow(r);
    if (r == 0)
      CHECK(sum == -Fq::make(5, 1, 1));
    else
      CHECK(sum.is_zero());
  }
}

TEST_CASE("eval_omega on length-zero elements") {
  GroupDatum gl(GroupKind::gl2, 5);
  HCharacter star = h_sign_star(gl, 1);
  CHECK(star.eval_omega(gl.pi_lift()) == Fq::make(5, 1, -1));
  CHECK(star.eval_omega(gl.pi_lift().pow(2)).is_one());
  CHECK(star.eval_omega(WElt::diagonal(5, {{2, 0}, {3, 0}})).is_one());

  HCharacter chi = h_trivial(gl, 1);
  chi.r = 1;
  // diag(2, 3) -> (2*3)^1 = 6 = 1 (mod 5)
  CHECK(chi.eval_omega(WElt::diagonal(5, {{2, 0}, {3, 0}})).is_one());
  // diag(2, 2) -> 4
  CHECK(chi.eval_omega(WElt::diagonal(5, {{2, 0}, {2, 0}})) ==
        Fq::make(5, 1, 4));

  GroupDatum sl(GroupKind::sl2, 5);
  HCharacter psi = h_sign(sl, 1);
  psi.r = 2;
  CHECK(psi.eval_omega(WElt::diagonal(5, {{2, 0}, {3, 0}})) ==
        Fq::make(5, 1, 4));
  CHECK_THROWS(psi.eval_omega(sl.z_elt()));
}
