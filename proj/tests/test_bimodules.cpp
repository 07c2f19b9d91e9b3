#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "hfk/local.hpp"

using namespace hfk;

namespace {

Idem st(std::initializer_list<int> xs) {
  Idem x = 0;
  for (int p : xs) x |= 1u << p;
  return x;
}

TypeDD swap_dd(const TypeDD& X) {
  TypeDD out;
  out.spec1 = X.spec2;
  out.spec2 = X.spec1;
  for (const auto& g : X.gens) out.add_gen({g.idem2, g.idem, g.maslov, g.alex2});
  for (int s = 0; s < X.size(); s++)
    for (const auto& ar : X.delta[s]) out.add_arrow(s, {ar.coef.a2, ar.coef.a1}, ar.dst);
  return out;
}

Mask comp_mask(Mask S, int m) { return (Mask)(((1u << (m + 1)) - 2) & ~S); }

int gen_with_in_idem(const DABimodule& M, Idem x) {
  for (int t = 0; t < M.num_gens(); t++)
    if (M.gen(t).in_idem == x) return t;
  return -1;
}

}  // namespace

TEST_CASE("critical point bimodule: relation and gradings") {
  for (int m = 0; m <= 2; m++)
    for (int k = 0; k <= m + 1; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (int c = 1; c <= m + 1; c++)
          for (bool up : {true, false}) {
            TypeDD X = crit_dd(c, m, k, (Mask)(S0 << 1), up);
            CHECK(check_typeDD(X).ok);
            for (int g = 0; g < X.size(); g++)
              for (const auto& ar : X.delta[g]) {
                for (int i = 1; i <= m; i++)
                  CHECK(ar.coef.a1.weight2(i) == ar.coef.a2.weight2(phi_c(c, i)));
                CHECK(ar.coef.a2.weight2(c) == ar.coef.a2.weight2(c + 1));
              }
          }
}

TEST_CASE("critical point examples") {
  // delta contains (1 (x) R_{c+1}R_c): X -> Y and (1 (x) L_c L_{c+1}): Y -> X
  int c = 2, m = 2, k = 1;
  TypeDD X = crit_dd(c, m, k, 0, true);
  bool xy = false, yx = false;
  for (int g = 0; g < X.size(); g++)
    for (const auto& ar : X.delta[g]) {
      if (!ar.coef.a1.is_idempotent()) continue;
      auto w = ar.coef.a2.weights2();
      if (ar.coef.a2.cmask == 0 && w[c] == 1 && w[c + 1] == 1) {
        bool src_x = has_bit(X.gens[g].idem2, c - 1);
        bool dst_x = has_bit(X.gens[ar.dst].idem2, c - 1);
        if (src_x && !dst_x) xy = true;
        if (!src_x && dst_x) yx = true;
      }
    }
  CHECK(xy);
  CHECK(yx);
  TypeDD X1 = crit_dd(1, 2, 1, 0, true);
  CHECK(check_typeDD(X1).ok);
}

TEST_CASE("maximum: relation and examples") {
  for (int m = 0; m <= 2; m++)
    for (int k = 0; k <= m + 1; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (int c = 1; c <= m + 1; c++)
          for (bool up : {true, false}) {
            auto M = max_da(c, m, k, (Mask)(S0 << 1), up);
            CHECK(check_typeDA(*M, 4, 3).ok);
          }
  // delta^1_1(X) = C_c U_{c+1} (x) X + R_{c+1} R_c (x) Y when c in S2
  auto M = max_da(1, 1, 1, 0, true);
  int c = 1;
  for (int g = 0; g < M->num_gens(); g++) {
    Idem y = M->gen(g).out_idem;
    if (!has_bit(y, c - 1) || !has_bit(y, c)) continue;  // X-type
    auto ts = M->delta(g, {});
    bool self_c = false, to_y = false;
    for (const auto& t : ts) {
      if (t.dst == g && has_bit(t.coef.cmask, c)) self_c = true;
      if (t.dst != g && t.coef.cmask == 0) to_y = true;
    }
    CHECK(self_c);
    CHECK(to_y);
  }
  // delta^1_2(Z, R_{c-1}) = R_{c-1} (x) X
  auto M2 = max_da(2, 2, 1, 0, true);
  for (int g = 0; g < M2->num_gens(); g++) {
    Idem y = M2->gen(g).out_idem;
    if (has_bit(y, 1) || has_bit(y, 3) || !has_bit(y, 2)) continue;  // Z-type
    Idem x = M2->gen(g).in_idem;
    if (!has_bit(x, 0) || has_bit(x, 1)) continue;
    std::array<int, kMaxStrands> w{};
    w[1] = 1;
    auto r1 = element_from_weights2(2, x, w, 0);
    REQUIRE(r1.has_value());
    auto ts = M2->delta(g, std::span<const Pure>(&*r1, 1));
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].coef.weight2(1) == 1);
    CHECK(has_bit(M2->gen(ts[0].dst).out_idem, 1));
    CHECK(has_bit(M2->gen(ts[0].dst).out_idem, 2));
  }
}

TEST_CASE("duality: Max^c box K equals Crit_c") {
  for (int m = 0; m <= 2; m++)
    for (int k = 0; k <= m; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (int c = 1; c <= m + 1; c++)
          for (bool up : {true, false}) {
            Mask S1 = (Mask)(S0 << 1);
            Mask S1c = comp_mask(S1, m);
            auto M = max_da(c, m, m + 1 - k, S1c, up);
            TypeDD K = canonical_dd(m, m + 1 - k, S1c);
            TypeDD T = reduce(box_DA_DD(*M, K));
            TypeDD C = swap_dd(crit_dd(c, m, k, S1, up));
            REQUIRE(T.spec1 == C.spec1);
            REQUIRE(T.spec2 == C.spec2);
            CHECK(iso_reduced(T, C));
          }
}

TEST_CASE("trident: both routes agree and match the tabulated bimodule") {
  for (int m = 0; m <= 1; m++)
    for (int k = 0; k <= m + 1; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (int c = 1; c + 1 <= m + 1; c++)
          for (bool up : {true, false}) {
            Mask S1 = (Mask)(S0 << 1);
            TypeDD C1 = crit_dd(c + 1, m, k, S1, up);
            auto P = pos_da(c, m + 2, m + 2 - k, C1.spec2.upwards);
            TypeDD lhs = reduce(box_DA_DD(*P, swap_dd(C1)));
            TypeDD C2 = crit_dd(c, m, k, S1, up);
            auto N = neg_da(c + 1, m + 2, m + 2 - k, C2.spec2.upwards);
            TypeDD rhs = reduce(box_DA_DD(*N, swap_dd(C2)));
            REQUIRE(lhs.spec1 == rhs.spec1);
            REQUIRE(lhs.spec2 == rhs.spec2);
            CHECK(iso_reduced(lhs, rhs));
            TypeDD T = swap_dd(trident_dd(c, m, k, S1, lhs.spec1.upwards));
            CHECK(T.size() == lhs.size());
            CHECK(iso_reduced(reduce(T), lhs));
          }
}

TEST_CASE("trident bimodule relation and sample arrows") {
  int c = 1, m = 1;
  bool lc_u = false, lll = false;
  for (int k = 0; k <= 1; k++) {
    TypeDD C1 = crit_dd(c + 1, m, k, 0, true);
    auto P = pos_da(c, m + 2, m + 2 - k, C1.spec2.upwards);
    TypeDD lhs = reduce(box_DA_DD(*P, swap_dd(C1)));
    TypeDD T = trident_dd(c, m, k, 0, lhs.spec1.upwards);
    CHECK(check_typeDD(T).ok);
    for (int g = 0; g < T.size(); g++)
      for (const auto& ar : T.delta[g]) {
        const Pure& a = ar.coef.a1;
        const Pure& b = ar.coef.a2;
        if (a.weight2(c) == 1 && b.weight2(c + 1) == 2 && b.weight2(c) == 0 && b.cmask == 0)
          lc_u = true;
        if (a.is_idempotent() && b.weight2(c) == 1 && b.weight2(c + 1) == 1 &&
            b.weight2(c + 2) == 1)
          lll = true;
      }
  }
  CHECK(lc_u);
  CHECK(lll);
}

TEST_CASE("minimum: structure relations") {
  for (int m = 0; m <= 2; m++)
    for (int k = 0; k <= m; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (bool up : {true, false}) {
          auto M = min1_da(m, k, (Mask)(S0 << 1), up);
          CHECK(check_typeDA(*M, 5, 4).ok);
        }
}

TEST_CASE("minimum: preferred sequence examples") {
  // big algebra B(4,2,{2}), small B(2,1,{})
  auto M = min1_da(2, 1, 0, false);
  REQUIRE(M->in_spec().upwards == st({2}));
  auto mk = [&](Idem from, int pos) {
    std::array<int, kMaxStrands> w{};
    w[pos] = 1;
    auto p = element_from_weights2(4, from, w, 0);
    REQUIRE(p.has_value());
    return *p;
  };
  int src = gen_with_in_idem(*M, st({2, 4}));
  REQUIRE(src >= 0);
  // (L2, L1)
  std::vector<Pure> seq = {mk(st({2, 4}), 2), mk(st({1, 4}), 1)};
  auto ts = M->delta(src, std::span<const Pure>(seq));
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].coef.is_idempotent());
  CHECK(M->gen(ts[0].dst).in_idem == st({0, 4}));
  // (R1, R2)
  std::vector<Pure> seq2 = {mk(st({0, 4}), 1), mk(st({1, 4}), 2)};
  auto ts2 = M->delta(ts[0].dst, std::span<const Pure>(seq2));
  REQUIRE(ts2.size() == 1);
  CHECK(ts2[0].dst == src);
  // (L2, U1, R2)
  std::array<int, kMaxStrands> wu{};
  wu[1] = 2;
  auto u1 = element_from_weights2(4, st({1, 4}), wu, 0);
  std::vector<Pure> seq3 = {mk(st({2, 4}), 2), *u1, mk(st({1, 4}), 2)};
  auto ts3 = M->delta(src, std::span<const Pure>(seq3));
  REQUIRE(ts3.size() == 1);
  CHECK(ts3[0].dst == src);
  CHECK(ts3[0].coef.is_idempotent());
  // (U1^n, C2,...,C2)
  int srcL = gen_with_in_idem(*M, st({0, 4}));
  REQUIRE(srcL >= 0);
  for (int n = 1; n <= 2; n++) {
    std::array<int, kMaxStrands> wn{};
    wn[1] = 2 * n;
    auto un = element_from_weights2(4, st({0, 4}), wn, 0);
    std::vector<Pure> seq4 = {*un};
    std::array<int, kMaxStrands> wc{};
    wc[2] = 2;
    for (int t = 0; t < n; t++)
      seq4.push_back(*element_from_weights2(4, st({0, 4}), wc, (Mask)st({2})));
    auto ts4 = M->delta(srcL, std::span<const Pure>(seq4));
    REQUIRE(ts4.size() == 1);
    CHECK(ts4[0].dst == srcL);
    CHECK(ts4[0].coef.is_idempotent());
  }
  // outside action: delta^1_2(T, R_4) = R_2 (x) T'
  int src3 = gen_with_in_idem(*M, st({2, 3}));
  REQUIRE(src3 >= 0);
  std::vector<Pure> seq5 = {mk(st({2, 3}), 4)};
  auto ts5 = M->delta(src3, std::span<const Pure>(seq5));
  REQUIRE(ts5.size() == 1);
  CHECK(ts5[0].coef.weight2(2) == 1);
  CHECK(M->gen(ts5[0].dst).in_idem == st({2, 4}));
}

TEST_CASE("minimum alternative model: contraction identities") {
  for (bool up : {false, true}) {
    auto A = min1_alt_model(1, 1, 0b10, up, 8);
    CHECK(!A.basis.empty());
    int interior = 0;
    for (const auto& u : A.basis) {
      if (auto h = A.homotopy(u)) CHECK_FALSE(A.homotopy(*h).has_value());
      if (u.total_weight2() > A.cap2 - 4) continue;
      interior++;
      std::vector<Pure> acc;
      auto toggle = [&](const Pure& p) {
        auto it = std::find(acc.begin(), acc.end(), p);
        if (it != acc.end())
          acc.erase(it);
        else
          acc.push_back(p);
      };
      toggle(u);
      if (auto h = A.homotopy(u))
        for (const auto& t : A.boundary(*h)) toggle(t);
      for (const auto& t : A.boundary(u))
        if (auto h = A.homotopy(t)) toggle(*h);
      if (A.is_cycle_generator(u)) {
        REQUIRE(acc.size() == 1);
        CHECK(acc[0] == u);
      } else {
        CHECK(acc.empty());
      }
    }
    CHECK(interior > 0);
  }
}

TEST_CASE("minimum agrees with the alternative model transfer") {
  for (bool up : {false, true}) {
    int m = 1, k = 1;
    Mask S2 = 0b10;
    auto M = min1_da(m, k, S2, up);
    auto A = min1_alt_model(m, k, S2, up, 10);
    auto pures = enumerate_pure(M->in_spec(), 3);
    for (int g = 0; g < M->num_gens(); g++) {
      Idem x0 = M->gen(g).in_idem;
      for (const auto& a : pures) {
        if (a.left != x0) continue;
        std::vector<Pure> seq = {a};
        auto lhs = M->delta(g, std::span<const Pure>(seq));
        auto rhs = A.transfer(x0, std::span<const Pure>(seq));
        CHECK(lhs.size() == rhs.size());
        for (const auto& b : pures) {
          if (b.left != a.right || a.total_weight2() + b.total_weight2() > 3) continue;
          std::vector<Pure> seq2 = {a, b};
          auto l2 = M->delta(g, std::span<const Pure>(seq2));
          auto r2 = A.transfer(x0, std::span<const Pure>(seq2));
          CHECK(l2.size() == r2.size());
          if (l2.size() == 1 && r2.size() == 1) CHECK(l2[0].coef == r2[0].first);
        }
      }
    }
  }
}

TEST_CASE("duality: Min box K equals Crit_1") {
  for (int m = 0; m <= 2; m++)
    for (int k = 0; k <= m; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (bool up : {true, false}) {
          Mask S2 = (Mask)(S0 << 1);
          auto M = min1_da(m, k, S2, up);
          TypeDD K = canonical_dd(m + 2, k + 1, M->in_spec().upwards);
          TypeDD T = reduce(box_DA_DD(*M, K));
          TypeDD C = crit_dd(1, m, k, S2, !up);
          REQUIRE(T.spec1 == C.spec1);
          REQUIRE(T.spec2 == C.spec2);
          CHECK(iso_reduced(T, C));
        }
}

TEST_CASE("duality: Min^c box K equals Crit_c at m <= 2") {
  for (int m = 1; m <= 2; m++)
    for (int k = 0; k <= m; k++)
      for (int c = 2; c <= m + 1; c++)
        for (bool up : {true, false}) {
          Mask S2 = 0;
          auto M = min_da(c, m, k, S2, up);
          TypeDD K = canonical_dd(m + 2, k + 1, M->in_spec().upwards);
          // chain evaluation by associativity, reducing between stages
          Mask up1 = M->in_spec().upwards;
          auto p_low = pos_da(c - 1, m + 2, k + 1, up1);
          auto p_high = pos_da(c, m + 2, k + 1, p_low->out_spec().upwards);
          auto rest = min_da(c - 1, m, k, S2, up);
          TypeDD T = reduce(box_DA_DD(
              *rest, reduce(box_DA_DD(*p_high, reduce(box_DA_DD(*p_low, K)))),
              BoxOptions{2000000}));
          // and the composite object itself on the smallest instance
          if (m == 1) {
            TypeDD TC = reduce(box_DA_DD(*M, K, BoxOptions{20000000}));
            CHECK(iso_reduced(TC, T));
          }
          TypeDD C = crit_dd(c, m, k, S2, !up);
          REQUIRE(T.spec1 == C.spec1);
          REQUIRE(T.spec2 == C.spec2);
          CHECK(iso_reduced(T, C));
        }
}

TEST_CASE("pair cancellation: Min^c box Max^{c+1} is the identity") {
  for (int m = 1; m <= 2; m++)
    for (int k = 0; k <= m; k++)
      for (int c = 1; c <= m; c++)
        for (Mask S0 = 0; S0 < (1u << m); S0++) {
          Mask S = (Mask)(S0 << 1);
          bool cs = has_bit(S, c);
          auto Mx = max_da(c + 1, m, k, S, !cs);
          auto Mn = min_da(c, m, k, S, cs);
          REQUIRE(Mn->in_spec() == Mx->out_spec());
          TypeDD K = canonical_dd(m, k, S);
          TypeDD KX = reduce(box_DA_DD(*Mx, K));
          TypeDD T = reduce(box_DA_DD(*Mn, KX, BoxOptions{2000000}));
          CHECK(iso_reduced(T, reduce(canonical_dd(m, k, S))));
        }
}

TEST_CASE("vrot bimodule identities") {
  AlgebraSpec spec{2, 1, 0b010};
  auto R1 = vrot_bimodule(spec);
  auto R2 = vrot_bimodule(R1->out_spec());
  TypeDD K = canonical_dd(2, 1, spec.upwards);
  TypeDD T = reduce(box_DA_DD(*R2, reduce(box_DA_DD(*R1, K))));
  CHECK(iso_reduced(T, reduce(K)));
  // [R] (x) Pos^i = Pos^{m-i} (x) [R] at m = 3
  int m = 3, k = 2;
  for (int i : {1, 2})
    for (Mask S0 : {0u, 1u, 5u}) {
      Mask S = (Mask)(S0 << 1);
      auto P = pos_da(i, m, k, S);
      auto Rin = vrot_bimodule(P->out_spec());
      TypeDD KK = canonical_dd(m, k, S);
      TypeDD lhs = reduce(box_DA_DD(*Rin, reduce(box_DA_DD(*P, KK))));
      auto Rfirst = vrot_bimodule(P->in_spec());
      auto P2 = pos_da(m - i, m, k, Rfirst->out_spec().upwards);
      TypeDD lower = reduce(box_DA_DD(*Rfirst, KK));
      TypeDD rhs = reduce(box_DA_DD(*P2, lower));
      REQUIRE(lhs.spec1 == rhs.spec1);
      CHECK(iso_reduced(lhs, rhs));
    }
}

TEST_CASE("terminal modules satisfy the A-infinity relations") {
  for (bool up : {true, false})
    for (auto v : {TerminalVariant::Graded, TerminalVariant::Filtered}) {
      TypeA T = terminal_module(v, up);
      CHECK(check_typeA(T, 6, 3).ok);
    }
  TypeA T = terminal_module(TerminalVariant::Filtered, false);
  std::array<int, kMaxStrands> w{};
  w[1] = 4;
  auto u1sq = element_from_weights2(2, st({1}), w, 0);
  CHECK(T.act(0, *u1sq) == std::vector<int>{0});
  std::array<int, kMaxStrands> wc{};
  wc[2] = 2;
  auto c2 = element_from_weights2(2, st({1}), wc, (Mask)st({2}));
  CHECK(T.act(0, *c2).empty());
  std::array<int, kMaxStrands> wl{};
  wl[1] = 1;
  auto l1 = element_from_weights2(2, st({1}), wl, 0);
  REQUIRE(l1->right == st({0}));
  CHECK(T.act(0, *l1) == std::vector<int>{1});
}

TEST_CASE("quasi-inverse summand homology") {
  // weight zero: complementary idempotent pairs give binomial(m+1,k) classes
  for (int m = 1; m <= 3; m++)
    for (int k1 = 0; k1 <= m + 1; k1++) {
      AlgebraSpec B2{m, m + 1 - k1, 0};
      Idem full = (Idem)((1u << (m + 1)) - 1);
      std::array<int, kMaxStrands> Z{};
      int classes = 0;
      for (Idem x : B2.idempotents())
        classes += y_summand_homology(m, k1, 0b10, Z, x, (Idem)(full & ~x));
      int expect = 1;
      for (int t = 0; t < m + 1 - k1; t++) expect = expect * (m + 1 - t) / (t + 1);
      CHECK(classes == expect);
    }
  // the m = 1 weight-3/2 summand is acyclic (the six-generator cube)
  std::array<int, kMaxStrands> Z{};
  Z[1] = 3;
  CHECK(y_summand_homology(1, 1, 0b10, Z, st({0}), st({0})) == 0);
}

TEST_CASE("serialization goldens for elementary bimodules") {
  CHECK(serialize(global_max(true)) ==
        "typeD B(2,1,{1}) gens=1\n"
        "gen 0 idem={1} maslov=0 alex2=0\n"
        "arrow 0 -> 0 : I{1}*U2*C1\n");
  CHECK(serialize(canonical_dd(1, 1, 0b10)) ==
        "typeDD B(1,1,{1}) B(1,1,{}) gens=2\n"
        "gen 0 idem={0}|{1} maslov=0 alex2=0\n"
        "gen 1 idem={1}|{0} maslov=0 alex2=0\n"
        "arrow 0 -> 0 : I{0}*C1 | I{1}*U1\n"
        "arrow 0 -> 1 : I{0}*R1 | I{1}*L1\n"
        "arrow 1 -> 0 : I{1}*L1 | I{0}*R1\n"
        "arrow 1 -> 1 : I{1}*C1 | I{0}*U1\n");
}
