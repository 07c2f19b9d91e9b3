#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hfk/local.hpp"

using namespace hfk;

namespace {

Idem st(std::initializer_list<int> xs) {
  Idem x = 0;
  for (int p : xs) x |= 1u << p;
  return x;
}

Pure elt(int m, Idem left, std::initializer_list<int> w2, Mask cm = 0) {
  std::array<int, kMaxStrands> w{};
  int i = 1;
  for (int v : w2) w[i++] = v;
  auto p = element_from_weights2(m, left, w, cm);
  REQUIRE(p.has_value());
  return *p;
}

// swap the two output algebras of a DD structure
TypeDD swap_dd(const TypeDD& X) {
  TypeDD out;
  out.spec1 = X.spec2;
  out.spec2 = X.spec1;
  for (const auto& g : X.gens) out.add_gen({g.idem2, g.idem, g.maslov, g.alex2});
  for (int s = 0; s < X.size(); s++)
    for (const auto& ar : X.delta[s]) out.add_arrow(s, {ar.coef.a2, ar.coef.a1}, ar.dst);
  return out;
}

}  // namespace

TEST_CASE("global max satisfies the structure relation") {
  for (bool up : {true, false}) {
    TypeD X = global_max(up);
    CHECK(check_typeD(X).ok);
    CHECK(check_gradings_D(X).ok);
  }
  // while delta(x) = U1 (x) x over B(1,1) does not
  TypeD B;
  B.spec = {1, 1, 0};
  B.add_gen({st({0}), 0, 0, 0});
  std::array<uint8_t, kMaxStrands> u{};
  u[1] = 1;
  B.add_arrow(0, *make_pure(1, st({0}), st({0}), u, 0), 0);
  CHECK_FALSE(check_typeD(B).ok);
}

TEST_CASE("identity bimodule: relation and unit property of box") {
  AlgebraSpec spec{2, 1, 0b100};
  auto id = identity_da(spec);
  CHECK(check_typeDA(*id, 4, 3).ok);
  TypeD X = global_max(false);
  TypeD Y = box_DA_D(*id, X);
  CHECK(equal_reduced(X, Y));
}

TEST_CASE("canonical DD bimodule") {
  // generator count and relation for all small specs
  for (int m = 1; m <= 3; m++)
    for (int k1 = 0; k1 <= m + 1; k1++)
      for (Mask S = 0; S < (1u << m); S++) {
        TypeDD K = canonical_dd(m, k1, (Mask)(S << 1));
        int expect = 1;
        for (int t = 0; t < k1; t++) expect = expect * (m + 1 - t) / (t + 1);
        CHECK(K.size() == expect);
        CHECK(check_typeDD(K).ok);
      }
  // the m=2 example over B(2,1,{2}) and B(2,2,{1}):
  // delta(E) = (L2 (x) R2) (x) F + (C2 (x) U2) (x) E with E = k_{2}, F = k_{1}
  TypeDD K = canonical_dd(2, 1, 0b100);
  int E = -1, F = -1;
  for (int t = 0; t < K.size(); t++) {
    if (K.gens[t].idem == st({2})) E = t;
    if (K.gens[t].idem == st({1})) F = t;
  }
  REQUIRE(E >= 0);
  REQUIRE(F >= 0);
  bool found_LR = false, found_CU = false;
  for (const auto& ar : K.delta[E]) {
    if (ar.dst == F && ar.coef.a1 == elt(2, st({2}), {0, 1}) &&
        ar.coef.a2 == elt(2, st({0, 1}), {0, 1}))
      found_LR = true;
    if (ar.dst == E && ar.coef.a1 == elt(2, st({2}), {0, 2}, 0b100) &&
        ar.coef.a2 == elt(2, st({0, 1}), {0, 2}))
      found_CU = true;
  }
  CHECK(found_LR);
  CHECK(found_CU);
}

TEST_CASE("crossing DA: local model examples") {
  // delta^1_2(W, U1) = U2 (x) W + L1 L2 (x) E over B(2,2)
  auto P = pos_da(1, 2, 2, 0);
  int W = -1;
  for (int t = 0; t < P->num_gens(); t++)
    if (P->gen(t).in_idem == st({0, 2}) && P->gen(t).out_idem == st({1, 2})) W = t;
  REQUIRE(W >= 0);
  Pure u1 = elt(2, st({0, 2}), {2, 0});
  auto terms = P->delta(W, std::span<const Pure>(&u1, 1));
  REQUIRE(terms.size() == 2);
  bool toW = false, toE = false;
  for (const auto& t : terms) {
    if (t.coef == elt(2, st({1, 2}), {0, 2})) toW = true;          // U2 (x) W
    if (t.coef == elt(2, st({1, 2}), {1, 1})) toE = true;          // L1 L2 (x) E
  }
  CHECK(toW);
  CHECK(toE);

  // delta^1_3(S, U1, U2^2) = L2 U1^2 (x) E + R1 U1 U2 (x) W over B(2,2)
  auto P2 = pos_da(1, 2, 2, 0);
  int S = -1;
  for (int t = 0; t < P2->num_gens(); t++)
    if (P2->gen(t).in_idem == st({0, 2}) && P2->gen(t).out_idem == st({0, 2})) S = t;
  REQUIRE(S >= 0);
  std::vector<Pure> in = {elt(2, st({0, 2}), {2, 0}), elt(2, st({0, 2}), {0, 4})};
  auto t3 = P2->delta(S, std::span<const Pure>(in));
  REQUIRE(t3.size() == 2);
  bool e_term = false, w_term = false;
  for (const auto& t : t3) {
    if (t.coef == elt(2, st({0, 2}), {4, 1})) e_term = true;  // L2 U1^2
    if (t.coef == elt(2, st({0, 2}), {3, 2})) w_term = true;  // R1 U1 U2
  }
  CHECK(e_term);
  CHECK(w_term);

  // delta^1_2(N, R3 R2) = R3 R2 R1 (x) W + R3 U1 (x) E at m = 4, k = 3
  auto P4 = pos_da(1, 4, 3, 0);
  int N = -1;
  for (int t = 0; t < P4->num_gens(); t++)
    if (P4->gen(t).in_idem == st({0, 1, 2}) && P4->gen(t).out_idem == st({0, 1, 2})) N = t;
  REQUIRE(N >= 0);
  Pure r3r2 = elt(4, st({0, 1, 2}), {0, 1, 1, 0});
  auto t4 = P4->delta(N, std::span<const Pure>(&r3r2, 1));
  REQUIRE(t4.size() == 2);
  bool ww = false, ee = false;
  for (const auto& t : t4) {
    if (t.coef == elt(4, st({0, 1, 2}), {1, 1, 1, 0})) ww = true;  // R3 R2 R1
    if (t.coef == elt(4, st({0, 1, 2}), {2, 0, 1, 0})) ee = true;  // R3 U1
  }
  CHECK(ww);
  CHECK(ee);
}

TEST_CASE("crossing DA: negative crossing example") {
  // delta^1_3(W, R_i U_i^n, R_{i+1}) = R_{i+1} U_{i+1}^n (x) S
  auto N = neg_da(1, 2, 1, 0);
  int W = -1;
  for (int t = 0; t < N->num_gens(); t++)
    if (N->gen(t).in_idem == st({0}) && N->gen(t).out_idem == st({1})) W = t;
  REQUIRE(W >= 0);
  for (int n = 0; n <= 2; n++) {
    std::vector<Pure> in = {elt(2, st({0}), {2 * n + 1, 0}), elt(2, st({1}), {0, 1})};
    auto ts = N->delta(W, std::span<const Pure>(in));
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].coef == elt(2, st({1}), {0, 2 * n + 1}));
    CHECK(N->gen(ts[0].dst).in_idem == st({2}));
  }
}

TEST_CASE("crossing DA relations at m = 2, all k and orientations") {
  for (int k = 0; k <= 3; k++)
    for (Mask S = 0; S < 4; S++) {
      auto P = pos_da(1, 2, k, (Mask)(S << 1));
      CHECK(check_typeDA(*P, 6, 4).ok);
      auto N = neg_da(1, 2, k, (Mask)(S << 1));
      CHECK(check_typeDA(*N, 6, 4).ok);
    }
}

TEST_CASE("crossing DD relations at m <= 3") {
  for (int m = 2; m <= 3; m++)
    for (int i = 1; i + 1 <= m; i++)
      for (int k2 = 0; k2 <= m + 1; k2++)
        for (Mask S1 = 0; S1 < (1u << m); S1++) {
          // S2 with S1 cap tau(S2) = 0 and |S1| + |S2| = m: tau(S2) = comp(S1)
          Mask comp = (Mask)(((1u << m) - 1) & ~S1) << 1;
          Mask S2 = comp;
          bool bi = has_bit(comp, i), bi1 = has_bit(comp, i + 1);
          S2 &= ~((1u << i) | (1u << (i + 1)));
          if (bi) S2 |= 1u << (i + 1);
          if (bi1) S2 |= 1u << i;
          TypeDD P = pos_dd(i, m, k2, S2, (Mask)(S1 << 1), true, true);
          CHECK(check_typeDD(P).ok);
          TypeDD N = neg_dd(i, m, k2, S2, (Mask)(S1 << 1), true, true);
          CHECK(check_typeDD(N).ok);
        }
}

TEST_CASE("duality: Pos^i box K equals Pos_i") {
  // over all orientations at m = 2, i = 1, k = 1
  for (int k = 1; k <= 2; k++)
    for (Mask S0 = 0; S0 < 4; S0++) {
      Mask S = (Mask)(S0 << 1);
      auto P = pos_da(1, 2, k, S);
      TypeDD K = canonical_dd(2, k, S);
      TypeDD T = reduce(box_DA_DD(*P, K));
      Mask up2 = P->out_spec().upwards;
      Mask all = 0b110;
      TypeDD Pdd = pos_dd(1, 2, k, up2, (Mask)(all & ~S), has_bit(S, 1), has_bit(S, 2));
      CHECK(iso_reduced(T, reduce(Pdd)));
      // and the negative crossing
      auto Nda = neg_da(1, 2, k, S);
      TypeDD TN = reduce(box_DA_DD(*Nda, K));
      TypeDD Ndd = neg_dd(1, 2, k, up2, (Mask)(all & ~S), has_bit(S, 1), has_bit(S, 2));
      CHECK(iso_reduced(TN, reduce(Ndd)));
    }
}

TEST_CASE("opposite of the crossing DD swaps chirality") {
  Mask S1 = 0b0110 & 0;  // empty
  TypeDD P = pos_dd(1, 2, 1, 0, S1, true, true);
  TypeDD O = opposite_of(P);
  TypeDD N = neg_dd(1, 2, 1, 0, S1, true, true);
  // O negates gradings; Neg_i has its own normalization, compare structurally
  CHECK(iso_reduced(O, N));
}

TEST_CASE("braid relation: Pos box Neg box K = K at m = 2") {
  for (int k = 1; k <= 2; k++)
    for (Mask S0 = 0; S0 < 4; S0++) {
      Mask S = (Mask)(S0 << 1);
      auto N = neg_da(1, 2, k, S);
      auto P = pos_da(1, 2, k, N->out_spec().upwards);
      REQUIRE(P->in_spec() == N->out_spec());
      TypeDD K = canonical_dd(2, k, S);
      TypeDD KN = reduce(box_DA_DD(*N, K));
      TypeDD KPN = reduce(box_DA_DD(*P, KN));
      CHECK(equal_reduced(KPN, reduce(canonical_dd(2, k, S))));
      // and in the other order
      auto P2 = pos_da(1, 2, k, S);
      auto N2 = neg_da(1, 2, k, P2->out_spec().upwards);
      TypeDD KP = reduce(box_DA_DD(*P2, K));
      TypeDD KNP = reduce(box_DA_DD(*N2, KP));
      CHECK(equal_reduced(KNP, reduce(canonical_dd(2, k, S))));
    }
}

TEST_CASE("box_DA_DA composite matches iterated box against K") {
  Mask S = 0;
  auto N = neg_da(1, 2, 1, S);
  auto P = pos_da(1, 2, 1, N->out_spec().upwards);
  auto C = box_DA_DA(P, N);
  TypeDD K = canonical_dd(2, 1, S);
  TypeDD lhs = reduce(box_DA_DD(*C, K));
  TypeDD rhs = reduce(box_DA_DD(*P, reduce(box_DA_DD(*N, K))));
  CHECK(equal_reduced(lhs, rhs));
}

TEST_CASE("swap helper sanity") {
  TypeDD K = canonical_dd(2, 1, 0b100);
  TypeDD KS = swap_dd(swap_dd(K));
  CHECK(equal_reduced(K, KS));
}
