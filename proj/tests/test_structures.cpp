#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hfk/structures.hpp"

using namespace hfk;

namespace {

Idem st(std::initializer_list<int> xs) {
  Idem x = 0;
  for (int p : xs) x |= 1u << p;
  return x;
}

Pure upow(int m, Idem x, int i, int e) {
  std::array<uint8_t, kMaxStrands> u{};
  u[i] = (uint8_t)e;
  return *make_pure(m, x, x, u, 0);
}

}  // namespace

TEST_CASE("cancel: acyclic pair vanishes") {
  TypeD X;
  X.spec = {1, 1, 0};
  X.add_gen({st({0}), 0, 1, 0});
  X.add_gen({st({0}), 0, 0, 0});
  X.add_arrow(0, *idempotent_elt(1, st({0})), 1);
  REQUIRE(check_typeD(X).ok);
  TypeD R = reduce(X);
  CHECK(R.size() == 0);
}

TEST_CASE("cancel: zig-zag correction") {
  // p -> U (x) y, x -> 1 (x) y + U (x) q: cancelling (x,y) gives p -> U^2 (x) q
  AlgebraSpec spec{1, 1, 0};
  TypeD X;
  X.spec = spec;
  Idem i0 = st({0});
  X.add_gen({i0, 0, 3, 4});   // p
  X.add_gen({i0, 0, 3, 2});   // x
  X.add_gen({i0, 0, 2, 2});   // y
  X.add_gen({i0, 0, 2, 0});   // q
  X.add_arrow(0, upow(1, i0, 1, 1), 2);
  X.add_arrow(1, *idempotent_elt(1, i0), 2);
  X.add_arrow(1, upow(1, i0, 1, 1), 3);
  REQUIRE(check_typeD(X).ok);
  REQUIRE(check_gradings_D(X).ok);
  TypeD R = reduce(X);
  REQUIRE(R.size() == 2);
  REQUIRE(R.delta[0].size() == 1);
  CHECK(R.delta[0][0].coef == upow(1, i0, 1, 2));
  CHECK(check_typeD(R).ok);
  CHECK(check_gradings_D(R).ok);
  CHECK(reduce(R).size() == 2);  // reduce is idempotent
}

TEST_CASE("equal_reduced: relabeling and mismatch") {
  AlgebraSpec spec{1, 1, 0};
  Idem i0 = st({0});
  TypeD X, Y, Z;
  X.spec = Y.spec = Z.spec = spec;
  X.add_gen({i0, 0, 1, 2});
  X.add_gen({i0, 0, 0, 0});
  X.add_arrow(0, upow(1, i0, 1, 1), 1);
  Y.add_gen({i0, 0, 0, 0});
  Y.add_gen({i0, 0, 1, 2});
  Y.add_arrow(1, upow(1, i0, 1, 1), 0);
  CHECK(equal_reduced(X, Y));
  CHECK(equal_reduced(X, X));
  Z.add_gen({i0, 0, 1, 2});
  CHECK_FALSE(equal_reduced(X, Z));
  // same shape, different gradings
  TypeD W = Y;
  W.gens[0].maslov = 5;
  CHECK_FALSE(equal_reduced(X, W));
  CHECK(equal_reduced(X, W, false));
}

TEST_CASE("homology over F2") {
  GradedComplex C;
  C.gens.push_back({0, 0, 0, 0});
  C.gens.push_back({0, 0, 2, 2});
  REQUIRE(C.check().ok);
  auto H = homology_F2(C);
  CHECK(H.total() == 2);
  CHECK(H.dims.at({0, 0}) == 1);
  CHECK(H.dims.at({2, 2}) == 1);

  GradedComplex A;
  A.gens.push_back({0, 0, 1, 0});
  A.gens.push_back({0, 0, 0, 0});
  A.arrows.push_back({0, 1});
  REQUIRE(A.check().ok);
  CHECK(homology_F2(A).total() == 0);
}

TEST_CASE("homology over F[U]") {
  // single generator, no differential: one tower
  FUComplex C;
  C.gens.push_back({0, 0, 0, 0});
  auto M = homology_FU(C);
  REQUIRE(M.towers.size() == 1);
  CHECK(M.torsion.empty());

  // d = (U^2) on a pair: torsion F[U]/U^2
  FUComplex T;
  T.gens.push_back({0, 0, 1, 4});
  T.gens.push_back({0, 0, 0, 0});
  T.arrows.push_back({0, 1, 2});
  REQUIRE(T.check().ok);
  auto MT = homology_FU(T);
  CHECK(MT.towers.empty());
  REQUIRE(MT.torsion.size() == 1);
  CHECK(MT.torsion[0] == std::tuple<int, int, int>{0, 0, 2});

  // choose the minimal pivot: d(a) = U b + c leaves one tower
  FUComplex S;
  S.gens.push_back({0, 0, 1, 2});  // a
  S.gens.push_back({0, 0, 0, 0});  // b
  S.gens.push_back({0, 0, 0, 2});  // c
  S.arrows.push_back({0, 1, 1});
  S.arrows.push_back({0, 2, 0});
  REQUIRE(S.check().ok);
  auto MS = homology_FU(S);
  CHECK(MS.towers.size() == 1);
  CHECK(MS.torsion.empty());
}

TEST_CASE("serialization is deterministic") {
  TypeD X;
  X.spec = {1, 1, 0};
  Idem i0 = st({0});
  X.add_gen({i0, 0, 1, 2});
  X.add_gen({i0, 0, 0, 0});
  X.add_arrow(0, upow(1, i0, 1, 1), 1);
  std::string s = serialize(X);
  CHECK(s ==
        "typeD B(1,1,{}) gens=2\n"
        "gen 0 idem={0} maslov=1 alex2=2\n"
        "gen 1 idem={0} maslov=0 alex2=0\n"
        "arrow 0 -> 1 : I{0}*U1\n");
}
