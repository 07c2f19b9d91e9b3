#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hfk/diagram.hpp"

using namespace hfk;

namespace {

Laurent poly(std::initializer_list<std::pair<int, long long>> terms) {
  Laurent p;
  for (auto [e2, v] : terms) p.add(e2, v);
  return p;
}

BridgeDiagram trefoil_right() { return braid_to_bridge(parse_braid("2 [1,1,1]")); }
BridgeDiagram trefoil_left() { return braid_to_bridge(parse_braid("2 [-1,-1,-1]")); }
BridgeDiagram fig8() { return braid_to_bridge(parse_braid("3 [1,-2,1,-2]")); }
BridgeDiagram unknot1() { return braid_to_bridge(parse_braid("1 []")); }

}  // namespace

TEST_CASE("braid parsing") {
  BraidWord b = parse_braid("braid 2 [1,1,1]");
  CHECK(b.n == 2);
  CHECK(b.word == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(parse_braid("2 [3]"), ParseError);
  CHECK_THROWS_AS(parse_braid("2 [1, 1"), ParseError);
  CHECK_THROWS_AS(parse_braid("x"), ParseError);
}

TEST_CASE("bridge validation and orientations") {
  BridgeDiagram d = trefoil_right();
  CHECK(d.num_crossings() == 3);
  CHECK(d.strands == std::vector<int>{0, 2, 4, 4, 4, 4, 2, 0});
  for (int i = 3; i <= 4; i++) {
    CHECK(has_bit(d.upwards[i], 1));
    CHECK(has_bit(d.upwards[i], 2));
    CHECK_FALSE(has_bit(d.upwards[i], 3));
    CHECK_FALSE(has_bit(d.upwards[i], 4));
  }
  CHECK_THROWS_AS(braid_to_bridge(parse_braid("2 [1,1]")), ParseError);
}

TEST_CASE("event scripts") {
  std::string txt =
      "strands 0\n"
      "min 1\n"
      "cross + 1\n"
      "max 1 L\n";
  BridgeDiagram d = parse_events(txt);
  CHECK(d.num_crossings() == 1);
  std::string bad =
      "strands 0\n"
      "min 1\n"
      "cross + 1\n"
      "max 1 R\n";
  CHECK_THROWS_AS(parse_events(bad), ParseError);
  std::string bad2 =
      "strands 0\n"
      "min 1\n"
      "max 2 L\n"
      "max 1 L\n";
  CHECK_THROWS_AS(parse_events(bad2), ParseError);
}

TEST_CASE("Kauffman states: counts") {
  CHECK(kauffman_states(unknot1()).size() == 1);
  CHECK(kauffman_states(trefoil_right()).size() == 3);
  CHECK(kauffman_states(trefoil_left()).size() == 3);
  CHECK(kauffman_states(fig8()).size() == 5);
  auto u = kauffman_states(unknot1());
  CHECK(u[0].maslov == 0);
  CHECK(u[0].alex2 == 0);
}

TEST_CASE("Alexander polynomial from the state sum") {
  CHECK(alexander_from_states(unknot1()) == poly({{0, 1}}));
  Laurent tre = alexander_from_states(trefoil_right());
  CHECK(tre == poly({{2, 1}, {0, -1}, {-2, 1}}));
  CHECK(alexander_from_states(trefoil_left()) == tre);
  Laurent f8 = alexander_from_states(fig8());
  CHECK(f8 == poly({{2, -1}, {0, 3}, {-2, -1}}));
  for (auto* d : {&tre, &f8}) {
    CHECK(d->symmetric());
    CHECK(std::abs(d->at_one()) == 1);
  }
  for (const char* w : {"2 [1,1,1,1,1]", "3 [1,1,1,2,-1,2]"}) {
    Laurent p = alexander_from_states(braid_to_bridge(parse_braid(w)));
    CHECK(p.symmetric());
    CHECK(std::abs(p.at_one()) == 1);
  }
}

TEST_CASE("signature") {
  CHECK(signature(unknot1()) == 0);
  CHECK(signature(trefoil_right()) == -2);
  CHECK(signature(trefoil_left()) == 2);
  CHECK(signature(fig8()) == 0);
  CHECK(signature(braid_to_bridge(parse_braid("2 [1,1,1,1,1]"))) == -4);
  CHECK(signature(braid_to_bridge(parse_braid("2 [-1,-1,-1,-1,-1]"))) == 4);
  BridgeDiagram d = fig8();
  CHECK(signature(d.mirror()) == -signature(d));
}

TEST_CASE("PD codes") {
  PDCode pd = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)");
  CHECK(pd.crossings.size() == 3);
  CHECK_THROWS_AS(parse_pd("X(1,4,2,5)"), ParseError);
  BridgeDiagram d = pd_to_bridge(pd);
  CHECK(d.num_crossings() == 3);
  CHECK(kauffman_states(d).size() == 3);
  Laurent p = alexander_from_states(d);
  CHECK(p == poly({{2, 1}, {0, -1}, {-2, 1}}));
}
