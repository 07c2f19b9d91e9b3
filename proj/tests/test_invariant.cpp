#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "hfk/invariant.hpp"

using namespace hfk;

namespace {

BigradedModule dims(std::initializer_list<std::tuple<int, int, int>> ts) {
  BigradedModule m;
  for (auto [d, s, v] : ts) m.dims[{d, 2 * s}] = v;
  return m;
}

}  // namespace

TEST_CASE("unknot in three presentations") {
  auto d1 = braid_to_bridge(parse_braid("1 []"));
  auto d2 = braid_to_bridge(parse_braid("2 [1]"));
  auto d3 = parse_events("strands 0\nmin 1\ncross - 1\nmax 1 L\n");
  for (auto* d : {&d1, &d2, &d3}) {
    auto inv = compute_invariants(*d);
    CHECK(inv.kha == dims({{0, 0, 1}}));
    CHECK(inv.khm_towers == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(inv.khm_torsion.empty());
    CHECK(inv.euler_ok);
  }
  CHECK(verify_moves(d1, d2));
  CHECK(verify_moves(d1, d3));
}

TEST_CASE("trefoils") {
  auto left = compute_invariants(braid_to_bridge(parse_braid("2 [-1,-1,-1]")));
  CHECK(left.kha == dims({{2, 1, 1}, {1, 0, 1}, {0, -1, 1}}));
  CHECK(left.euler_ok);
  auto right = compute_invariants(braid_to_bridge(parse_braid("2 [1,1,1]")));
  CHECK(right.kha == dims({{-2, -1, 1}, {-1, 0, 1}, {0, 1, 1}}));
  CHECK(right.euler_ok);
  // chi(KHa) agrees with the state-sum Alexander polynomial
  Laurent chi;
  for (auto& [key, v] : left.kha.dims) chi.add(key.second, key.first % 2 ? -v : v);
  CHECK(chi == left.alexander);
}

TEST_CASE("figure eight") {
  auto inv = compute_invariants(braid_to_bridge(parse_braid("3 [1,-2,1,-2]")));
  CHECK(inv.kha == dims({{1, 1, 1}, {0, 0, 3}, {-1, -1, 1}}));
  CHECK(inv.euler_ok);
}

TEST_CASE("invariance under Reidemeister and bridge moves") {
  // trefoil: plain, with a positive kink, and stabilized
  auto t1 = braid_to_bridge(parse_braid("2 [1,1,1]"));
  auto t2 = braid_to_bridge(parse_braid("2 [1,1,1,1,-1]"));
  auto t3 = braid_to_bridge(parse_braid("3 [1,1,1,2]"));
  CHECK(verify_moves(t1, t2));
  CHECK(verify_moves(t1, t3));
  // figure eight stabilized
  auto f1 = braid_to_bridge(parse_braid("3 [1,-2,1,-2]"));
  auto f2 = braid_to_bridge(parse_braid("4 [1,-2,1,-2,3]"));
  CHECK(verify_moves(f1, f2));
  CHECK(verify_moves(f1, f1));
}

TEST_CASE("mirrors and connected sums") {
  CHECK(mirror_check(braid_to_bridge(parse_braid("2 [1,1,1]"))));
  CHECK(mirror_check(braid_to_bridge(parse_braid("3 [1,-2,1,-2]"))));
  CHECK(mirror_check(braid_to_bridge(parse_braid("2 [1,1,1,1,1]"))));
  CHECK(connected_sum_check(parse_braid("2 [1,1,1]"), parse_braid("2 [1,1,1]")));
  CHECK(connected_sum_check(parse_braid("2 [1,1,1]"), parse_braid("2 [-1,-1,-1]")));
  CHECK(connected_sum_check(parse_braid("2 [1,1,1]"), parse_braid("1 []")));
}

TEST_CASE("U = 0 specialization of KHm reproduces KHa") {
  for (const char* w : {"2 [1,1,1]", "3 [1,-2,1,-2]", "2 [1,1,1,1,1]", "3 [1,1,1,2]"}) {
    auto inv = compute_invariants(braid_to_bridge(parse_braid(w)));
    BigradedModule expect;
    for (auto [d, s] : inv.khm_towers) expect.dims[{d, 2 * s}] += 1;
    for (auto [d, s, k] : inv.khm_torsion) {
      expect.dims[{d, 2 * s}] += 1;
      expect.dims[{d - 2 * k + 1, 2 * (s - k)}] += 1;
    }
    CHECK(expect.dims == inv.kha.dims);
  }
}

TEST_CASE("Kauffman states bound the complex") {
  for (const char* w : {"2 [1,1,1]", "3 [1,-2,1,-2]", "3 [1,1,1,2]"}) {
    auto d = braid_to_bridge(parse_braid(w));
    PipelineOptions opt;
    std::vector<int> sizes;
    TypeD X = upper_structure(d, opt, &sizes);
    size_t states = kauffman_states(d).size();
    CHECK(X.size() <= (int)states);
    CHECK(run_kha(d).total() <= (int)states);
  }
}

TEST_CASE("pd route matches the braid route") {
  auto pd = pd_to_bridge(parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"));
  auto braid_r = run_kha(braid_to_bridge(parse_braid("2 [1,1,1]")));
  auto braid_l = run_kha(braid_to_bridge(parse_braid("2 [-1,-1,-1]")));
  auto viapd = run_kha(pd);
  CHECK((viapd.dims == braid_r.dims || viapd.dims == braid_l.dims));
}

TEST_CASE("search budget failure is loud") {
  auto d = braid_to_bridge(parse_braid("3 [1,-2,1,-2]"));
  PipelineOptions opt;
  opt.budget = 2;
  CHECK_THROWS_AS(compute_invariants(d, opt), SearchBudgetExceeded);
}

TEST_CASE("json output round-trips") {
  auto inv = compute_invariants(braid_to_bridge(parse_braid("2 [1,1,1]")));
  auto j = nlohmann::json::parse(inv.json());
  CHECK(j["euler_ok"] == true);
  CHECK(j["kha"].size() == 3);
  int total = 0;
  for (auto& e : j["kha"]) total += (int)e["dim"];
  CHECK(total == inv.kha.total());
  CHECK(j["khm"]["towers"].size() == 1);
  CHECK(j["alexander"] == inv.alexander.str());
}
