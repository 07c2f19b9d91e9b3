#include "hfk/verify.hpp"

#include <atomic>
#include <chrono>
#include <future>
#include <sstream>

namespace hfk {

namespace {

struct Case {
  std::string label;
  std::function<bool()> run;
};

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

void relations_cases(std::vector<Case>& cs, const VerifyOptions& opt) {
  for (int m = 1; m <= opt.max_m; m++)
    for (int k = 0; k <= m + 1; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++) {
        Mask S = (Mask)(S0 << 1);
        std::ostringstream tag;
        tag << "m=" << m << " k=" << k << " S=" << S0;
        for (int i = 1; i + 1 <= m; i++) {
          cs.push_back({"pos_da " + tag.str() + " i=" + std::to_string(i),
                        [=] { return check_typeDA(*pos_da(i, m, k, S), opt.weight2, opt.len).ok; }});
          cs.push_back({"neg_da " + tag.str() + " i=" + std::to_string(i),
                        [=] { return check_typeDA(*neg_da(i, m, k, S), opt.weight2, opt.len).ok; }});
        }
        cs.push_back({"canonical_dd " + tag.str(),
                      [=] { return check_typeDD(canonical_dd(m, k, S)).ok; }});
        for (int i = 1; i + 1 <= m; i++) {
          Mask S2 = comp_mask(S, m);
          Mask tS2 = S2 & ~((1u << i) | (1u << (i + 1)));
          if (has_bit(S2, i)) tS2 |= 1u << (i + 1);
          if (has_bit(S2, i + 1)) tS2 |= 1u << i;
          cs.push_back({"pos_dd " + tag.str() + " i=" + std::to_string(i), [=] {
                          return check_typeDD(pos_dd(i, m, m + 1 - k, tS2, S, true, true)).ok;
                        }});
          cs.push_back({"neg_dd " + tag.str() + " i=" + std::to_string(i), [=] {
                          return check_typeDD(neg_dd(i, m, m + 1 - k, tS2, S, true, true)).ok;
                        }});
        }
        for (int c = 1; c <= m + 1; c++)
          for (bool up : {true, false}) {
            cs.push_back({"crit_dd " + tag.str() + " c=" + std::to_string(c),
                          [=] { return check_typeDD(crit_dd(c, m, k, S, up)).ok; }});
            cs.push_back({"max_da " + tag.str() + " c=" + std::to_string(c), [=] {
                            return check_typeDA(*max_da(c, m, k, S, up), opt.weight2, opt.len).ok;
                          }});
          }
        if (k <= m)
          for (bool up : {true, false})
            cs.push_back({"min1_da " + tag.str(), [=] {
                            return check_typeDA(*min1_da(m, k, S, up), opt.weight2, opt.len).ok;
                          }});
      }
  for (bool up : {true, false}) {
    cs.push_back({"global_max", [=] { return check_typeD(global_max(up)).ok; }});
    cs.push_back({"terminal graded", [=] {
                    return check_typeA(terminal_module(TerminalVariant::Graded, up), opt.weight2,
                                       3).ok;
                  }});
    cs.push_back({"terminal filtered", [=] {
                    return check_typeA(terminal_module(TerminalVariant::Filtered, up),
                                       opt.weight2, 3).ok;
                  }});
  }
}

void braid_cases(std::vector<Case>& cs, const VerifyOptions& opt) {
  BoxOptions box{opt.budget};
  for (int m = 1; m <= opt.max_m; m++)
    for (int k = 0; k <= m + 1; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++) {
        Mask S = (Mask)(S0 << 1);
        std::ostringstream tag;
        tag << "m=" << m << " k=" << k << " S=" << S0;
        // inverse braid relation through the canonical DD bimodule
        for (int i = 1; i + 1 <= m; i++) {
          cs.push_back({"invert " + tag.str() + " i=" + std::to_string(i), [=] {
            auto N = neg_da(i, m, k, S);
            auto P = pos_da(i, m, k, N->out_spec().upwards);
            TypeDD K = canonical_dd(m, k, S);
            TypeDD T = reduce(box_DA_DD(*P, reduce(box_DA_DD(*N, K, box)), box));
            if (!iso_reduced(T, reduce(K))) return false;
            auto P2 = pos_da(i, m, k, S);
            auto N2 = neg_da(i, m, k, P2->out_spec().upwards);
            TypeDD T2 = reduce(box_DA_DD(*N2, reduce(box_DA_DD(*P2, K, box)), box));
            return iso_reduced(T2, reduce(K));
          }});
          // Pos^i box K = Pos_i
          cs.push_back({"dual " + tag.str() + " i=" + std::to_string(i), [=] {
            auto P = pos_da(i, m, k, S);
            TypeDD K = canonical_dd(m, k, S);
            TypeDD T = reduce(box_DA_DD(*P, K, box));
            TypeDD Pdd = reduce(pos_dd(i, m, k, P->out_spec().upwards, comp_mask(S, m),
                                       has_bit(S, i), has_bit(S, i + 1)));
            return iso_reduced(T, Pdd);
          }});
        }
        // far commutation
        for (int i = 1; i + 1 <= m; i++)
          for (int j = i + 2; j + 1 <= m; j++) {
            cs.push_back({"far " + tag.str() + " ij=" + std::to_string(10 * i + j), [=] {
              TypeDD K = canonical_dd(m, k, S);
              auto Pi = pos_da(i, m, k, S);
              auto Pj = pos_da(j, m, k, Pi->out_spec().upwards);
              TypeDD lhs =
                  reduce(box_DA_DD(*Pj, reduce(box_DA_DD(*Pi, K, box)), box));
              auto Qj = pos_da(j, m, k, S);
              auto Qi = pos_da(i, m, k, Qj->out_spec().upwards);
              TypeDD rhs =
                  reduce(box_DA_DD(*Qi, reduce(box_DA_DD(*Qj, K, box)), box));
              return iso_reduced(lhs, rhs);
            }});
          }
        // near braid relation
        for (int i = 1; i + 2 <= m; i++) {
          cs.push_back({"near " + tag.str() + " i=" + std::to_string(i), [=] {
            TypeDD K = canonical_dd(m, k, S);
            auto apply = [&](const std::vector<int>& word) {
              TypeDD T = reduce(K);
              Mask cur = S;
              for (int v : word) {
                auto P = pos_da(v, m, k, cur);
                T = reduce(box_DA_DD(*P, T, box));
                cur = P->out_spec().upwards;
              }
              return T;
            };
            TypeDD lhs = apply({i, i + 1, i});
            TypeDD rhs = apply({i + 1, i, i + 1});
            return iso_reduced(lhs, rhs);
          }});
        }
      }
}

void trident_cases(std::vector<Case>& cs, const VerifyOptions& opt) {
  BoxOptions box{opt.budget};
  int mm = std::min(opt.max_m, 2);
  for (int m = 0; m <= mm; m++)
    for (int k = 0; k <= m + 1; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (int c = 1; c + 1 <= m + 1; c++)
          for (bool up : {true, false}) {
            Mask S1 = (Mask)(S0 << 1);
            std::ostringstream tag;
            tag << "m=" << m << " k=" << k << " S=" << S0 << " c=" << c << " up=" << up;
            cs.push_back({"trident " + tag.str(), [=] {
              TypeDD C1 = crit_dd(c + 1, m, k, S1, up);
              auto P = pos_da(c, m + 2, m + 2 - k, C1.spec2.upwards);
              TypeDD lhs = reduce(box_DA_DD(*P, swap_dd(C1), box));
              TypeDD C2 = crit_dd(c, m, k, S1, up);
              auto N = neg_da(c + 1, m + 2, m + 2 - k, C2.spec2.upwards);
              TypeDD rhs = reduce(box_DA_DD(*N, swap_dd(C2), box));
              if (!iso_reduced(lhs, rhs)) return false;
              TypeDD T = swap_dd(trident_dd(c, m, k, S1, lhs.spec1.upwards));
              return T.size() == lhs.size() && iso_reduced(reduce(T), lhs);
            }});
          }
  // Max and Min duality with Crit
  for (int m = 0; m <= mm; m++)
    for (int k = 0; k <= m; k++)
      for (Mask S0 = 0; S0 < (1u << m); S0++)
        for (int c = 1; c <= m + 1; c++)
          for (bool up : {true, false}) {
            Mask S1 = (Mask)(S0 << 1);
            std::ostringstream tag;
            tag << "m=" << m << " k=" << k << " S=" << S0 << " c=" << c << " up=" << up;
            cs.push_back({"maxdual " + tag.str(), [=] {
              Mask S1c = comp_mask(S1, m);
              auto M = max_da(c, m, m + 1 - k, S1c, up);
              TypeDD K = canonical_dd(m, m + 1 - k, S1c);
              TypeDD T = reduce(box_DA_DD(*M, K, box));
              return iso_reduced(T, swap_dd(crit_dd(c, m, k, S1, up)));
            }});
            if (c == 1 && S0 == 0) {
              cs.push_back({"mindual " + tag.str(), [=] {
                auto M = min_da(c, m, k, S1, up);
                TypeDD K = canonical_dd(m + 2, k + 1, M->in_spec().upwards);
                TypeDD T = reduce(box_DA_DD(*M, K, box));
                return iso_reduced(T, crit_dd(c, m, k, S1, !up));
              }});
            }
          }
}

void pair_cases(std::vector<Case>& cs, const VerifyOptions& opt) {
  BoxOptions box{opt.budget};
  int mm = std::min(opt.max_m, 2);
  for (int m = 1; m <= mm; m++)
    for (int k = 0; k <= m; k++)
      for (int c = 1; c <= m; c++)
        for (Mask S0 = 0; S0 < (1u << m); S0++) {
          Mask S = (Mask)(S0 << 1);
          std::ostringstream tag;
          tag << "m=" << m << " k=" << k << " c=" << c << " S=" << S0;
          cs.push_back({"pair " + tag.str(), [=] {
            bool cup = has_bit(S, c);
            auto Mx = max_da(c + 1, m, k, S, !cup);
            auto Mn = min_da(c, m, k, S, cup);
            if (!(Mn->in_spec() == Mx->out_spec())) return false;
            TypeDD K = canonical_dd(m, k, S);
            TypeDD T = reduce(box_DA_DD(*Mn, reduce(box_DA_DD(*Mx, K, box)), box));
            return iso_reduced(T, reduce(canonical_dd(m, k, S)));
          }});
        }
}

void dd_inverse_cases(std::vector<Case>& cs, const VerifyOptions& opt) {
  // Prop 3.11 at small scale: weight-0 summands carry one class per
  // complementary pair; all summands with 0 < |Z| <= 2 are acyclic
  for (int m = 1; m <= opt.max_m; m++)
    for (int k1 = 0; k1 <= m + 1; k1++)
      for (Mask S0 = 0; S0 < (1u << m); S0++) {
        Mask S1 = (Mask)(S0 << 1);
        AlgebraSpec B2{m, m + 1 - k1, comp_mask(S1, m)};
        std::ostringstream tag;
        tag << "m=" << m << " k1=" << k1 << " S=" << S0;
        cs.push_back({"wt0 " + tag.str(), [=] {
          Idem full = (Idem)((1u << (m + 1)) - 1);
          std::array<int, kMaxStrands> Z{};
          int classes = 0;
          for (Idem x : B2.idempotents())
            classes += y_summand_homology(m, k1, S1, Z, x, (Idem)(full & ~x));
          int expect = 1;
          for (int t = 0; t < m + 1 - k1; t++) expect = expect * (m + 1 - t) / (t + 1);
          return classes == expect;
        }});
        cs.push_back({"acyclic " + tag.str(), [=] {
          // enumerate total weights 0 < |Z| <= 2 componentwise
          std::vector<std::array<int, kMaxStrands>> zs;
          std::array<int, kMaxStrands> Z{};
          std::function<void(int, int)> rec = [&](int i, int left) {
            if (i > m) {
              int tot = 0;
              for (int t = 1; t <= m; t++) tot += Z[t];
              if (tot > 0) zs.push_back(Z);
              return;
            }
            for (int v = 0; v <= left; v++) {
              Z[i] = v;
              rec(i + 1, left - v);
            }
            Z[i] = 0;
          };
          rec(1, 4);
          AlgebraSpec B1{m, k1, S1};
          for (const auto& z : zs)
            for (Idem x : B2.idempotents())
              for (Idem y : B1.idempotents())
                if (y_summand_homology(m, k1, S1, z, x, y) != 0) return false;
          return true;
        }});
      }
}

void moves_cases(std::vector<Case>& cs, const VerifyOptions& opt) {
  PipelineOptions popt;
  popt.budget = opt.budget;
  auto mk = [](const char* w) { return braid_to_bridge(parse_braid(w)); };
  cs.push_back({"unknot x3", [=] {
    return verify_moves(mk("1 []"), mk("2 [1]"), popt) &&
           verify_moves(mk("1 []"), parse_events("strands 0\nmin 1\ncross + 1\nmax 1 L\n"),
                        popt);
  }});
  cs.push_back({"trefoil r1/r2/stab", [=] {
    return verify_moves(mk("2 [1,1,1]"), mk("2 [1,1,1,1,-1]"), popt) &&
           verify_moves(mk("2 [1,1,1]"), mk("3 [1,1,1,2]"), popt);
  }});
  cs.push_back({"figure8 stab", [=] {
    return verify_moves(mk("3 [1,-2,1,-2]"), mk("4 [1,-2,1,-2,3]"), popt);
  }});
  cs.push_back({"trefoil conjugated", [=] {
    return verify_moves(mk("2 [1,1,1]"), mk("3 [2,1,1,1,2]"), popt);
  }});
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"relations", "braid", "trident", "pair", "dd-inverse", "moves"};
}

SuiteResult run_verify_suite(const std::string& name, const VerifyOptions& opt) {
  std::vector<Case> cs;
  if (name == "relations")
    relations_cases(cs, opt);
  else if (name == "braid")
    braid_cases(cs, opt);
  else if (name == "trident")
    trident_cases(cs, opt);
  else if (name == "pair")
    pair_cases(cs, opt);
  else if (name == "dd-inverse")
    dd_inverse_cases(cs, opt);
  else if (name == "moves")
    moves_cases(cs, opt);
  else
    throw std::invalid_argument("unknown verify suite '" + name + "'");

  SuiteResult res;
  res.name = name;
  res.cases = (int)cs.size();
  auto t0 = std::chrono::steady_clock::now();
  int jobs = std::max(1, opt.jobs);
  std::vector<std::pair<std::string, bool>> outcomes(cs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= cs.size()) break;
      bool ok = false;
      try {
        ok = cs[i].run();
      } catch (const std::exception&) {
        ok = false;
      }
      outcomes[i] = {cs[i].label, ok};
    }
  };
  std::vector<std::future<void>> pool;
  for (int t = 1; t < jobs; t++) pool.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : pool) f.get();
  int shown = 0;
  for (auto& [label, ok] : outcomes)
    if (!ok) {
      res.ok = false;
      if (shown++ < 5) res.failures += "  " + label + "\n";
    }
  auto t1 = std::chrono::steady_clock::now();
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  return res;
}

}  // namespace hfk
