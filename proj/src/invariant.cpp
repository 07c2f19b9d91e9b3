#include "hfk/invariant.hpp"

#include <cassert>
#include <sstream>

#include "json.hpp"

namespace hfk {

namespace {

Mask tau_mask(Mask S, int i) {
  Mask out = S & ~((1u << i) | (1u << (i + 1)));
  if (has_bit(S, i)) out |= 1u << (i + 1);
  if (has_bit(S, i + 1)) out |= 1u << i;
  return out;
}

}  // namespace

TypeD upper_structure(const BridgeDiagram& d, const PipelineOptions& opt,
                      std::vector<int>* stage_sizes) {
  assert(!d.strands.empty() && "diagram must be validated");
  int K = (int)d.events.size();
  BoxOptions box{opt.budget};

  // the global maximum
  TypeD X = global_max(has_bit(d.upwards[1], 1));
  auto record = [&](const TypeD& Y) {
    if (stage_sizes) stage_sizes->push_back(Y.size());
  };
  record(X);

  for (int i = 1; i + 1 < K; i++) {
    const Event& e = d.events[i];
    int m = d.strands[i];
    int k = m / 2;
    Mask S = d.upwards[i];
    assert(X.spec.m == m && X.spec.upwards == S);
    switch (e.kind) {
      case EvKind::Cross: {
        DAPtr M = e.sign > 0 ? pos_da(e.pos, m, k, S) : neg_da(e.pos, m, k, S);
        assert(M->out_spec().upwards == d.upwards[i + 1]);
        X = reduce(box_DA_D(*M, X, box));
        break;
      }
      case EvKind::Max: {
        bool up_c = has_bit(d.upwards[i + 1], e.pos);
        DAPtr M = max_da(e.pos, m, k, S, up_c);
        assert(M->out_spec().upwards == d.upwards[i + 1]);
        X = reduce(box_DA_D(*M, X, box));
        break;
      }
      case EvKind::Min: {
        // expand Min^c = Min^{c-1} (.) Pos^c (.) Pos^{c-1}, reducing between
        int c = e.pos;
        Mask cur = S;
        while (c > 1) {
          DAPtr P1 = pos_da(c - 1, m, k, cur);
          X = reduce(box_DA_D(*P1, X, box));
          record(X);
          cur = P1->out_spec().upwards;
          DAPtr P2 = pos_da(c, m, k, cur);
          X = reduce(box_DA_D(*P2, X, box));
          record(X);
          cur = P2->out_spec().upwards;
          c--;
        }
        DAPtr M = min1_da(m - 2, (m - 2) / 2, d.upwards[i + 1], has_bit(cur, 1));
        assert(M->in_spec().upwards == cur);
        X = reduce(box_DA_D(*M, X, box));
        break;
      }
    }
    record(X);
  }
  assert(X.spec.m == 2 && X.spec.k == 1);
  return X;
}

BigradedModule run_kha(const BridgeDiagram& d, const PipelineOptions& opt) {
  TypeD X = upper_structure(d, opt);
  bool up_first = has_bit(X.spec.upwards, 1);
  TypeA T = terminal_module(TerminalVariant::Graded, up_first);
  GradedComplex C = box_A_D_graded(T, X);
  return homology_F2(C);
}

FUModule run_khm_raw(const BridgeDiagram& d, const PipelineOptions& opt) {
  TypeD X = upper_structure(d, opt);
  bool up_first = has_bit(X.spec.upwards, 1);
  TypeA T = terminal_module(TerminalVariant::VLifted, up_first);
  FUComplex C = box_A_D_filtered(T, X);
  auto rep = C.check();
  assert(rep.ok);
  (void)rep;
  return homology_FU(C);
}

KnotInvariants compute_invariants(const BridgeDiagram& d, const PipelineOptions& opt) {
  KnotInvariants inv;
  PipelineOptions o = opt;
  TypeD X = upper_structure(d, o, opt.collect_stages ? &inv.stage_sizes : nullptr);
  bool up_first = has_bit(X.spec.upwards, 1);

  TypeA Ta = terminal_module(TerminalVariant::Graded, up_first);
  inv.kha = homology_F2(box_A_D_graded(Ta, X));
  for (auto& [key, dim] : inv.kha.dims) assert(key.second % 2 == 0);

  TypeA Tm = terminal_module(TerminalVariant::VLifted, up_first);
  FUModule raw = homology_FU(box_A_D_filtered(Tm, X));
  // invariant conventions: a raw class at (d', s') sits at
  // d = d' - 2s', s = -s', so that U acts by (-2, -1)
  for (auto [dm, a2] : raw.towers) {
    assert(a2 % 2 == 0);
    inv.khm_towers.push_back({dm - a2, -a2 / 2});
  }
  for (auto [dm, a2, k] : raw.torsion) {
    assert(a2 % 2 == 0);
    inv.khm_torsion.push_back({dm - a2, -a2 / 2, k});
  }
  std::sort(inv.khm_towers.begin(), inv.khm_towers.end());
  std::sort(inv.khm_torsion.begin(), inv.khm_torsion.end());

  inv.alexander = alexander_from_states(d);
  inv.euler_ok = euler_identity_holds(inv);
  return inv;
}

bool euler_identity_holds(const KnotInvariants& inv, int trunc) {
  // chi(KHm) as a series in descending powers of t, truncated at t^{-trunc}
  Laurent lhs;
  auto add_range = [&](int d, int s, int count) {
    // an F[U]/U^count piece starting at (d, s); count < 0 means a free tower
    int sign = (d % 2 == 0) ? 1 : -1;  // parity is constant along U-powers
    for (int j = 0;; j++) {
      int sj = s - j;
      if (sj < -trunc) break;
      if (count >= 0 && j >= count) break;
      lhs.add(2 * sj, sign);
    }
  };
  for (auto [d, s] : inv.khm_towers) add_range(d, s, -1);
  for (auto [d, s, k] : inv.khm_torsion) add_range(d, s, k);
  // Delta(t) / (1 - t^{-1}) = Delta(t) * (1 + t^{-1} + t^{-2} + ...)
  Laurent rhs;
  for (auto [e2, v] : inv.alexander.c) {
    for (int j = 0;; j++) {
      int sj2 = e2 - 2 * j;
      if (sj2 < -2 * trunc) break;
      rhs.add(sj2, v);
    }
  }
  // compare above the truncation line
  for (int e2 = -2 * trunc; e2 <= 2 * trunc + 64; e2++) {
    long long a = lhs.c.count(e2) ? lhs.c.at(e2) : 0;
    long long b = rhs.c.count(e2) ? rhs.c.at(e2) : 0;
    if (a != b) return false;
  }
  return true;
}

std::string KnotInvariants::poincare() const {
  // P(m, t) = sum dim * m^d t^s over KHa
  if (kha.dims.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = kha.dims.rbegin(); it != kha.dims.rend(); ++it) {
    auto [key, dim] = *it;
    auto [dd, a2] = key;
    if (!first) os << " + ";
    first = false;
    bool need_mult = false;
    if (dim != 1) {
      os << dim;
      need_mult = true;
    }
    if (dd != 0) {
      if (need_mult) os << "*";
      os << "m";
      if (dd != 1) os << "^" << dd;
      need_mult = true;
    }
    if (a2 != 0) {
      if (need_mult) os << "*";
      os << "t";
      if (a2 != 2) os << "^" << a2 / 2;
      need_mult = true;
    }
    if (!need_mult) os << 1;
  }
  return os.str();
}

std::string KnotInvariants::json() const {
  nlohmann::json j;
  j["kha"] = nlohmann::json::array();
  for (auto& [key, dim] : kha.dims)
    j["kha"].push_back({{"maslov", key.first}, {"alexander", key.second / 2}, {"dim", dim}});
  j["khm"]["towers"] = nlohmann::json::array();
  for (auto [d, s] : khm_towers)
    j["khm"]["towers"].push_back({{"maslov", d}, {"alexander", s}});
  j["khm"]["torsion"] = nlohmann::json::array();
  for (auto [d, s, k] : khm_torsion)
    j["khm"]["torsion"].push_back({{"maslov", d}, {"alexander", s}, {"power", k}});
  j["poincare"] = poincare();
  j["euler_ok"] = euler_ok;
  j["alexander"] = alexander.str();
  return j.dump(2);
}

bool verify_moves(const BridgeDiagram& d1, const BridgeDiagram& d2,
                  const PipelineOptions& opt) {
  KnotInvariants a = compute_invariants(d1, opt);
  KnotInvariants b = compute_invariants(d2, opt);
  return a.kha == b.kha && a.khm_towers == b.khm_towers && a.khm_torsion == b.khm_torsion;
}

bool mirror_check(const BridgeDiagram& d, const PipelineOptions& opt) {
  BigradedModule a = run_kha(d, opt);
  BigradedModule b = run_kha(d.mirror(), opt);
  if (a.total() != b.total()) return false;
  for (auto& [key, dim] : a.dims) {
    auto it = b.dims.find({-key.first, -key.second});
    if (it == b.dims.end() || it->second != dim) return false;
  }
  return true;
}

bool connected_sum_check(const BraidWord& k1, const BraidWord& k2,
                         const PipelineOptions& opt) {
  // side-by-side braid on n1 + n2 - 1 strands: the closure is the sum
  BraidWord sum;
  sum.n = k1.n + k2.n - 1;
  sum.word = k1.word;
  for (int v : k2.word) sum.word.push_back(v > 0 ? v + k1.n - 1 : v - k1.n + 1);
  BigradedModule a = run_kha(braid_to_bridge(k1), opt);
  BigradedModule b = run_kha(braid_to_bridge(k2), opt);
  BigradedModule c = run_kha(braid_to_bridge(sum), opt);
  BigradedModule expect;
  for (auto& [ka, va] : a.dims)
    for (auto& [kb, vb] : b.dims) {
      auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
      expect.dims[key] += va * vb;
    }
  return expect.dims == c.dims;
}

}  // namespace hfk
