#pragma once

// The knot invariant pipeline: tensor the slab bimodules against the global
// maximum from the top down, reduce after every stage, close with a terminal
// module, and take homology over F2 (KHa) and F2[U] (KHm).

#include "hfk/diagram.hpp"
#include "hfk/local.hpp"

namespace hfk {

struct PipelineOptions {
  long budget = 10000;       // expansions per generator in tensor products
  bool collect_stages = false;
};

// KHm reported as an F[U]-module in the invariant's grading conventions
struct KnotInvariants {
  BigradedModule kha;                              // dims[(d, 2s)]
  std::vector<std::pair<int, int>> khm_towers;     // (d, s), s integral
  std::vector<std::tuple<int, int, int>> khm_torsion;  // (d, s, k)
  Laurent alexander;                               // state-sum oracle
  bool euler_ok = false;
  std::vector<int> stage_sizes;
  std::string poincare() const;
  std::string json() const;
  bool operator==(const KnotInvariants&) const = default;
};

// the reduced type D structure over B(2,1,{1}) or B(2,1,{2}) of everything
// above the global minimum
TypeD upper_structure(const BridgeDiagram& d, const PipelineOptions& opt = {},
                      std::vector<int>* stage_sizes = nullptr);

BigradedModule run_kha(const BridgeDiagram& d, const PipelineOptions& opt = {});
FUModule run_khm_raw(const BridgeDiagram& d, const PipelineOptions& opt = {});
KnotInvariants compute_invariants(const BridgeDiagram& d, const PipelineOptions& opt = {});

// graded Euler characteristic of KHm as a Laurent series truncated at
// t^(-trunc), compared against Delta(t)/(1 - t^{-1})
bool euler_identity_holds(const KnotInvariants& inv, int trunc = 10);

bool verify_moves(const BridgeDiagram& d1, const BridgeDiagram& d2,
                  const PipelineOptions& opt = {});
bool mirror_check(const BridgeDiagram& d, const PipelineOptions& opt = {});
bool connected_sum_check(const BraidWord& k1, const BraidWord& k2,
                         const PipelineOptions& opt = {});

}  // namespace hfk
