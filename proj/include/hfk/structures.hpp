#pragma once

// Type D structures over one algebra, type DD structures over a pair of
// algebras (left/left), arrow cancellation and reduction to minimal models,
// isomorphism testing of reduced structures, and homology of the resulting
// complexes over F2 and F2[U].

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hfk/algebra.hpp"

namespace hfk {

// ---------------------------------------------------------------------------
// coefficients

struct PurePair {
  Pure a1, a2;
  bool operator==(const PurePair& o) const { return a1 == o.a1 && a2 == o.a2; }
  bool operator<(const PurePair& o) const {
    if (!(a1 == o.a1)) return a1 < o.a1;
    return a2 < o.a2;
  }
};

inline std::optional<Pure> coef_mul(const Pure& x, const Pure& y) { return mul(x, y); }
inline std::optional<PurePair> coef_mul(const PurePair& x, const PurePair& y) {
  auto p = mul(x.a1, y.a1);
  if (!p) return std::nullopt;
  auto q = mul(x.a2, y.a2);
  if (!q) return std::nullopt;
  return PurePair{*p, *q};
}

inline std::vector<Pure> coef_diff(const Pure& x) { return differential(x).terms; }
inline std::vector<PurePair> coef_diff(const PurePair& x) {
  std::vector<PurePair> out;
  for (const auto& t : differential(x.a1).terms) out.push_back({t, x.a2});
  for (const auto& t : differential(x.a2).terms) out.push_back({x.a1, t});
  return out;
}

inline bool coef_is_unit(const Pure& x) { return x.is_idempotent(); }
inline bool coef_is_unit(const PurePair& x) {
  return x.a1.is_idempotent() && x.a2.is_idempotent();
}

std::string coef_render(const Pure& x);
std::string coef_render(const PurePair& x);

// ---------------------------------------------------------------------------
// structures

struct DGen {
  Idem idem = 0;
  Idem idem2 = 0;  // used by DD structures only
  int maslov = 0;
  int alex2 = 0;
  bool operator==(const DGen&) const = default;
};

template <class C>
struct DStructBase {
  struct Arrow {
    C coef;
    int dst;
    bool operator<(const Arrow& o) const {
      if (dst != o.dst) return dst < o.dst;
      return coef < o.coef;
    }
    bool operator==(const Arrow& o) const { return dst == o.dst && coef == o.coef; }
  };
  std::vector<DGen> gens;
  std::vector<std::vector<Arrow>> delta;  // delta[src], kept sorted, F2-normalized

  int size() const { return (int)gens.size(); }
  void add_gen(const DGen& g) {
    gens.push_back(g);
    delta.emplace_back();
  }
  void add_arrow(int src, const C& coef, int dst) {
    Arrow a{coef, dst};
    auto& v = delta[src];
    auto it = std::lower_bound(v.begin(), v.end(), a);
    if (it != v.end() && *it == a)
      v.erase(it);
    else
      v.insert(it, a);
  }
};

struct TypeD : DStructBase<Pure> {
  AlgebraSpec spec;
};

struct TypeDD : DStructBase<PurePair> {
  AlgebraSpec spec1, spec2;
};

struct CheckReport {
  bool ok = true;
  std::string detail;
};

// structure relation (mu_1 (x) id) delta + (mu_2 (x) id)(id (x) delta) delta = 0
CheckReport check_typeD(const TypeD& X);
CheckReport check_typeDD(const TypeDD& X);

// idempotent compatibility of every arrow, plus grading drops
CheckReport check_gradings_D(const TypeD& X);

// Cancel the arrow src -> dst; requires a unit coefficient on it.
// Corrections: for p -> (b (x) dst) and src -> (a (x) q), add (b*a (x) q) to p.
TypeD cancel(const TypeD& X, int src, int dst);
TypeDD cancel(const TypeDD& X, int src, int dst);

// Iterated cancellation, deterministic order (lowest source, then dst).
TypeD reduce(TypeD X);
TypeDD reduce(TypeDD X);

// True iff a grading- and idempotent-preserving bijection of generators
// intertwines the differentials. Both inputs must be reduced.
bool equal_reduced(const TypeD& X, const TypeD& Y, bool check_gradings = true);
bool equal_reduced(const TypeDD& X, const TypeDD& Y, bool check_gradings = true);

// True iff the two reduced structures are isomorphic: there is an
// invertible chain map intertwining the differentials, found by solving
// the intertwining relation linearly over F2.  For reduced structures
// this is homotopy equivalence.
bool iso_reduced(const TypeD& X, const TypeD& Y);
bool iso_reduced(const TypeDD& X, const TypeDD& Y);

// Elementary change of basis g := g + c (x) h; the coefficient must be
// idempotent- and grading-compatible.
TypeD change_basis(const TypeD& X, int g, const Pure& c, int h);
TypeDD change_basis(const TypeDD& X, int g, const PurePair& c, int h);

std::string serialize(const TypeD& X);
std::string serialize(const TypeDD& X);

// ---------------------------------------------------------------------------
// complexes

struct BigradedModule {
  // dims[(maslov, alex2)] -> dimension; alex stored doubled
  std::map<std::pair<int, int>, int> dims;
  bool operator==(const BigradedModule&) const = default;
  int total() const;
};

struct GradedComplex {
  std::vector<DGen> gens;  // idem fields unused
  std::vector<std::pair<int, int>> arrows;  // (src, dst)
  CheckReport check() const;
};

BigradedModule homology_F2(const GradedComplex& C);

struct FUComplex {
  std::vector<DGen> gens;
  struct Arrow { int src, dst, upow; };
  std::vector<Arrow> arrows;
  CheckReport check() const;
};

// Decomposition as an F[U]-module, raw gradings (maslov, alex2) of the
// distinguished generator of each summand.
struct FUModule {
  std::vector<std::pair<int, int>> towers;          // free F[U] summands
  std::vector<std::tuple<int, int, int>> torsion;   // (maslov, alex2, power)
  bool operator==(const FUModule&) const = default;
};

FUModule homology_FU(FUComplex C);

// dense F2 rank, rows as bitsets
int f2_rank(std::vector<std::vector<uint64_t>>& rows, int ncols);

}  // namespace hfk
