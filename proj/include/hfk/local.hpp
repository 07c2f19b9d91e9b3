#pragma once

// Constructors for the elementary bimodules: the canonical DD bimodule,
// crossing bimodules (DD and DA), critical-point DD bimodule, trident
// bimodule, maximum DA bimodule, global maximum, minimum DA bimodule,
// and the terminal A-modules.

#include "hfk/bimodules.hpp"

namespace hfk {

// ---------------------------------------------------------------------------
// canonical (dualizing) DD bimodule over B(m,k1,S1) and B(m,m+1-k1,S1^c)

TypeDD canonical_dd(int m, int k1, Mask upwards1);

// ---------------------------------------------------------------------------
// crossings

// Quadrant labels for crossing generators.
enum Quad : uint8_t { QN = 0, QS = 1, QW = 2, QE = 3 };

// Maslov values of the four generator types, by chirality and by the
// orientations (up/down) of the two strands entering the crossing on the
// input slice.  Pinned by the all-upward convention MasGr(N) = -1, the
// one-crossing unknots, and the quadrant rotation covariance under
// reversal; guarded by the acceptance suite.
int crossing_maslov(bool positive, bool up_i, bool up_i1, Quad q);
// Doubled Alexander values, evaluated from the quarter-integer weight
// gradings of the generators.
int crossing_alex2(bool positive, bool up_i, bool up_i1, Quad q);

// DA bimodule of a braid-positive/negative crossing at (i, i+1) over
// B(m,k,tau_i(S)) (out) and B(m,k,S) (in).
DAPtr pos_da(int i, int m, int k, Mask upwards_in);
DAPtr neg_da(int i, int m, int k, Mask upwards_in);

// DD bimodule of a crossing over B(m,k2,S2) (x) B(m,k1,S1) with
// k1 + k2 = m+1 and S1 cap tau(S2) empty.  The flag up_i/up_i1 key the
// Maslov normalization exactly as for the DA bimodules.
TypeDD pos_dd(int i, int m, int k2, Mask upwards2, Mask upwards1, bool up_i, bool up_i1);
TypeDD neg_dd(int i, int m, int k2, Mask upwards2, Mask upwards1, bool up_i, bool up_i1);

// opposite of a DD bimodule under the ring isomorphism O
TypeDD opposite_of(const TypeDD& X);

// ---------------------------------------------------------------------------
// critical points

// index insertion j -> j (j < c), j+2 (j >= c)
int phi_c(int c, int j);

// DD bimodule of a critical point over B(m,k,S1) (x) B(m+2,m+2-k,S2),
// with S2 = phi_c(comp(S1)) + {c} or + {c+1} (pass up_c = true for c in S2).
TypeDD crit_dd(int c, int m, int k, Mask upwards1, bool up_c);

// trident bimodule over B(m,k,S1) (x) B(m+2,m+2-k,S3); test fixture
TypeDD trident_dd(int c, int m, int k, Mask upwards1, Mask upwards3);

// DA bimodule of a local maximum: out B(m+2,k+1,S2), in B(m,k,S1),
// S2 = phi_c(S1) + {c} (up_c true) or + {c+1}
DAPtr max_da(int c, int m, int k, Mask upwards1, bool up_c);

// type D structure of the global maximum over B(2,1,{1}) or B(2,1,{2})
TypeD global_max(bool up_first);

// ---------------------------------------------------------------------------
// minima

// DA bimodule of the leftmost minimum: out B(m,k,S2), in B(m+2,k+1,S1)
// where S1 = phi_1(S2) + {1} or + {2}
DAPtr min1_da(int m, int k, Mask upwards2, bool up_first);

// general minimum as the iterated tensor Min^{c-1} (.) Pos^c (.) Pos^{c-1}
DAPtr min_da(int c, int m, int k, Mask upwards2, bool up_c);

// terminal A-module over B(2,1,{2}) (up_first=false) or B(2,1,{1})
TypeA terminal_module(TerminalVariant variant, bool up_first);

// ---------------------------------------------------------------------------
// Koszul-duality candidate inverse: homology ranks of the summand C(Z,x,y)

// Z given as doubled weights; returns the F2-dimension of the homology of
// the finite summand spanned by pairs (dual a | b).
int y_summand_homology(int m, int k1, Mask upwards1, const std::array<int, kMaxStrands>& Z2,
                       Idem x, Idem y);

// ---------------------------------------------------------------------------
// alternative (DG) model of the minimum, used as a cross-check oracle

struct Min1AltModel {
  // basis of I*B1/(L1 L2 B1) truncated to total weight <= cap2
  std::vector<Pure> basis;
  AlgebraSpec big;    // B1 = B(m+2,k+1,S1)
  AlgebraSpec small;  // B2 = B(m,k,S2)
  bool up_first = false;
  int cap2 = 0;

  // endomorphism d + U1 C2 (or its mirror), reduced mod the quotient
  std::vector<Pure> boundary(const Pure& a) const;
  // contracting homotopy H of the splitting
  std::optional<Pure> homotopy(const Pure& a) const;
  bool in_quotient_basis(const Pure& a) const;
  bool is_cycle_generator(const Pure& a) const;  // in B2*L1C2 + B2*R2

  // transferred operation delta_{1+n}(start, a_1..a_n) computed through
  // the homotopy; start encoded by its preferred idempotent state
  std::vector<std::pair<Pure, Idem>> transfer(Idem start, std::span<const Pure> inputs) const;
};

Min1AltModel min1_alt_model(int m, int k, Mask upwards2, bool up_first, int cap2);

}  // namespace hfk
