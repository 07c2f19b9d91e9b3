#pragma once

// The differential graded algebras B0(m,k), B(m,k) and B(m,k,S).
//
// Basis elements ("pure" elements) are stored as: a pair of idempotent
// states, a vector of U-exponents, and a subset of S marking C-factors.
// Elements divisible by a generating-interval monomial are identified
// with zero at construction time, so equality of algebra elements is a
// plain set comparison of pure terms.
//
// Weights are stored doubled (all weights live in (1/2)Z).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hfk {

constexpr int kMaxStrands = 26;  // max marked points per slice

using Idem = uint32_t;  // bitmask over positions {0,...,m}
using Mask = uint32_t;  // bitmask over strand positions {1,...,m}

inline int popcount(uint32_t x) { return __builtin_popcount(x); }
inline bool has_bit(uint32_t m, int i) { return (m >> i) & 1u; }

struct AlgebraSpec {
  int m = 0;                // number of marked points
  int k = 0;                // occupied positions, 0 <= k <= m+1
  Mask upwards = 0;         // subset of {1..m}, bit i set iff strand i points up

  bool operator==(const AlgebraSpec&) const = default;
  bool valid() const;
  // all k-element subsets of {0..m}
  std::vector<Idem> idempotents() const;
  std::string str() const;
};

// v^x_i = #{p in x | p >= i}, i = 1..m
std::array<int, kMaxStrands> weight_of_state(Idem x, int m);
// doubled minimal relative weight, w2[i] = |v^x_i - v^y_i|
std::array<int, kMaxStrands> min_relative_weight2(Idem x, Idem y, int m);
bool are_close_enough(Idem x, Idem y);
// generating intervals [lo,hi] (1-based strand positions) for the pair (x,y)
std::vector<std::pair<int, int>> generating_intervals(Idem x, Idem y, int m);

// A basis element of B(m,k,S): phi^{left,right}(U^u) * prod_{j in c} C_j.
struct Pure {
  uint8_t m = 0;
  Idem left = 0, right = 0;
  Mask cmask = 0;
  std::array<uint8_t, kMaxStrands> u{};  // U-exponents, positions 1..m stored at [1..m]

  bool operator==(const Pure& o) const;
  bool operator<(const Pure& o) const;

  bool is_idempotent() const;
  // doubled weight at strand position i (includes C-contribution)
  int weight2(int i) const;
  std::array<int, kMaxStrands> weights2() const;
  int total_weight2() const;
  int maslov(Mask upwards) const;      // #C - 2*sum_{s in S} w_s
  int alexander2(Mask upwards) const;  // 2*(-sum_S w_s + sum_{not S} w_t)
};

// Canonical form; nullopt when the element is zero in B(m,k,S).
std::optional<Pure> make_pure(int m, Idem left, Idem right,
                              const std::array<uint8_t, kMaxStrands>& u, Mask cmask);
std::optional<Pure> idempotent_elt(int m, Idem x);

std::optional<Pure> mul(const Pure& a, const Pure& b);

// The unique nonzero pure element with given left idempotent, doubled
// weights (C-contributions included) and C-subset; nullopt if zero.
std::optional<Pure> element_from_weights2(int m, Idem left,
                                          const std::array<int, kMaxStrands>& w2, Mask cmask);

// F2-linear combination of pure elements; sorted, duplicate-free.
struct Elt {
  std::vector<Pure> terms;

  Elt() = default;
  explicit Elt(const Pure& p) : terms{p} {}
  explicit Elt(std::optional<Pure> p) { if (p) terms.push_back(*p); }

  bool zero() const { return terms.empty(); }
  void add(const Pure& p);          // xor one term
  Elt& operator+=(const Elt& o);
  bool operator==(const Elt&) const = default;
};

Elt mul(const Elt& a, const Elt& b);
// d(C_j) = U_j extended by the Leibniz rule; everything else is a cycle
Elt differential(const Pure& a);
Elt differential(const Elt& a);

enum class Gen : uint8_t { L, R, U, C };
// global shift/loop generators: sum over all admissible idempotents
Elt shift_generator(const AlgebraSpec& spec, Gen kind, int i);
Elt unit(const AlgebraSpec& spec);

// VRot: B(m,k,S) -> B(m,k,rho'(S)), I_x -> I_{rho(x)}, w_i -> w_{m+1-i}
Pure vrot(const Pure& a);
Elt vrot(const Elt& a);
// Opposite ring map: swaps left and right idempotents, keeps weights
Pure opposite(const Pure& a);
Elt opposite(const Elt& a);

// all pure elements of the algebra with total doubled weight <= bound2
std::vector<Pure> enumerate_pure(const AlgebraSpec& spec, int bound2);

std::string render(const Pure& a);
std::string render(const Elt& a);
std::string render_idem(Idem x, int m);

}  // namespace hfk
