#include <algorithm>
#include <cassert>

#include "hfk/local.hpp"

// The minimum.  The leftmost minimum is the transferred structure of the
// quotient DG bimodule I*B1/(L1 L2 * B1) with boundary d + U1 C2, contracted
// by the homotopy that trades a U-power at the minimum for a C-factor.  A
// delta operation walks: seed, multiply, contract, multiply, ..., project.
// The general minimum is the iterated tensor with two crossings.

namespace hfk {

namespace {

// local machinery at strand positions 1, 2 of the big algebra; the mirrored
// variant (1 in S1) swaps the roles of the two strands
struct MinLocal {
  int M;               // big algebra index (m + 2)
  bool up_first;       // true: 1 in S1 (mirrored graph)

  // Reduce modulo the quotient ideal L1 L2 * B1 (the ideal is the same in
  // both variants; only the boundary operator changes): returns false when
  // the element is zero in the quotient.
  bool in_quotient(const Pure& u) const {
    Idem l = u.left;
    std::array<int, kMaxStrands> w = u.weights2();
    // left divisibility by L1 L2: left idem must contain 1 and 2, not 0
    if (!has_bit(l, 1) || !has_bit(l, 2) || has_bit(l, 0)) return true;
    if (w[1] < 1 || w[2] < 1) return true;
    w[1] -= 1;
    w[2] -= 1;
    Idem mid = (l & ~(1u << 2)) | 1u;  // left of the cofactor
    auto c = element_from_weights2(M, mid, w, u.cmask);
    if (!c) return true;
    std::array<uint8_t, kMaxStrands> uu{};
    auto l1 = make_pure(M, l, (l & ~2u) | 1u, uu, 0);
    if (!l1) return true;
    auto l2 = make_pure(M, l1->right, mid, uu, 0);
    if (!l2) return true;
    auto w2 = mul(*l1, *l2);
    if (!w2) return true;
    auto prod = mul(*w2, *c);
    return !(prod && *prod == u);
  }

  std::optional<Pure> reduce_mod(std::optional<Pure> u) const {
    if (!u || !in_quotient(*u)) return std::nullopt;
    return u;
  }

  // The contracting homotopy, classified by the local weight data.  It
  // inverts the two families of boundary pairings: trading the exterior
  // factor at the minimum for a U-power (classes C U^n and C L U^n /
  // C R U^n), and adding the exterior factor to a pure U-power tail
  // (classes U^n and shift U^n).
  std::optional<Pure> homotopy(const Pure& u) const {
    int w1 = u.weight2(1), w2 = u.weight2(2);
    if (!up_first) {
      bool c2 = has_bit(u.cmask, 2);
      if (c2 && w2 == 2 && w1 >= 2) {
        auto w = u.weights2();
        w[1] -= 2;
        w[2] -= 2;
        return reduce_mod(element_from_weights2(M, u.left, w, u.cmask & ~4u));
      }
      if (!c2 && w1 == 0 && w2 >= 2)
        return reduce_mod(element_from_weights2(M, u.left, u.weights2(), u.cmask | 4u));
      return std::nullopt;
    } else {
      bool c1 = has_bit(u.cmask, 1);
      if (c1 && w1 == 2 && w2 >= 2) {
        auto w = u.weights2();
        w[1] -= 2;
        w[2] -= 2;
        return reduce_mod(element_from_weights2(M, u.left, w, u.cmask & ~2u));
      }
      if (!c1 && w2 == 0 && w1 >= 2)
        return reduce_mod(element_from_weights2(M, u.left, u.weights2(), u.cmask | 2u));
      return std::nullopt;
    }
  }

  // seed element representing the generator with incoming idempotent x;
  // the homology representatives are keyed on whether 0 is occupied
  std::optional<Pure> seed(Idem x) const {
    std::array<int, kMaxStrands> w{};
    if (!up_first) {
      if (has_bit(x, 0)) {
        // class L1 C2
        Idem l = (x & ~1u) | 2u;
        w[1] = 1;
        w[2] = 2;
        return element_from_weights2(M, l, w, 4u);
      }
      Idem l = (x & ~4u) | 2u;  // class R2
      w[2] = 1;
      return element_from_weights2(M, l, w, 0);
    } else {
      if (has_bit(x, 0)) {
        // class L1
        Idem l = (x & ~1u) | 2u;
        w[1] = 1;
        return element_from_weights2(M, l, w, 0);
      }
      Idem l = (x & ~4u) | 2u;  // class R2 C1
      w[1] = 2;
      w[2] = 1;
      return element_from_weights2(M, l, w, 2u);
    }
  }

  // does u lie in the homology representative class of x?
  bool terminal(const Pure& u, Idem x) const {
    if (u.right != x) return false;
    int w1 = u.weight2(1), w2 = u.weight2(2);
    if (!up_first) {
      if (has_bit(x, 0)) return w1 == 1 && w2 == 2 && has_bit(u.cmask, 2);
      return w1 == 0 && w2 == 1 && !has_bit(u.cmask, 2);
    } else {
      if (has_bit(x, 0)) return w1 == 1 && w2 == 0 && !has_bit(u.cmask, 1);
      return w1 == 2 && w2 == 1 && has_bit(u.cmask, 1);
    }
  }
};

bool preferred_idem(Idem x) {
  Idem low = x & 7u;
  return low == 1u || low == 4u || low == 5u;
}

Idem min_psi(Idem x, int bigm) {
  // drop the marked coordinates and shift by two
  Idem out = 0;
  int low = popcount((Idem)(x & 7u));
  if (low == 2) out |= 1u;  // x cap {0,1,2} = {0,2}
  for (int p = 3; p <= bigm; p++)
    if (has_bit(x, p)) out |= 1u << (p - 2);
  return out;
}

class Min1DA : public DABimodule {
 public:
  Min1DA(int m, int k, Mask upwards2, bool up_first) {
    out_spec_ = {m, k, upwards2};
    Mask up1 = (Mask)(upwards2 << 2) | (up_first ? 2u : 4u);
    in_spec_ = {m + 2, k + 1, up1};
    loc_ = {m + 2, up_first};
    for (Idem x : in_spec_.idempotents())
      if (preferred_idem(x)) gens_.push_back({min_psi(x, m + 2), x, 0, 0});
  }

  int max_arity() const override { return 0; }

  const MinLocal& local() const { return loc_; }

  int find_by_in(Idem x) const {
    for (int t = 0; t < (int)gens_.size(); t++)
      if (gens_[t].in_idem == x) return t;
    return -1;
  }

  std::vector<DATerm> project(Idem start_in, Idem start_out, const Pure& u) const {
    std::vector<DATerm> out;
    Idem xl = u.right;
    if (!preferred_idem(xl) || !loc_.terminal(u, xl)) return out;
    int tgt = find_by_in(xl);
    if (tgt < 0) return out;
    std::array<int, kMaxStrands> w{};
    auto wu = u.weights2();
    for (int i = 1; i + 2 <= loc_.M; i++) w[i] = wu[i + 2];
    Mask cm = 0;
    for (int j = 3; j <= loc_.M; j++)
      if (has_bit(u.cmask, j)) cm |= 1u << (j - 2);
    auto b = element_from_weights2(loc_.M - 2, start_out, w, cm);
    if (!b || b->right != gens_[tgt].out_idem) return out;
    out.push_back({*b, tgt});
    return out;
  }

  std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const override {
    std::vector<DATerm> out;
    if (inputs.empty()) return out;
    if (inputs[0].left != gens_[gen].in_idem) return out;
    for (size_t t = 0; t + 1 < inputs.size(); t++)
      if (inputs[t].right != inputs[t + 1].left) return out;
    auto u = loc_.reduce_mod(loc_.seed(gens_[gen].in_idem));
    for (size_t t = 0; t < inputs.size(); t++) {
      if (!u) return out;
      if (t > 0) {
        u = loc_.homotopy(*u);
        if (!u) return out;
      }
      u = loc_.reduce_mod(mul(*u, inputs[t]));
    }
    if (!u) return out;
    return project(gens_[gen].in_idem, gens_[gen].out_idem, *u);
  }

  std::unique_ptr<DAWalker> walker(int gen) const override;

 private:
  MinLocal loc_;
};

class Min1Walker : public DAWalker {
 public:
  const Min1DA* M;
  int gen;
  std::optional<Pure> u;
  bool fed = false;

  std::vector<std::unique_ptr<DAWalker>> feed(const Pure& a) const override {
    std::vector<std::unique_ptr<DAWalker>> out;
    if (!u) return out;
    std::optional<Pure> cur = u;
    if (fed) {
      cur = M->local().homotopy(*cur);
      if (!cur) return out;
    }
    cur = M->local().reduce_mod(mul(*cur, a));
    if (!cur) return out;
    auto w = std::make_unique<Min1Walker>();
    w->M = M;
    w->gen = gen;
    w->u = cur;
    w->fed = true;
    out.push_back(std::move(w));
    return out;
  }

  std::vector<DATerm> finish() const override {
    if (!fed || !u) return {};
    return M->project(M->gen(gen).in_idem, M->gen(gen).out_idem, *u);
  }
};

std::unique_ptr<DAWalker> Min1DA::walker(int gen) const {
  auto w = std::make_unique<Min1Walker>();
  w->M = this;
  w->gen = gen;
  w->u = loc_.reduce_mod(loc_.seed(gens_[gen].in_idem));
  return w;
}

}  // namespace

DAPtr min1_da(int m, int k, Mask upwards2, bool up_first) {
  return std::make_shared<Min1DA>(m, k, upwards2, up_first);
}

DAPtr min_da(int c, int m, int k, Mask upwards2, bool up_c) {
  if (c == 1) return min1_da(m, k, upwards2, up_c);
  // Min^c = Min^{c-1} (.) Pos^c (.) Pos^{c-1}
  Mask up1 = 0;
  for (int j = 1; j <= m; j++)
    if (has_bit(upwards2, j)) up1 |= 1u << phi_c(c, j);
  up1 |= 1u << (up_c ? c : c + 1);
  auto p_low = pos_da(c - 1, m + 2, k + 1, up1);
  auto p_high = pos_da(c, m + 2, k + 1, p_low->out_spec().upwards);
  auto rest = min_da(c - 1, m, k, upwards2, up_c);
  assert(rest->in_spec() == p_high->out_spec());
  return box_DA_DA(box_DA_DA(rest, p_high), p_low);
}

// ---------------------------------------------------------------------------
// terminal A-modules

TypeA terminal_module(TerminalVariant variant, bool up_first) {
  TypeA T;
  T.spec = {2, 1, (Mask)(up_first ? 0b010 : 0b100)};
  T.variant = variant;
  if (!up_first) {
    // over B(2,1,{2}): X at {1}, Y at {0}; X L1 = Y, Y R1 = X, U1 loops
    T.gens.push_back({0b010, 0, 0});
    T.gens.push_back({0b001, 0, 0});
    T.act = [variant](int g, const Pure& a) -> std::vector<int> {
      if (a.is_idempotent()) return {g};
      if (variant == TerminalVariant::Graded) return {};
      if (a.cmask != 0 || a.u[2] != 0) return {};
      bool vert = false;  // no half-weight at strand 2
      auto w = a.weights2();
      if (w[2] != 0) return {};
      (void)vert;
      Idem l = a.left, r = a.right;
      if (g == 0 && l == 0b010 && r == 0b010) return {0};  // U1 powers
      if (g == 0 && l == 0b010 && r == 0b001) return {1};  // L1 U1^t
      if (g == 1 && l == 0b001 && r == 0b001) return {1};
      if (g == 1 && l == 0b001 && r == 0b010) return {0};  // R1 U1^t
      return {};
    };
  } else {
    // over B(2,1,{1}): X at {1}, Y at {2}; X R2 = Y, Y L2 = X, U2 loops
    T.gens.push_back({0b010, 0, 0});
    T.gens.push_back({0b100, 0, 0});
    T.act = [variant](int g, const Pure& a) -> std::vector<int> {
      if (a.is_idempotent()) return {g};
      if (variant == TerminalVariant::Graded) return {};
      if (a.cmask != 0 || a.u[1] != 0) return {};
      auto w = a.weights2();
      if (w[1] != 0) return {};
      Idem l = a.left, r = a.right;
      if (g == 0 && l == 0b010 && r == 0b010) return {0};
      if (g == 0 && l == 0b010 && r == 0b100) return {1};  // R2 U2^t
      if (g == 1 && l == 0b100 && r == 0b100) return {1};
      if (g == 1 && l == 0b100 && r == 0b010) return {0};  // L2 U2^t
      return {};
    };
  }
  return T;
}

// ---------------------------------------------------------------------------
// alternative model

std::vector<Pure> Min1AltModel::boundary(const Pure& a) const {
  MinLocal loc{big.m, up_first};
  std::vector<Pure> out;
  for (const auto& t : differential(a).terms)
    if (auto r = loc.reduce_mod(t); r && r->total_weight2() <= cap2) out.push_back(*r);
  // left multiplication by U1 C2 (or U2 C1 mirrored)
  std::array<uint8_t, kMaxStrands> uu{};
  uu[up_first ? 2 : 1] = 1;
  auto g = make_pure(big.m, a.left, a.left, uu, up_first ? 2u : 4u);
  if (g)
    if (auto r = loc.reduce_mod(mul(*g, a)); r && r->total_weight2() <= cap2)
      out.push_back(*r);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Pure> Min1AltModel::homotopy(const Pure& a) const {
  MinLocal loc{big.m, up_first};
  return loc.homotopy(a);
}

bool Min1AltModel::in_quotient_basis(const Pure& a) const {
  MinLocal loc{big.m, up_first};
  bool min_ok = has_bit(a.left, 1) && !has_bit(a.left, 0);
  return min_ok && loc.in_quotient(a);
}

bool Min1AltModel::is_cycle_generator(const Pure& a) const {
  MinLocal loc{big.m, up_first};
  return loc.terminal(a, a.right);
}

std::vector<std::pair<Pure, Idem>> Min1AltModel::transfer(Idem start,
                                                          std::span<const Pure> inputs) const {
  std::vector<std::pair<Pure, Idem>> out;
  MinLocal loc{big.m, up_first};
  auto u = loc.reduce_mod(loc.seed(start));
  for (size_t t = 0; t < inputs.size(); t++) {
    if (!u) return out;
    if (t > 0) {
      u = loc.homotopy(*u);
      if (!u) return out;
    }
    u = loc.reduce_mod(mul(*u, inputs[t]));
  }
  if (!u || inputs.empty()) return out;
  Idem xl = u->right;
  if (!preferred_idem(xl) || !loc.terminal(*u, xl)) return out;
  std::array<int, kMaxStrands> w{};
  auto wu = u->weights2();
  for (int i = 1; i + 2 <= big.m; i++) w[i] = wu[i + 2];
  Mask cm = 0;
  for (int j = 3; j <= big.m; j++)
    if (has_bit(u->cmask, j)) cm |= 1u << (j - 2);
  auto b = element_from_weights2(small.m, min_psi(start, big.m), w, cm);
  if (b && b->right == min_psi(xl, big.m)) out.push_back({*b, xl});
  return out;
}

Min1AltModel min1_alt_model(int m, int k, Mask upwards2, bool up_first, int cap2) {
  Min1AltModel A;
  A.small = {m, k, upwards2};
  Mask up1 = (Mask)(upwards2 << 2) | (up_first ? 2u : 4u);
  A.big = {m + 2, k + 1, up1};
  A.up_first = up_first;
  A.cap2 = cap2;
  for (const auto& p : enumerate_pure(A.big, cap2))
    if (A.in_quotient_basis(p)) A.basis.push_back(p);
  return A;
}

}  // namespace hfk
