#include <algorithm>
#include <cassert>

#include "hfk/local.hpp"

// Canonical DD bimodule, critical points, tridents, maxima, and the
// homology of the candidate quasi-inverse.

namespace hfk {

namespace {

std::optional<Pure> gen_elt(int m, Idem from, Gen kind, int j) {
  std::array<uint8_t, kMaxStrands> u{};
  switch (kind) {
    case Gen::R:
      if (has_bit(from, j - 1) && !has_bit(from, j))
        return make_pure(m, from, (from & ~(1u << (j - 1))) | (1u << j), u, 0);
      return std::nullopt;
    case Gen::L:
      if (has_bit(from, j) && !has_bit(from, j - 1))
        return make_pure(m, from, (from & ~(1u << j)) | (1u << (j - 1)), u, 0);
      return std::nullopt;
    case Gen::U:
      u[j] = 1;
      return make_pure(m, from, from, u, 0);
    case Gen::C:
      return make_pure(m, from, from, u, 1u << j);
  }
  return std::nullopt;
}

std::optional<Pure> word_elt(int m, Idem from, const std::vector<std::pair<Gen, int>>& ls) {
  std::optional<Pure> acc = idempotent_elt(m, from);
  for (auto [kind, j] : ls) {
    if (!acc) return std::nullopt;
    auto g = gen_elt(m, acc->right, kind, j);
    if (!g) return std::nullopt;
    acc = mul(*acc, *g);
  }
  return acc;
}

}  // namespace

int phi_c(int c, int j) { return j < c ? j : j + 2; }

// ---------------------------------------------------------------------------

TypeDD canonical_dd(int m, int k1, Mask upwards1) {
  TypeDD X;
  Mask all = (Mask)((1u << (m + 1)) - 2);
  X.spec1 = {m, k1, upwards1};
  X.spec2 = {m, m + 1 - k1, (Mask)(all & ~upwards1)};
  Idem full = (Idem)((1u << (m + 1)) - 1);
  auto idems = X.spec1.idempotents();
  auto find = [&](Idem x) {
    for (int t = 0; t < X.size(); t++)
      if (X.gens[t].idem == x) return t;
    return -1;
  };
  for (Idem x : idems) X.add_gen({x, (Idem)(full & ~x), 0, 0});
  for (int g = 0; g < X.size(); g++) {
    Idem x = X.gens[g].idem, xc = X.gens[g].idem2;
    for (int i = 1; i <= m; i++) {
      // L_i (x) R_i and R_i (x) L_i
      for (int dir = 0; dir < 2; dir++) {
        auto a = gen_elt(m, x, dir ? Gen::L : Gen::R, i);
        auto b = gen_elt(m, xc, dir ? Gen::R : Gen::L, i);
        if (!a || !b) continue;
        int tgt = find(a->right);
        assert(tgt >= 0 && X.gens[tgt].idem2 == b->right);
        X.add_arrow(g, {*a, *b}, tgt);
      }
      // C_s (x) U_s for s in S1, U_t (x) C_t for t in S2
      std::optional<Pure> a, b;
      if (has_bit(upwards1, i)) {
        a = gen_elt(m, x, Gen::C, i);
        b = gen_elt(m, xc, Gen::U, i);
      } else {
        a = gen_elt(m, x, Gen::U, i);
        b = gen_elt(m, xc, Gen::C, i);
      }
      if (a && b) X.add_arrow(g, {*a, *b}, g);
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// critical point

namespace {

// allowed idempotents for the larger algebra and their small-side partner
bool crit_allowed(Idem y, int c) {
  if (!has_bit(y, c)) return false;
  int cnt = (has_bit(y, c - 1) ? 1 : 0) + 1 + (has_bit(y, c + 1) ? 1 : 0);
  return cnt <= 2;
}

Idem crit_psi(Idem y, int c, int m) {
  // x subset {0..m} with phi_c(x) cap y empty and the counting constraint
  Idem comp = 0;
  for (int p = 0; p <= m + 2; p++)
    if (!has_bit(y, p)) comp |= 1u << p;
  Idem x = 0;
  for (int j = 0; j <= m; j++)
    if (has_bit(comp, phi_c(c, j))) x |= 1u << j;
  bool isY = has_bit(y, c + 1);  // type Y: y cap {c-1,c,c+1} = {c,c+1}
  if (isY) x &= ~(1u << (c - 1));
  return x;
}

}  // namespace

TypeDD crit_dd(int c, int m, int k, Mask upwards1, bool up_c) {
  TypeDD X;
  X.spec1 = {m, k, upwards1};
  Mask up2 = 0;
  for (int j = 1; j <= m; j++)
    if (!has_bit(upwards1, j)) up2 |= 1u << phi_c(c, j);
  up2 |= 1u << (up_c ? c : c + 1);
  X.spec2 = {m + 2, m + 2 - k, up2};
  auto find = [&](Idem x, Idem y) {
    for (int t = 0; t < X.size(); t++)
      if (X.gens[t].idem == x && X.gens[t].idem2 == y) return t;
    return -1;
  };
  for (Idem y : X.spec2.idempotents())
    if (crit_allowed(y, c)) {
      Idem x = crit_psi(y, c, m);
      assert(popcount(x) == k);
      X.add_gen({x, y, 0, 0});
    }
  int M = m + 2;
  for (int g = 0; g < X.size(); g++) {
    Idem x = X.gens[g].idem, y = X.gens[g].idem2;
    auto add = [&](std::optional<Pure> a, std::optional<Pure> b) {
      if (!a || !b) return;
      int tgt = find(a->right, b->right);
      if (tgt >= 0) X.add_arrow(g, {*a, *b}, tgt);
    };
    // 1 (x) L_c L_{c+1} and 1 (x) R_{c+1} R_c
    add(idempotent_elt(m, x), word_elt(M, y, {{Gen::L, c}, {Gen::L, c + 1}}));
    add(idempotent_elt(m, x), word_elt(M, y, {{Gen::R, c + 1}, {Gen::R, c}}));
    // 1 (x) C_c U_{c+1} or 1 (x) U_c C_{c+1}
    if (up_c)
      add(idempotent_elt(m, x), word_elt(M, y, {{Gen::C, c}, {Gen::U, c + 1}}));
    else
      add(idempotent_elt(m, x), word_elt(M, y, {{Gen::U, c}, {Gen::C, c + 1}}));
    for (int j = 1; j <= m; j++) {
      int pj = phi_c(c, j);
      add(gen_elt(m, x, Gen::R, j), gen_elt(M, y, Gen::L, pj));
      add(gen_elt(m, x, Gen::L, j), gen_elt(M, y, Gen::R, pj));
      if (has_bit(upwards1, j))
        add(gen_elt(m, x, Gen::C, j), gen_elt(M, y, Gen::U, pj));
      else
        add(gen_elt(m, x, Gen::U, j), gen_elt(M, y, Gen::C, pj));
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// trident

namespace {

int psi_c_map(int c, int j) { return j < c ? j : (j == c ? c + 1 : j + 2); }

}  // namespace

TypeDD trident_dd(int c, int m, int k, Mask upwards1, Mask upwards3) {
  TypeDD X;
  X.spec1 = {m, k, upwards1};
  X.spec2 = {m + 2, m + 2 - k, upwards3};
  // Generators: pairs (x, y) with phi_c(x) disjoint from y; the single free
  // position distinguishes the four types.
  enum TType { TP, TQ, TX, TY };
  std::vector<TType> types;
  auto find = [&](Idem x, Idem y) {
    for (int t = 0; t < X.size(); t++)
      if (X.gens[t].idem == x && X.gens[t].idem2 == y) return t;
    return -1;
  };
  bool up_i = has_bit(upwards3, c + 1), up_i1 = has_bit(upwards3, c);
  for (Idem x : X.spec1.idempotents())
    for (Idem y : X.spec2.idempotents()) {
      Idem img = 0;
      for (int j = 0; j <= m; j++)
        if (has_bit(x, j)) img |= 1u << phi_c(c, j);
      if (img & y) continue;
      Idem freeset = (Idem)(((1u << (m + 3)) - 1) & ~(img | y));
      if (popcount(freeset) != 1) continue;
      int f = __builtin_ctz(freeset);
      TType tt;
      Quad q;
      if (f == c - 1) {
        tt = TP;
        q = QW;
      } else if (f == c) {
        tt = TX;
        q = QS;
      } else if (f == c + 1) {
        tt = TY;
        q = QE;
      } else if (f == c + 2) {
        tt = TQ;
        q = QN;
      } else {
        continue;
      }
      types.push_back(tt);
      X.add_gen({x, y, crossing_maslov(true, up_i, up_i1, q),
                 crossing_alex2(true, up_i, up_i1, q)});
    }
  int M = m + 2;
  for (int g = 0; g < X.size(); g++) {
    Idem x = X.gens[g].idem, y = X.gens[g].idem2;
    auto add = [&](TType to, std::optional<Pure> a, std::optional<Pure> b) {
      if (!a || !b) return;
      int tgt = find(a->right, b->right);
      if (tgt >= 0 && types[tgt] == to) X.add_arrow(g, {*a, *b}, tgt);
    };
    auto I1 = idempotent_elt(m, x);
    switch (types[g]) {
      case TQ:
        add(TP, gen_elt(m, x, Gen::R, c), gen_elt(M, y, Gen::U, c + 1));
        add(TP, I1, word_elt(M, y, {{Gen::R, c + 2}, {Gen::R, c + 1}, {Gen::R, c}}));
        add(TY, I1, word_elt(M, y, {{Gen::R, c + 2}, {Gen::U, c}}));
        add(TY, gen_elt(m, x, Gen::R, c), word_elt(M, y, {{Gen::L, c}, {Gen::L, c + 1}}));
        break;
      case TP:
        add(TQ, gen_elt(m, x, Gen::L, c), idempotent_elt(M, y));
        add(TX, I1, gen_elt(M, y, Gen::L, c));
        break;
      case TX:
        add(TP, I1, word_elt(M, y, {{Gen::U, c + 2}, {Gen::R, c}}));
        add(TP, gen_elt(m, x, Gen::R, c), word_elt(M, y, {{Gen::L, c + 1}, {Gen::L, c + 2}}));
        add(TY, gen_elt(m, x, Gen::U, c), gen_elt(M, y, Gen::L, c + 1));
        add(TY, gen_elt(m, x, Gen::L, c), word_elt(M, y, {{Gen::R, c + 2}, {Gen::R, c}}));
        break;
      case TY:
        add(TX, I1, gen_elt(M, y, Gen::R, c + 1));
        add(TQ, I1, gen_elt(M, y, Gen::L, c + 2));
        break;
    }
    // same-type terms: outside shifts and exterior pairs
    auto self = [&](std::optional<Pure> a, std::optional<Pure> b) {
      if (!a || !b) return;
      int tgt = find(a->right, b->right);
      if (tgt >= 0 && types[tgt] == types[g]) X.add_arrow(g, {*a, *b}, tgt);
    };
    for (int j = 1; j <= m; j++) {
      if (j == c) continue;
      int pj = psi_c_map(c, j);
      self(gen_elt(m, x, Gen::R, j), gen_elt(M, y, Gen::L, pj));
      self(gen_elt(m, x, Gen::L, j), gen_elt(M, y, Gen::R, pj));
      if (has_bit(upwards1, j))
        self(gen_elt(m, x, Gen::C, j), gen_elt(M, y, Gen::U, pj));
      else
        self(gen_elt(m, x, Gen::U, j), gen_elt(M, y, Gen::C, pj));
    }
    // the strand through the minimum-free cap positions
    if (has_bit(upwards3, c))
      self(I1, word_elt(M, y, {{Gen::C, c}, {Gen::U, c + 2}}));
    else
      self(I1, word_elt(M, y, {{Gen::U, c}, {Gen::C, c + 2}}));
    // the c-indexed strand of the small algebra, crossing over
    if (has_bit(upwards1, c))
      self(gen_elt(m, x, Gen::C, c), gen_elt(M, y, Gen::U, c + 1));
    else
      self(gen_elt(m, x, Gen::U, c), gen_elt(M, y, Gen::C, c + 1));
  }
  return X;
}

// ---------------------------------------------------------------------------
// maximum

namespace {

class MaxDA : public DABimodule {
 public:
  MaxDA(int c, int m, int k, Mask upwards1, bool up_c) : c_(c) {
    in_spec_ = {m, k, upwards1};
    Mask up2 = 0;
    for (int j = 1; j <= m; j++)
      if (has_bit(upwards1, j)) up2 |= 1u << phi_c(c, j);
    up2 |= 1u << (up_c ? c : c + 1);
    out_spec_ = {m + 2, k + 1, up2};
    up_c_ = up_c;
    for (Idem y : out_spec_.idempotents()) {
      if (!has_bit(y, c)) continue;
      if (has_bit(y, c - 1) && has_bit(y, c + 1)) continue;
      Idem x = 0;
      for (int j = 0; j <= m; j++)
        if (has_bit(y, phi_c(c, j))) x |= 1u << j;
      if (has_bit(y, c + 1)) x |= 1u << (c - 1);
      assert(popcount(x) == k);
      gens_.push_back({y, x, 0, 0});
    }
  }

  int max_arity() const override { return 2; }

  int find_by_out(Idem y) const {
    for (int t = 0; t < (int)gens_.size(); t++)
      if (gens_[t].out_idem == y) return t;
    return -1;
  }

  std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const override {
    std::vector<DATerm> out;
    int M = in_spec_.m + 2;
    Idem y = gens_[gen].out_idem;
    if (inputs.size() == 0) {
      // R_{c+1} R_c, L_c L_{c+1}, and the exterior loop
      std::vector<std::vector<std::pair<Gen, int>>> words = {
          {{Gen::R, c_ + 1}, {Gen::R, c_}},
          {{Gen::L, c_}, {Gen::L, c_ + 1}}};
      if (up_c_)
        words.push_back({{Gen::C, c_}, {Gen::U, c_ + 1}});
      else
        words.push_back({{Gen::U, c_}, {Gen::C, c_ + 1}});
      for (auto& wd : words) {
        auto b = word_elt(M, y, wd);
        if (!b) continue;
        int tgt = find_by_out(b->right);
        if (tgt < 0) continue;
        assert(gens_[tgt].in_idem == gens_[gen].in_idem);
        out.push_back({*b, tgt});
      }
      return out;
    }
    if (inputs.size() != 1) return out;
    const Pure& a = inputs[0];
    if (a.left != gens_[gen].in_idem) return out;
    // transplant the weights through phi_c
    std::array<int, kMaxStrands> w2{};
    auto wa = a.weights2();
    for (int j = 1; j <= in_spec_.m; j++) w2[phi_c(c_, j)] = wa[j];
    Mask cm = 0;
    for (int j = 1; j <= in_spec_.m; j++)
      if (has_bit(a.cmask, j)) cm |= 1u << phi_c(c_, j);
    auto b = element_from_weights2(M, y, w2, cm);
    if (!b) return out;
    int tgt = find_by_out(b->right);
    assert(tgt >= 0 && "maximum: image idempotent not allowed");
    assert(gens_[tgt].in_idem == a.right);
    out.push_back({*b, tgt});
    return out;
  }

 private:
  int c_;
  bool up_c_;
};

}  // namespace

DAPtr max_da(int c, int m, int k, Mask upwards1, bool up_c) {
  return std::make_shared<MaxDA>(c, m, k, upwards1, up_c);
}

TypeD global_max(bool up_first) {
  TypeD X;
  X.spec = {2, 1, (Mask)(up_first ? 0b010 : 0b100)};
  X.add_gen({0b010, 0, 0, 0});  // idempotent {1}
  auto b = up_first ? word_elt(2, 0b010, {{Gen::C, 1}, {Gen::U, 2}})
                    : word_elt(2, 0b010, {{Gen::U, 1}, {Gen::C, 2}});
  assert(b);
  X.add_arrow(0, *b, 0);
  return X;
}

// ---------------------------------------------------------------------------
// homology of the quasi-inverse summand C(Z, x, y)

int y_summand_homology(int m, int k1, Mask upwards1, const std::array<int, kMaxStrands>& Z2,
                       Idem x, Idem y) {
  Mask all = (Mask)((1u << (m + 1)) - 2);
  AlgebraSpec B1{m, k1, upwards1};
  AlgebraSpec B2{m, m + 1 - k1, (Mask)(all & ~upwards1)};
  Idem full = (Idem)((1u << (m + 1)) - 1);
  int total2 = 0;
  for (int i = 1; i <= m; i++) total2 += Z2[i];

  // basis: pairs (dual a | b), a in B2 with left idem x, b in B1 with right
  // idem y, right(a) complementary to left(b), w(a) + w(b) = Z
  struct Pair {
    Pure a, b;
    bool operator<(const Pair& o) const {
      if (!(a == o.a)) return a < o.a;
      return b < o.b;
    }
    bool operator==(const Pair& o) const { return a == o.a && b == o.b; }
  };
  std::vector<Pair> basis;
  for (const auto& a : enumerate_pure(B2, total2)) {
    if (a.left != x) continue;
    std::array<int, kMaxStrands> wb{};
    bool ok = true;
    auto wa = a.weights2();
    for (int i = 1; i <= m; i++) {
      wb[i] = Z2[i] - wa[i];
      if (wb[i] < 0) ok = false;
    }
    if (!ok) continue;
    Idem bl = (Idem)(full & ~a.right);
    // enumerate C-subsets of the b side
    std::vector<int> ups;
    for (int j = 1; j <= m; j++)
      if (has_bit(upwards1, j)) ups.push_back(j);
    for (uint32_t bits = 0; bits < (1u << ups.size()); bits++) {
      Mask cm = 0;
      for (size_t t = 0; t < ups.size(); t++)
        if (bits >> t & 1) cm |= 1u << ups[t];
      auto b = element_from_weights2(m, bl, wb, cm);
      if (b && b->right == y) basis.push_back({a, *b});
    }
  }
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  auto index_of = [&](const Pure& a, const Pure& b) {
    Pair key{a, b};
    auto it = std::lower_bound(basis.begin(), basis.end(), key);
    assert(it != basis.end() && *it == key);
    return (int)(it - basis.begin());
  };

  // differential rows over F2
  int n = (int)basis.size();
  std::vector<std::vector<uint64_t>> rows(n, std::vector<uint64_t>((n + 63) / 64, 0));
  auto toggle = [&](int r, int c) { rows[r][c / 64] ^= 1ull << (c % 64); };
  for (int r = 0; r < n; r++) {
    const Pure& a = basis[r].a;
    const Pure& b = basis[r].b;
    // divide a on the right: find c with c * g = a
    auto divide_right = [&](Gen kind, int j) -> std::optional<Pure> {
      auto wa = a.weights2();
      Mask cm = a.cmask;
      switch (kind) {
        case Gen::R:
        case Gen::L: wa[j] -= 1; break;
        case Gen::U: wa[j] -= 2; break;
        case Gen::C:
          if (!has_bit(cm, j)) return std::nullopt;
          cm &= ~(1u << j);
          wa[j] -= 2;
          break;
      }
      if (wa[j] < 0) return std::nullopt;
      auto cand = element_from_weights2(m, a.left, wa, cm);
      if (!cand) return std::nullopt;
      auto g = gen_elt(m, cand->right, kind, j);
      if (!g) return std::nullopt;
      auto prod = mul(*cand, *g);
      if (prod && *prod == a) return cand;
      return std::nullopt;
    };
    auto mult_left = [&](Gen kind, int j, const Pure& e) -> std::optional<Pure> {
      Idem src = e.left;
      Idem from;
      switch (kind) {
        case Gen::R:
          if (!has_bit(src, j)) return std::nullopt;
          from = (src & ~(1u << j)) | (1u << (j - 1));
          break;
        case Gen::L:
          if (!has_bit(src, j - 1)) return std::nullopt;
          from = (src & ~(1u << (j - 1))) | (1u << j);
          break;
        default: from = src; break;
      }
      auto g = gen_elt(m, from, kind, j);
      if (!g || g->right != src) return std::nullopt;
      return mul(*g, e);
    };
    for (int i = 1; i <= m; i++) {
      bool up1 = has_bit(upwards1, i);
      // shift terms (R_i dual a | L_i b) and (L_i dual a | R_i b)
      if (auto c = divide_right(Gen::R, i))
        if (auto b2 = mult_left(Gen::L, i, b)) toggle(r, index_of(*c, *b2));
      if (auto c = divide_right(Gen::L, i))
        if (auto b2 = mult_left(Gen::R, i, b)) toggle(r, index_of(*c, *b2));
      if (up1) {
        // (dual a | d_i b)
        if (has_bit(b.cmask, i)) {
          auto u = b.u;
          u[i]++;
          if (auto b2 = make_pure(m, b.left, b.right, u, b.cmask & ~(1u << i)))
            toggle(r, index_of(a, *b2));
        }
        // (U_i dual a | C_i b)
        if (auto c = divide_right(Gen::U, i))
          if (auto b2 = mult_left(Gen::C, i, b)) toggle(r, index_of(*c, *b2));
      } else {
        // (dual d_i a | b): c with d_i c containing a
        if (!has_bit(a.cmask, i) && a.u[i] >= 1) {
          auto u = a.u;
          u[i]--;
          if (auto c = make_pure(m, a.left, a.right, u, a.cmask | (1u << i)))
            toggle(r, index_of(*c, b));
        }
        // (C_i dual a | U_i b)
        if (auto c = divide_right(Gen::C, i))
          if (auto b2 = mult_left(Gen::U, i, b)) toggle(r, index_of(*c, *b2));
      }
    }
  }
  int rank = f2_rank(rows, n);
  return n - 2 * rank;
}

}  // namespace hfk
