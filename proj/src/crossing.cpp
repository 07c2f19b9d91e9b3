#include <algorithm>
#include <cassert>

#include "hfk/local.hpp"

// Crossing bimodules.  The local two-strand model is tabulated here; the
// general operations are computed from it: candidate outputs are solved
// from the weight gradings and realized through their weights, then kept
// exactly when their local type appears in the local model's output.

namespace hfk {

namespace {

// local type words: a shape in {1, L1, R1, L2, R2, L1L2, R2R1} times
// U1^p U2^q times optional C1, C2 factors
enum Shape : uint8_t { ONE, L1, R1, L2, R2, L1L2, R2R1 };

struct LocWord {
  Shape e = ONE;
  int p = 0, q = 0;
  bool c1 = false, c2 = false;
  bool operator==(const LocWord&) const = default;
};

// weight of a local word at the two strand positions (doubled)
std::pair<int, int> loc_weight2(const LocWord& w) {
  int wi = 2 * w.p + 2 * (w.c1 ? 1 : 0);
  int wj = 2 * w.q + 2 * (w.c2 ? 1 : 0);
  if (w.e == L1 || w.e == R1 || w.e == L1L2 || w.e == R2R1) wi += 1;
  if (w.e == L2 || w.e == R2 || w.e == L1L2 || w.e == R2R1) wj += 1;
  return {wi, wj};
}

// the seven-case type formula, with C_i/C_{i+1} recorded as flags
LocWord loc_type(const Pure& a, int i) {
  LocWord w;
  w.c1 = has_bit(a.cmask, i);
  w.c2 = has_bit(a.cmask, i + 1);
  auto vx = weight_of_state(a.left, a.m);
  auto vy = weight_of_state(a.right, a.m);
  int wi2 = std::abs(vx[i] - vy[i]) + 2 * a.u[i];
  int wj2 = std::abs(vx[i + 1] - vy[i + 1]) + 2 * a.u[i + 1];
  bool pi = wi2 % 2, pj = wj2 % 2;
  if (pi && pj) {
    w.e = vx[i + 1] < vy[i + 1] ? R2R1 : L1L2;
    w.p = (wi2 - 1) / 2;
    w.q = (wj2 - 1) / 2;
  } else if (!pi && pj) {
    w.e = vx[i + 1] < vy[i + 1] ? R2 : L2;
    w.p = wi2 / 2;
    w.q = (wj2 - 1) / 2;
  } else if (pi && !pj) {
    w.e = vx[i] < vy[i] ? R1 : L1;
    w.p = (wi2 - 1) / 2;
    w.q = wj2 / 2;
  } else {
    w.e = ONE;
    w.p = wi2 / 2;
    w.q = wj2 / 2;
  }
  return w;
}

using LocTerm = std::pair<LocWord, Quad>;

// delta^1_2 of the local model
std::vector<LocTerm> loc_delta2(Quad X, const LocWord& w) {
  std::vector<LocTerm> out;
  bool oc1 = w.c2, oc2 = w.c1;  // C-equivariance swaps the strand
  auto push = [&](Shape e, int p, int q, Quad Y, bool k1, bool k2) {
    out.push_back({LocWord{e, p, q, k1, k2}, Y});
  };
  switch (X) {
    case QN:
      if (w.e == ONE || w.e == L1L2 || w.e == R2R1) push(w.e, w.q, w.p, QN, oc1, oc2);
      if (w.e == L1) {
        push(ONE, w.q, w.p + 1, QW, oc1, oc2);
        push(L1L2, w.q, w.p, QE, oc1, oc2);
      }
      if (w.e == R2) {
        push(R2R1, w.q, w.p, QW, oc1, oc2);
        push(ONE, w.q + 1, w.p, QE, oc1, oc2);
      }
      break;
    case QW:
      if (w.e == ONE && w.p >= w.q) push(ONE, w.q, w.p, QW, oc1, oc2);
      if (w.e == ONE && w.p > w.q) push(L1L2, w.q, w.p - 1, QE, oc1, oc2);
      if (w.e == R1 && w.p >= w.q) push(ONE, w.q, w.p, QN, oc1, oc2);
      if (w.e == L2 && w.p >= w.q + 1) push(L1L2, w.q, w.p - 1, QN, oc1, oc2);
      break;
    case QE:
      if (w.e == ONE && w.q >= w.p) push(ONE, w.q, w.p, QE, oc1, oc2);
      if (w.e == ONE && w.q > w.p) push(R2R1, w.q - 1, w.p, QW, oc1, oc2);
      if (w.e == L2 && w.q >= w.p) push(ONE, w.q, w.p, QN, oc1, oc2);
      if (w.e == R1 && w.q >= w.p + 1) push(R2R1, w.q - 1, w.p, QN, oc1, oc2);
      break;
    case QS: {
      // S -> S on (U1 U2)^l with C-equivariance
      if (w.e == ONE && w.p == w.q) push(ONE, w.p, w.q, QS, oc1, oc2);
      // S -> {N,W,E}: tabulated actions, extended by U1U2-multiplication
      int l = std::min(w.p, w.q);
      int rp = w.p - l, rq = w.q - l;
      struct Entry {
        Shape e;
        int p, q;
        bool c1, c2;
        Shape oe;
        int op, oq;
        bool k1, k2;
        Quad Y;
      };
      static const Entry table[] = {
          {ONE, 0, 0, false, true, R1, 0, 0, false, false, QW},
          {ONE, 0, 0, true, false, L2, 0, 0, false, false, QE},
          {ONE, 0, 0, true, true, R1, 0, 0, false, true, QW},
          {ONE, 0, 0, true, true, L2, 0, 0, true, false, QE},
          {ONE, 1, 0, false, true, L2, 1, 0, false, false, QE},
          {ONE, 1, 0, true, true, L2, 1, 0, false, true, QE},
          {ONE, 0, 1, true, false, R1, 0, 1, false, false, QW},
          {ONE, 0, 1, true, true, R1, 0, 1, true, false, QW},
          {R1, 0, 0, false, true, R1, 0, 0, false, false, QN},
          {R1, 0, 0, true, true, R1, 0, 0, false, true, QN},
          {L2, 0, 0, true, false, L2, 0, 0, false, false, QN},
          {L2, 0, 0, true, true, L2, 0, 0, true, false, QN},
          {R1, 0, 1, true, false, R1, 0, 1, false, false, QN},
          {R1, 0, 1, true, true, R1, 0, 1, true, false, QN},
          {L2, 1, 0, false, true, L2, 1, 0, false, false, QN},
          {L2, 1, 0, true, true, L2, 1, 0, false, true, QN},
      };
      for (const auto& en : table)
        if (en.e == w.e && en.p == rp && en.q == rq && en.c1 == w.c1 && en.c2 == w.c2)
          push(en.oe, en.op + l, en.oq + l, en.Y, en.k1, en.k2);
      break;
    }
  }
  return out;
}

// delta^1_3 of the local model (only nonzero out of S)
std::vector<LocTerm> loc_delta3(const LocWord& w1, const LocWord& w2) {
  std::vector<LocTerm> out;
  int cnt1 = (w1.c1 ? 1 : 0) + (w2.c1 ? 1 : 0);
  int cnt2 = (w1.c2 ? 1 : 0) + (w2.c2 ? 1 : 0);
  if (cnt1 > 1 || cnt2 > 1) return out;  // double C in the output
  bool oc1 = cnt2 == 1, oc2 = cnt1 == 1;
  int l1 = std::min(w1.p, w1.q), l2 = std::min(w2.p, w2.q);
  int L = l1 + l2;
  Shape e1 = w1.e, e2 = w2.e;
  int p1 = w1.p - l1, q1 = w1.q - l1;
  int p2 = w2.p - l2, q2 = w2.q - l2;
  auto push = [&](Shape e, int p, int q, Quad Y) {
    out.push_back({LocWord{e, p + L, q + L, oc1, oc2}, Y});
  };

  // output R1 U1^t (x) East
  if (e1 == R1 && p1 == 0 && q1 == 0 && e2 == R2 && p2 == 0) push(R1, q2, 0, QE);
  // output L2 U1^t U2^n (x) East
  {
    int n = -1, t = -1;
    if (e1 == ONE && q1 == 0 && p1 >= 1 && e2 == ONE && p2 == 0) n = p1 - 1, t = q2;
    if (n >= 0 && n < t) push(L2, t, n, QE);
    n = t = -1;
    if (e1 == R1 && q1 == 0 && e2 == L1 && p2 == 0) n = p1, t = q2;
    if (n >= 0 && n < t) push(L2, t, n, QE);
    n = t = -1;
    if (e1 == L2 && q1 == 0 && p1 >= 1 && e2 == R2 && p2 == 0) n = p1 - 1, t = q2 + 1;
    if (n >= 0 && n < t) push(L2, t, n, QE);
    n = t = -1;
    if (e1 == ONE && p1 == 0 && e2 == ONE && q2 == 0 && p2 >= 1) t = q1, n = p2 - 1;
    if (t >= 1 && t <= n) push(L2, t, n, QE);
    n = t = -1;
    if (e1 == R1 && p1 == 0 && e2 == L1 && q2 == 0) t = q1, n = p2;
    if (t >= 1 && t <= n) push(L2, t, n, QE);
    n = t = -1;
    if (e1 == L2 && p1 == 0 && e2 == R2 && q2 == 0 && p2 >= 1) t = q1 + 1, n = p2 - 1;
    if (t >= 1 && t <= n) push(L2, t, n, QE);
  }
  // output L2 U2^n (x) West
  if (e1 == L2 && p1 == 0 && q1 == 0 && e2 == L1 && q2 == 0) push(L2, 0, p2, QW);
  // output R1 U1^t U2^n (x) West
  {
    int n = -1, t = -1;
    if (e1 == ONE && p1 == 0 && q1 >= 1 && e2 == ONE && q2 == 0) t = q1 - 1, n = p2;
    if (t >= 0 && t < n) push(R1, t, n, QW);
    n = t = -1;
    if (e1 == L2 && p1 == 0 && e2 == R2 && q2 == 0) t = q1, n = p2;
    if (t >= 0 && t < n) push(R1, t, n, QW);
    n = t = -1;
    if (e1 == R1 && p1 == 0 && q1 >= 1 && e2 == L1 && q2 == 0) t = q1 - 1, n = p2 + 1;
    if (t >= 0 && t < n) push(R1, t, n, QW);
    n = t = -1;
    if (e1 == ONE && q1 == 0 && e2 == ONE && p2 == 0 && q2 >= 1) n = p1, t = q2 - 1;
    if (n >= 1 && n <= t) push(R1, t, n, QW);
    n = t = -1;
    if (e1 == L2 && q1 == 0 && e2 == R2 && p2 == 0) n = p1, t = q2;
    if (n >= 1 && n <= t) push(R1, t, n, QW);
    n = t = -1;
    if (e1 == R1 && q1 == 0 && e2 == L1 && p2 == 0 && q2 >= 1) n = p1 + 1, t = q2 - 1;
    if (n >= 1 && n <= t) push(R1, t, n, QW);
  }
  // output L2 U1^t U2^n (x) North
  {
    int n = -1, t = -1;
    if (e1 == ONE && q1 == 0 && p1 >= 1 && e2 == L2 && p2 == 0) n = p1 - 1, t = q2;
    if (n >= 0 && n < t) push(L2, t, n, QN);
    n = t = -1;
    if (e1 == R1 && q1 == 0 && e2 == L1L2 && p2 == 0) n = p1, t = q2;
    if (n >= 0 && n < t) push(L2, t, n, QN);
    n = t = -1;
    if (e1 == L2 && q1 == 0 && p1 >= 1 && e2 == ONE && p2 == 0) n = p1 - 1, t = q2;
    if (n >= 0 && n < t) push(L2, t, n, QN);
    n = t = -1;
    if (e1 == L2 && p1 == 0 && e2 == ONE && q2 == 0 && p2 >= 1) t = q1, n = p2 - 1;
    if (t >= 1 && t <= n) push(L2, t, n, QN);
    n = t = -1;
    if (e1 == ONE && p1 == 0 && e2 == L2 && q2 == 0 && p2 >= 1) t = q1, n = p2 - 1;
    if (t >= 1 && t <= n) push(L2, t, n, QN);
    n = t = -1;
    if (e1 == R1 && p1 == 0 && e2 == L1L2 && q2 == 0) t = q1, n = p2;
    if (t >= 1 && t <= n) push(L2, t, n, QN);
    n = t = -1;
    if (e1 == L2 && p1 == 0 && q1 == 0 && e2 == ONE && q2 == 0 && p2 >= 1) t = 0, n = p2 - 1;
    if (t == 0 && n >= 0) push(L2, t, n, QN);
  }
  // output R1 U1^t U2^n (x) North
  {
    int n = -1, t = -1;
    if (e1 == ONE && p1 == 0 && q1 >= 1 && e2 == R1 && q2 == 0) t = q1 - 1, n = p2;
    if (t >= 0 && t < n) push(R1, t, n, QN);
    n = t = -1;
    if (e1 == L2 && p1 == 0 && e2 == R2R1 && q2 == 0) t = q1, n = p2;
    if (t >= 0 && t < n) push(R1, t, n, QN);
    n = t = -1;
    if (e1 == R1 && p1 == 0 && q1 >= 1 && e2 == ONE && q2 == 0) t = q1 - 1, n = p2;
    if (t >= 0 && t < n) push(R1, t, n, QN);
    n = t = -1;
    if (e1 == R1 && q1 == 0 && e2 == ONE && p2 == 0 && q2 >= 1) n = p1, t = q2 - 1;
    if (n >= 1 && n <= t) push(R1, t, n, QN);
    n = t = -1;
    if (e1 == ONE && q1 == 0 && e2 == R1 && p2 == 0 && q2 >= 1) n = p1, t = q2 - 1;
    if (n >= 1 && n <= t) push(R1, t, n, QN);
    n = t = -1;
    if (e1 == L2 && q1 == 0 && e2 == R2R1 && p2 == 0) n = p1, t = q2;
    if (n >= 1 && n <= t) push(R1, t, n, QN);
    n = t = -1;
    if (e1 == R1 && p1 == 0 && q1 == 0 && e2 == ONE && p2 == 0 && q2 >= 1) n = 0, t = q2 - 1;
    if (n == 0 && t >= 0) push(R1, t, n, QN);
  }
  return out;
}

// idempotent constraints and the outgoing idempotent of a crossing generator
bool quad_valid(Quad q, Idem x, int i) {
  switch (q) {
    case QN: return has_bit(x, i);
    case QS: return !has_bit(x, i);
    case QW: return has_bit(x, i - 1) && !has_bit(x, i);
    case QE: return has_bit(x, i + 1) && !has_bit(x, i);
  }
  return false;
}

Idem quad_out_idem(Quad q, Idem x, int i) {
  switch (q) {
    case QN:
    case QS: return x;
    case QW: return (x & ~(1u << (i - 1))) | (1u << i);
    case QE: return (x & ~(1u << (i + 1))) | (1u << i);
  }
  return x;
}

}  // namespace

int crossing_maslov(bool positive, bool up_i, bool up_i1, Quad q) {
  // rows: (uu, ud, du, dd); columns: (N, S, W, E)
  static const int pos_table[4][4] = {
      {-1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, -1, 0, 0}};
  static const int neg_table[4][4] = {
      {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}, {0, 1, 0, 0}};
  int row = (up_i ? 0 : 2) + (up_i1 ? 0 : 1);
  return positive ? pos_table[row][q] : neg_table[row][q];
}

int crossing_alex2(bool positive, bool up_i, bool up_i1, Quad q) {
  // evaluated against the output algebra's orientations, which are the
  // input orientations swapped by the crossing
  int fi = up_i1 ? -1 : 1, fj = up_i ? -1 : 1;
  int v = 0;
  switch (q) {
    case QN: v = (fi + fj) / 2; break;
    case QS: v = -(fi + fj) / 2; break;
    case QW: v = (fi - fj) / 2; break;
    case QE: v = -(fi - fj) / 2; break;
  }
  return positive ? v : -v;
}

namespace {

class PosDA : public DABimodule {
 public:
  PosDA(int i, int m, int k, Mask upwards_in) : i_(i) {
    in_spec_ = {m, k, upwards_in};
    Mask out_up = upwards_in;
    bool ui = has_bit(upwards_in, i), ui1 = has_bit(upwards_in, i + 1);
    out_up &= ~((1u << i) | (1u << (i + 1)));
    if (ui) out_up |= 1u << (i + 1);
    if (ui1) out_up |= 1u << i;
    out_spec_ = {m, k, out_up};
    for (Quad q : {QN, QS, QW, QE})
      for (Idem x : in_spec_.idempotents())
        if (quad_valid(q, x, i)) {
          quads_.push_back(q);
          gens_.push_back({quad_out_idem(q, x, i), x, crossing_maslov(true, ui, ui1, q),
                           crossing_alex2(true, ui, ui1, q)});
        }
  }

  int max_arity() const override { return 3; }

  int find_gen(Quad q, Idem in_idem) const {
    for (int t = 0; t < (int)gens_.size(); t++)
      if (quads_[t] == q && gens_[t].in_idem == in_idem) return t;
    return -1;
  }
  Quad quad(int g) const { return quads_[g]; }

  std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const override {
    std::vector<DATerm> out;
    int m = in_spec_.m;
    Quad T = quads_[gen];
    Idem out_idem = gens_[gen].out_idem;
    if (inputs.size() == 0) {
      // delta^1_1: W -> L_i (x) S, E -> R_{i+1} (x) S
      if (T == QW || T == QE) {
        Idem x = gens_[gen].in_idem;
        int tgt = find_gen(QS, x);
        if (tgt >= 0) {
          std::array<int, kMaxStrands> w2{};
          w2[T == QW ? i_ : i_ + 1] = 1;
          if (auto b = element_from_weights2(m, out_idem, w2, 0))
            if (b->right == x) out.push_back({*b, tgt});
        }
      }
      return out;
    }
    if (inputs.size() > 2) return out;
    // idempotent chain
    if (inputs[0].left != gens_[gen].in_idem) return out;
    for (size_t t = 0; t + 1 < inputs.size(); t++)
      if (inputs[t].right != inputs[t + 1].left) return out;
    // outside C factors pass through; a repeated one kills the term
    Mask oc = 0;
    Mask local = (1u << i_) | (1u << (i_ + 1));
    for (const auto& a : inputs) {
      Mask c = a.cmask & ~local;
      if (oc & c) return out;
      oc |= c;
    }
    std::vector<LocTerm> loc;
    if (inputs.size() == 1) {
      loc = loc_delta2(T, loc_type(inputs[0], i_));
    } else {
      if (T != QS) return out;
      loc = loc_delta3(loc_type(inputs[0], i_), loc_type(inputs[1], i_));
    }
    Idem xl = inputs.back().right;
    for (const auto& [w, Y] : loc) {
      int tgt = find_gen(Y, xl);
      if (tgt < 0) continue;
      // solve the weight grading for the output element
      std::array<int, kMaxStrands> w2{};
      for (int j = 1; j <= m; j++) {
        if (j == i_ || j == i_ + 1) continue;
        for (const auto& a : inputs) w2[j] += a.weight2(j);
      }
      auto [wi, wj] = loc_weight2(w);
      w2[i_] = wi;
      w2[i_ + 1] = wj;
      Mask cm = oc;
      if (w.c1) cm |= 1u << i_;
      if (w.c2) cm |= 1u << (i_ + 1);
      auto b = element_from_weights2(m, out_idem, w2, cm);
      if (!b) continue;
      if (!(loc_type(*b, i_) == w)) continue;
      if (b->right != gens_[tgt].out_idem) continue;
      out.push_back({*b, tgt});
    }
    return out;
  }

 private:
  int i_;
  std::vector<Quad> quads_;
};

class NegDA : public DABimodule {
 public:
  NegDA(int i, int m, int k, Mask upwards_in) : i_(i) {
    in_spec_ = {m, k, upwards_in};
    Mask tau = upwards_in;
    bool ui = has_bit(upwards_in, i), ui1 = has_bit(upwards_in, i + 1);
    tau &= ~((1u << i) | (1u << (i + 1)));
    if (ui) tau |= 1u << (i + 1);
    if (ui1) tau |= 1u << i;
    out_spec_ = {m, k, tau};
    pos_ = std::make_shared<PosDA>(i, m, k, tau);  // mirror: pos input = tau(S)
    for (Quad q : {QN, QS, QW, QE})
      for (Idem x : in_spec_.idempotents())
        if (quad_valid(q, x, i)) {
          quads_.push_back(q);
          gens_.push_back({quad_out_idem(q, x, i), x, crossing_maslov(false, ui, ui1, q),
                           crossing_alex2(false, ui, ui1, q)});
        }
  }

  int max_arity() const override { return 3; }

  int find_gen(Quad q, Idem in_idem) const {
    for (int t = 0; t < (int)gens_.size(); t++)
      if (quads_[t] == q && gens_[t].in_idem == in_idem) return t;
    return -1;
  }
  Quad quad(int g) const { return quads_[g]; }

  std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const override {
    // reverse and dualize the inputs, evaluate in the mirror positive
    // crossing, and keep terms landing on this generator
    std::vector<DATerm> out;
    if (inputs.size() > 2) return out;
    if (!inputs.empty()) {
      if (inputs[0].left != gens_[gen].in_idem) return out;
      for (size_t t = 0; t + 1 < inputs.size(); t++)
        if (inputs[t].right != inputs[t + 1].left) return out;
    }
    std::vector<Pure> rev;
    for (size_t t = inputs.size(); t-- > 0;) rev.push_back(opposite(inputs[t]));
    Idem pos_in = inputs.empty() ? gens_[gen].in_idem : inputs.back().right;
    for (Quad q : {QN, QS, QW, QE}) {
      int pg = pos_->find_gen(q, pos_in);
      if (pg < 0) continue;
      for (const auto& t : pos_->delta(pg, std::span<const Pure>(rev))) {
        // target of the positive operation must be this generator
        if (pos_->quad(t.dst) != quads_[gen]) continue;
        if (pos_->gen(t.dst).in_idem != gens_[gen].in_idem) continue;
        int tgt = find_gen(q, pos_in);
        if (tgt < 0) continue;
        out.push_back({opposite(t.coef), tgt});
      }
    }
    return out;
  }

 private:
  int i_;
  std::shared_ptr<PosDA> pos_;
  std::vector<Quad> quads_;
};

}  // namespace

DAPtr pos_da(int i, int m, int k, Mask upwards_in) {
  return std::make_shared<PosDA>(i, m, k, upwards_in);
}

DAPtr neg_da(int i, int m, int k, Mask upwards_in) {
  return std::make_shared<NegDA>(i, m, k, upwards_in);
}

// ---------------------------------------------------------------------------
// crossing DD bimodules

namespace {

// I_x * g1 * g2 * ... for single shift/loop/exterior generators
struct Letter {
  Gen kind;
  int j;
};

std::optional<Pure> word_from(int m, Idem x, std::initializer_list<Letter> letters) {
  std::optional<Pure> acc = idempotent_elt(m, x);
  for (const Letter& l : letters) {
    if (!acc) return std::nullopt;
    Idem cur = acc->right;
    std::optional<Pure> g;
    std::array<uint8_t, kMaxStrands> u{};
    switch (l.kind) {
      case Gen::R:
        if (has_bit(cur, l.j - 1) && !has_bit(cur, l.j))
          g = make_pure(m, cur, (cur & ~(1u << (l.j - 1))) | (1u << l.j), u, 0);
        break;
      case Gen::L:
        if (has_bit(cur, l.j) && !has_bit(cur, l.j - 1))
          g = make_pure(m, cur, (cur & ~(1u << l.j)) | (1u << (l.j - 1)), u, 0);
        break;
      case Gen::U:
        u[l.j] = 1;
        g = make_pure(m, cur, cur, u, 0);
        break;
      case Gen::C:
        g = make_pure(m, cur, cur, u, 1u << l.j);
        break;
    }
    if (!g) return std::nullopt;
    acc = mul(*acc, *g);
  }
  return acc;
}

// generator types of the crossing DD bimodules: pairs (y, x) with |y| = k2,
// |x| = k1 = m+1-k2
bool dd_quad_valid(Quad q, Idem y, Idem x, int i, int m) {
  Idem all = (Idem)((1u << (m + 1)) - 1);
  switch (q) {
    case QN: return (y & x) == 0 && (y | x) == all && has_bit(y, i);
    case QS: return (y & x) == 0 && (y | x) == all && has_bit(x, i);
    case QW:
      return (y & x) == (1u << i) && (y | x) == (all & ~(1u << (i - 1))) && i >= 1;
    case QE:
      return (y & x) == (1u << i) && (y | x) == (all & ~(1u << (i + 1))) && i + 1 <= m;
  }
  return false;
}

struct DDArrow {
  Quad from, to;
  std::vector<Letter> w2;  // acts on y, lands in spec1
  std::vector<Letter> w1;  // acts on x, lands in spec2
};

TypeDD crossing_dd(bool positive, int i, int m, int k2, Mask up2, Mask up1, bool up_i,
                   bool up_i1) {
  TypeDD X;
  X.spec1 = {m, k2, up2};
  X.spec2 = {m, m + 1 - k2, up1};
  std::vector<Quad> quads;
  auto find = [&](Quad q, Idem y, Idem x) {
    for (int t = 0; t < X.size(); t++)
      if (quads[t] == q && X.gens[t].idem == y && X.gens[t].idem2 == x) return t;
    return -1;
  };
  for (Quad q : {QN, QS, QW, QE})
    for (Idem y : X.spec1.idempotents())
      for (Idem x : X.spec2.idempotents())
        if (dd_quad_valid(q, y, x, i, m)) {
          quads.push_back(q);
          X.add_gen({y, x, crossing_maslov(positive, up_i, up_i1, q),
                     crossing_alex2(positive, up_i, up_i1, q)});
        }
  auto tau = [&](int j) { return j == i ? i + 1 : (j == i + 1 ? i : j); };
  // same-type terms: outside shifts, and U/C pairs twisted by tau
  for (int g = 0; g < X.size(); g++) {
    Idem y = X.gens[g].idem, x = X.gens[g].idem2;
    for (int j = 1; j <= m; j++) {
      if (j != i && j != i + 1) {
        for (int dir = 0; dir < 2; dir++) {
          auto by = word_from(m, y, {Letter{dir ? Gen::R : Gen::L, j}});
          auto bx = word_from(m, x, {Letter{dir ? Gen::L : Gen::R, j}});
          if (!by || !bx) continue;
          int tgt = find(quads[g], by->right, bx->right);
          if (tgt >= 0) X.add_arrow(g, {*by, *bx}, tgt);
        }
      }
      // U_{tau(j)} (x) C_j for j in up1, C_{tau(j)} (x) U_j otherwise
      std::optional<Pure> by, bx;
      if (has_bit(up1, j)) {
        by = word_from(m, y, {Letter{Gen::U, tau(j)}});
        bx = word_from(m, x, {Letter{Gen::C, j}});
      } else {
        by = word_from(m, y, {Letter{Gen::C, tau(j)}});
        bx = word_from(m, x, {Letter{Gen::U, j}});
      }
      if (by && bx) X.add_arrow(g, {*by, *bx}, g);
    }
  }
  // the eight inside arrows
  std::vector<DDArrow> arrows;
  if (positive) {
    arrows = {
        {QS, QW, {{Gen::R, i}}, {{Gen::U, i + 1}}},
        {QS, QW, {{Gen::L, i + 1}}, {{Gen::R, i + 1}, {Gen::R, i}}},
        {QW, QS, {{Gen::L, i}}, {}},
        {QE, QS, {{Gen::R, i + 1}}, {}},
        {QS, QE, {{Gen::L, i + 1}}, {{Gen::U, i}}},
        {QS, QE, {{Gen::R, i}}, {{Gen::L, i}, {Gen::L, i + 1}}},
        {QW, QN, {}, {{Gen::L, i}}},
        {QN, QW, {{Gen::U, i + 1}}, {{Gen::R, i}}},
        {QN, QW, {{Gen::R, i + 1}, {Gen::R, i}}, {{Gen::L, i + 1}}},
        {QE, QN, {}, {{Gen::R, i + 1}}},
        {QN, QE, {{Gen::U, i}}, {{Gen::L, i + 1}}},
        {QN, QE, {{Gen::L, i}, {Gen::L, i + 1}}, {{Gen::R, i}}},
    };
  } else {
    arrows = {
        {QW, QN, {{Gen::U, i + 1}}, {{Gen::L, i}}},
        {QW, QN, {{Gen::L, i}, {Gen::L, i + 1}}, {{Gen::R, i + 1}}},
        {QN, QW, {}, {{Gen::R, i}}},
        {QN, QE, {}, {{Gen::L, i + 1}}},
        {QE, QN, {{Gen::U, i}}, {{Gen::R, i + 1}}},
        {QE, QN, {{Gen::R, i + 1}, {Gen::R, i}}, {{Gen::L, i}}},
        {QS, QW, {{Gen::R, i}}, {}},
        {QW, QS, {{Gen::L, i}}, {{Gen::U, i + 1}}},
        {QW, QS, {{Gen::R, i + 1}}, {{Gen::L, i}, {Gen::L, i + 1}}},
        {QS, QE, {{Gen::L, i + 1}}, {}},
        {QE, QS, {{Gen::R, i + 1}}, {{Gen::U, i}}},
        {QE, QS, {{Gen::L, i}}, {{Gen::R, i + 1}, {Gen::R, i}}},
    };
  }
  for (int g = 0; g < X.size(); g++) {
    Idem y = X.gens[g].idem, x = X.gens[g].idem2;
    for (const auto& ar : arrows) {
      if (ar.from != quads[g]) continue;
      auto mk = [&](Idem from, const std::vector<Letter>& ls) -> std::optional<Pure> {
        std::optional<Pure> acc = idempotent_elt(m, from);
        for (const Letter& l : ls) {
          if (!acc) return std::nullopt;
          auto g2 = word_from(m, acc->right, {l});
          if (!g2) return std::nullopt;
          acc = mul(*acc, *g2);
        }
        return acc;
      };
      auto by = mk(y, ar.w2);
      auto bx = mk(x, ar.w1);
      if (!by || !bx) continue;
      int tgt = find(ar.to, by->right, bx->right);
      if (tgt >= 0) X.add_arrow(g, {*by, *bx}, tgt);
    }
  }
  return X;
}

}  // namespace

TypeDD pos_dd(int i, int m, int k2, Mask up2, Mask up1, bool up_i, bool up_i1) {
  return crossing_dd(true, i, m, k2, up2, up1, up_i, up_i1);
}

TypeDD neg_dd(int i, int m, int k2, Mask up2, Mask up1, bool up_i, bool up_i1) {
  return crossing_dd(false, i, m, k2, up2, up1, up_i, up_i1);
}

TypeDD opposite_of(const TypeDD& X) {
  TypeDD out;
  out.spec1 = X.spec1;
  out.spec2 = X.spec2;
  for (const auto& g : X.gens) out.add_gen({g.idem, g.idem2, -g.maslov, -g.alex2});
  for (int s = 0; s < X.size(); s++)
    for (const auto& ar : X.delta[s])
      out.add_arrow(ar.dst, {opposite(ar.coef.a1), opposite(ar.coef.a2)}, s);
  return out;
}

}  // namespace hfk
