#include "hfk/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <sstream>

namespace hfk {

bool AlgebraSpec::valid() const {
  if (m < 0 || m > kMaxStrands - 2) return false;
  if (k < 0 || k > m + 1) return false;
  return (upwards >> (m + 1)) == 0 && !has_bit(upwards, 0);
}

std::vector<Idem> AlgebraSpec::idempotents() const {
  std::vector<Idem> out;
  // iterate k-subsets of {0..m}
  if (k == 0) { out.push_back(0); return out; }
  std::vector<int> pos(k);
  for (int i = 0; i < k; i++) pos[i] = i;
  while (true) {
    Idem x = 0;
    for (int p : pos) x |= 1u << p;
    out.push_back(x);
    int i = k - 1;
    while (i >= 0 && pos[i] == m - (k - 1 - i)) i--;
    if (i < 0) break;
    pos[i]++;
    for (int j = i + 1; j < k; j++) pos[j] = pos[j - 1] + 1;
  }
  return out;
}

std::string AlgebraSpec::str() const {
  std::ostringstream os;
  os << "B(" << m << "," << k << ",{";
  bool first = true;
  for (int i = 1; i <= m; i++)
    if (has_bit(upwards, i)) { if (!first) os << ","; os << i; first = false; }
  os << "})";
  return os.str();
}

std::array<int, kMaxStrands> weight_of_state(Idem x, int m) {
  std::array<int, kMaxStrands> v{};
  int count = 0;
  for (int i = m; i >= 1; i--) {
    if (has_bit(x, i)) count++;
    v[i] = count;
  }
  return v;
}

std::array<int, kMaxStrands> min_relative_weight2(Idem x, Idem y, int m) {
  auto vx = weight_of_state(x, m), vy = weight_of_state(y, m);
  std::array<int, kMaxStrands> w{};
  for (int i = 1; i <= m; i++) w[i] = std::abs(vx[i] - vy[i]);
  return w;
}

bool are_close_enough(Idem x, Idem y) {
  if (popcount(x) != popcount(y)) return false;
  while (x) {
    int a = __builtin_ctz(x), b = __builtin_ctz(y);
    if (std::abs(a - b) > 1) return false;
    x &= x - 1;
    y &= y - 1;
  }
  return true;
}

std::vector<std::pair<int, int>> generating_intervals(Idem x, Idem y, int m) {
  std::vector<std::pair<int, int>> out;
  Idem common = x & y;
  auto w2 = min_relative_weight2(x, y, m);
  // intervals [i+1, j] where i < j are consecutive in {0..m} \ common
  int prev = -1;
  for (int p = 0; p <= m; p++) {
    if (has_bit(common, p)) continue;
    if (prev >= 0) {
      bool ok = true;
      for (int t = prev + 1; t <= p && ok; t++) ok = (w2[t] == 0);
      if (ok) out.push_back({prev + 1, p});
    }
    prev = p;
  }
  return out;
}

bool Pure::operator==(const Pure& o) const {
  if (m != o.m || left != o.left || right != o.right || cmask != o.cmask) return false;
  return std::memcmp(u.data(), o.u.data(), m + 1) == 0;
}

bool Pure::operator<(const Pure& o) const {
  if (left != o.left) return left < o.left;
  if (right != o.right) return right < o.right;
  if (cmask != o.cmask) return cmask < o.cmask;
  return std::memcmp(u.data(), o.u.data(), m + 1) < 0;
}

bool Pure::is_idempotent() const {
  if (left != right || cmask != 0) return false;
  for (int i = 1; i <= m; i++)
    if (u[i]) return false;
  return true;
}

int Pure::weight2(int i) const {
  auto vx = weight_of_state(left, m), vy = weight_of_state(right, m);
  return std::abs(vx[i] - vy[i]) + 2 * u[i] + 2 * (has_bit(cmask, i) ? 1 : 0);
}

std::array<int, kMaxStrands> Pure::weights2() const {
  auto w = min_relative_weight2(left, right, m);
  for (int i = 1; i <= m; i++) w[i] += 2 * u[i] + 2 * (has_bit(cmask, i) ? 1 : 0);
  return w;
}

int Pure::total_weight2() const {
  auto w = weights2();
  int s = 0;
  for (int i = 1; i <= m; i++) s += w[i];
  return s;
}

int Pure::maslov(Mask upwards) const {
  auto w = weights2();
  int s = 0;
  for (int i = 1; i <= m; i++)
    if (has_bit(upwards, i)) s += w[i];
  return popcount(cmask) - s;
}

int Pure::alexander2(Mask upwards) const {
  auto w = weights2();
  int s = 0;
  for (int i = 1; i <= m; i++) s += has_bit(upwards, i) ? -w[i] : w[i];
  return s;
}

std::optional<Pure> make_pure(int m, Idem left, Idem right,
                              const std::array<uint8_t, kMaxStrands>& u, Mask cmask) {
  if (!are_close_enough(left, right)) return std::nullopt;
  for (auto [lo, hi] : generating_intervals(left, right, m)) {
    bool divides = true;
    for (int t = lo; t <= hi && divides; t++) divides = (u[t] >= 1);
    if (divides) return std::nullopt;
  }
  Pure p;
  p.m = (uint8_t)m;
  p.left = left;
  p.right = right;
  p.cmask = cmask;
  p.u = u;
  return p;
}

std::optional<Pure> idempotent_elt(int m, Idem x) {
  return make_pure(m, x, x, {}, 0);
}

std::optional<Pure> mul(const Pure& a, const Pure& b) {
  assert(a.m == b.m);
  if (a.right != b.left) return std::nullopt;
  if (a.cmask & b.cmask) return std::nullopt;  // C_j^2 = 0
  int m = a.m;
  auto wxy = min_relative_weight2(a.left, a.right, m);
  auto wyz = min_relative_weight2(b.left, b.right, m);
  auto wxz = min_relative_weight2(a.left, b.right, m);
  std::array<uint8_t, kMaxStrands> u{};
  for (int i = 1; i <= m; i++) {
    int g2 = wxy[i] + wyz[i] - wxz[i];
    assert(g2 >= 0 && g2 % 2 == 0);
    u[i] = (uint8_t)(a.u[i] + b.u[i] + g2 / 2);
  }
  return make_pure(m, a.left, b.right, u, a.cmask | b.cmask);
}

// Reconstruct the idempotent state with weight vector v, or 0xffffffff.
static Idem state_from_v(const std::array<int, kMaxStrands>& v, int m, int k) {
  Idem y = 0;
  if (v[1] > k || k - v[1] > 1) return 0xffffffffu;
  if (k - v[1] == 1) y |= 1u;
  for (int i = 1; i < m; i++) {
    int d = v[i] - v[i + 1];
    if (d < 0 || d > 1) return 0xffffffffu;
    if (d == 1) y |= 1u << i;
  }
  if (m >= 1) {
    if (v[m] < 0 || v[m] > 1) return 0xffffffffu;
    if (v[m] == 1) y |= 1u << m;
  }
  return y;
}

std::optional<Pure> element_from_weights2(int m, Idem left,
                                          const std::array<int, kMaxStrands>& w2, Mask cmask) {
  // subtract C-contributions; remaining is |dv| + 2u per position
  std::array<int, kMaxStrands> r{};
  for (int i = 1; i <= m; i++) {
    r[i] = w2[i] - 2 * (has_bit(cmask, i) ? 1 : 0);
    if (r[i] < 0) return std::nullopt;
  }
  auto vx = weight_of_state(left, m);
  int k = popcount(left);
  // choose v^y: v^y_i = v^x_i (+-1 at odd positions); scan with DFS
  std::array<int, kMaxStrands> vy{};
  std::optional<Pure> found;
  auto emit = [&]() {
    Idem y = state_from_v(vy, m, k);
    if (y == 0xffffffffu) return;
    std::array<uint8_t, kMaxStrands> u{};
    for (int i = 1; i <= m; i++) {
      int du = r[i] - std::abs(vx[i] - vy[i]);
      if (du < 0 || du % 2) return;
      u[i] = (uint8_t)(du / 2);
    }
    auto p = make_pure(m, left, y, u, cmask);
    if (p) {
      assert(!found && "element_from_weights: ambiguous");
      found = p;
    }
  };
  // iterative DFS over sign choices at odd positions
  std::vector<int> odd;
  for (int i = 1; i <= m; i++)
    if (r[i] % 2) odd.push_back(i);
  size_t n = odd.size();
  for (uint32_t bits = 0; bits < (1u << n); bits++) {
    for (int i = 1; i <= m; i++) vy[i] = vx[i];
    for (size_t t = 0; t < n; t++) vy[odd[t]] += (bits >> t & 1) ? 1 : -1;
    emit();
  }
  return found;
}

void Elt::add(const Pure& p) {
  auto it = std::lower_bound(terms.begin(), terms.end(), p);
  if (it != terms.end() && *it == p)
    terms.erase(it);
  else
    terms.insert(it, p);
}

Elt& Elt::operator+=(const Elt& o) {
  for (const auto& p : o.terms) add(p);
  return *this;
}

Elt mul(const Elt& a, const Elt& b) {
  Elt out;
  for (const auto& p : a.terms)
    for (const auto& q : b.terms)
      if (auto r = mul(p, q)) out.add(*r);
  return out;
}

Elt differential(const Pure& a) {
  Elt out;
  Mask c = a.cmask;
  while (c) {
    int j = __builtin_ctz(c);
    c &= c - 1;
    auto u = a.u;
    u[j]++;
    if (auto p = make_pure(a.m, a.left, a.right, u, a.cmask & ~(1u << j))) out.add(*p);
  }
  return out;
}

Elt differential(const Elt& a) {
  Elt out;
  for (const auto& p : a.terms) out += differential(p);
  return out;
}

Elt shift_generator(const AlgebraSpec& spec, Gen kind, int i) {
  assert(i >= 1 && i <= spec.m);
  if (kind == Gen::C) assert(has_bit(spec.upwards, i));
  Elt out;
  for (Idem x : spec.idempotents()) {
    std::array<uint8_t, kMaxStrands> u{};
    switch (kind) {
      case Gen::R:
        if (has_bit(x, i - 1) && !has_bit(x, i))
          if (auto p = make_pure(spec.m, x, (x & ~(1u << (i - 1))) | (1u << i), u, 0)) out.add(*p);
        break;
      case Gen::L:
        if (has_bit(x, i) && !has_bit(x, i - 1))
          if (auto p = make_pure(spec.m, x, (x & ~(1u << i)) | (1u << (i - 1)), u, 0)) out.add(*p);
        break;
      case Gen::U:
        u[i] = 1;
        if (auto p = make_pure(spec.m, x, x, u, 0)) out.add(*p);
        break;
      case Gen::C:
        if (auto p = make_pure(spec.m, x, x, u, 1u << i)) out.add(*p);
        break;
    }
  }
  return out;
}

Elt unit(const AlgebraSpec& spec) {
  Elt out;
  for (Idem x : spec.idempotents()) out.add(*idempotent_elt(spec.m, x));
  return out;
}

Pure vrot(const Pure& a) {
  int m = a.m;
  Pure b;
  b.m = a.m;
  for (int p = 0; p <= m; p++) {
    if (has_bit(a.left, p)) b.left |= 1u << (m - p);
    if (has_bit(a.right, p)) b.right |= 1u << (m - p);
  }
  for (int i = 1; i <= m; i++) {
    b.u[m + 1 - i] = a.u[i];
    if (has_bit(a.cmask, i)) b.cmask |= 1u << (m + 1 - i);
  }
  return b;
}

Elt vrot(const Elt& a) {
  Elt out;
  for (const auto& p : a.terms) out.add(vrot(p));
  return out;
}

Pure opposite(const Pure& a) {
  Pure b = a;
  std::swap(b.left, b.right);
  return b;
}

Elt opposite(const Elt& a) {
  Elt out;
  for (const auto& p : a.terms) out.add(opposite(p));
  return out;
}

static void enumerate_u(const AlgebraSpec& spec, Idem x, Idem y, int budget2,
                        std::array<uint8_t, kMaxStrands>& u, int i, std::vector<Pure>& out) {
  if (i > spec.m) {
    auto base = make_pure(spec.m, x, y, u, 0);
    if (!base) return;
    // attach every C-subset that fits in the remaining weight budget
    std::vector<int> ups;
    for (int j = 1; j <= spec.m; j++)
      if (has_bit(spec.upwards, j)) ups.push_back(j);
    for (uint32_t bits = 0; bits < (1u << ups.size()); bits++) {
      Mask c = 0;
      for (size_t t = 0; t < ups.size(); t++)
        if (bits >> t & 1) c |= 1u << ups[t];
      if (2 * popcount(c) > budget2) continue;
      if (auto p = make_pure(spec.m, x, y, u, c)) out.push_back(*p);
    }
    return;
  }
  for (int e = 0; 2 * e <= budget2; e++) {
    u[i] = (uint8_t)e;
    enumerate_u(spec, x, y, budget2 - 2 * e, u, i + 1, out);
  }
  u[i] = 0;
}

std::vector<Pure> enumerate_pure(const AlgebraSpec& spec, int bound2) {
  std::vector<Pure> out;
  auto idems = spec.idempotents();
  for (Idem x : idems)
    for (Idem y : idems) {
      if (!are_close_enough(x, y)) continue;
      auto w = min_relative_weight2(x, y, spec.m);
      int base = 0;
      for (int i = 1; i <= spec.m; i++) base += w[i];
      if (base > bound2) continue;
      std::array<uint8_t, kMaxStrands> u{};
      enumerate_u(spec, x, y, bound2 - base, u, 1, out);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::string render_idem(Idem x, int m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int p = 0; p <= m; p++)
    if (has_bit(x, p)) { if (!first) os << ","; os << p; first = false; }
  os << "}";
  return os.str();
}

std::string render(const Pure& a) {
  std::ostringstream os;
  os << "I" << render_idem(a.left, a.m);
  // factor the idempotent walk into L/R shifts, consuming minimal weight
  std::vector<int> xs, ys;
  for (int p = 0; p <= a.m; p++) {
    if (has_bit(a.left, p)) xs.push_back(p);
    if (has_bit(a.right, p)) ys.push_back(p);
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t t = 0; t < xs.size(); t++) {
      if (xs[t] > ys[t]) {
        os << "*L" << xs[t];
        xs[t]--;
        moved = true;
        break;
      }
    }
    if (moved) continue;
    for (size_t t = xs.size(); t-- > 0;) {
      if (xs[t] < ys[t]) {
        os << "*R" << (xs[t] + 1);
        xs[t]++;
        moved = true;
        break;
      }
    }
  }
  for (int i = 1; i <= a.m; i++) {
    if (a.u[i] == 1) os << "*U" << i;
    else if (a.u[i] > 1) os << "*U" << i << "^" << (int)a.u[i];
  }
  for (int i = 1; i <= a.m; i++)
    if (has_bit(a.cmask, i)) os << "*C" << i;
  return os.str();
}

std::string render(const Elt& a) {
  if (a.zero()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < a.terms.size(); i++) {
    if (i) os << " + ";
    os << render(a.terms[i]);
  }
  return os.str();
}

}  // namespace hfk
