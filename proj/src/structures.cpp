#include "hfk/structures.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>
#include <type_traits>

namespace hfk {

std::string coef_render(const Pure& x) { return render(x); }
std::string coef_render(const PurePair& x) {
  return render(x.a1) + " | " + render(x.a2);
}

// ---------------------------------------------------------------------------
// structure relation

template <class S>
static CheckReport check_relation(const S& X) {
  CheckReport rep;
  using C = std::remove_cvref_t<decltype(X.delta[0][0].coef)>;
  for (int x = 0; x < X.size(); x++) {
    // F2-accumulate (coef, dst) pairs
    std::vector<std::pair<C, int>> acc;
    auto toggle = [&](const C& c, int dst) {
      std::pair<C, int> key{c, dst};
      auto it = std::lower_bound(acc.begin(), acc.end(), key);
      if (it != acc.end() && *it == key)
        acc.erase(it);
      else
        acc.insert(it, key);
    };
    for (const auto& ar : X.delta[x]) {
      for (const auto& dc : coef_diff(ar.coef)) toggle(dc, ar.dst);
      for (const auto& ar2 : X.delta[ar.dst])
        if (auto prod = coef_mul(ar.coef, ar2.coef)) toggle(*prod, ar2.dst);
    }
    if (!acc.empty()) {
      rep.ok = false;
      std::ostringstream os;
      os << "relation fails at generator " << x << ":";
      for (auto& [c, d] : acc) os << " [" << coef_render(c) << " -> " << d << "]";
      rep.detail += os.str() + "\n";
    }
  }
  return rep;
}

CheckReport check_typeD(const TypeD& X) { return check_relation(X); }
CheckReport check_typeDD(const TypeDD& X) { return check_relation(X); }

CheckReport check_gradings_D(const TypeD& X) {
  CheckReport rep;
  for (int x = 0; x < X.size(); x++) {
    for (const auto& ar : X.delta[x]) {
      const Pure& a = ar.coef;
      const DGen& gx = X.gens[x];
      const DGen& gy = X.gens[ar.dst];
      bool ok = a.left == gx.idem && a.right == gy.idem;
      ok = ok && gx.maslov - 1 == a.maslov(X.spec.upwards) + gy.maslov;
      ok = ok && gx.alex2 == a.alexander2(X.spec.upwards) + gy.alex2;
      if (!ok) {
        rep.ok = false;
        std::ostringstream os;
        os << "grading/idempotent fails on arrow " << x << " -> " << ar.dst << " ["
           << render(a) << "]\n";
        rep.detail += os.str();
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// cancellation

static void copy_specs(TypeD& out, const TypeD& in) { out.spec = in.spec; }
static void copy_specs(TypeDD& out, const TypeDD& in) {
  out.spec1 = in.spec1;
  out.spec2 = in.spec2;
}

template <class S>
static S cancel_impl(const S& X, int src, int dst) {
  // locate the unit arrow
  bool found = false;
  for (const auto& ar : X.delta[src])
    if (ar.dst == dst && coef_is_unit(ar.coef)) found = true;
  assert(found && "cancel: no unit arrow");
  (void)found;

  S out;
  copy_specs(out, X);
  std::vector<int> remap(X.size(), -1);
  for (int i = 0; i < X.size(); i++) {
    if (i == src || i == dst) continue;
    remap[i] = out.size();
    out.add_gen(X.gens[i]);
  }
  for (int p = 0; p < X.size(); p++) {
    if (p == src || p == dst) continue;
    // surviving arrows
    for (const auto& ar : X.delta[p])
      if (ar.dst != src && ar.dst != dst) out.add_arrow(remap[p], ar.coef, remap[ar.dst]);
    // zig-zag corrections: (p -> b (x) dst) * (src -> a (x) q) gives b*a into q
    for (const auto& into : X.delta[p]) {
      if (into.dst != dst) continue;
      for (const auto& outof : X.delta[src]) {
        if (outof.dst == src || outof.dst == dst) continue;
        if (auto c = coef_mul(into.coef, outof.coef))
          out.add_arrow(remap[p], *c, remap[outof.dst]);
      }
    }
  }
  return out;
}

TypeD cancel(const TypeD& X, int src, int dst) { return cancel_impl(X, src, dst); }
TypeDD cancel(const TypeDD& X, int src, int dst) { return cancel_impl(X, src, dst); }

template <class S>
static S reduce_impl(S X) {
  while (true) {
    int src = -1, dst = -1;
    for (int x = 0; x < X.size() && src < 0; x++)
      for (const auto& ar : X.delta[x])
        if (coef_is_unit(ar.coef)) {
          src = x;
          dst = ar.dst;
          break;
        }
    if (src < 0) return X;
    X = cancel_impl(X, src, dst);
  }
}

TypeD reduce(TypeD X) { return reduce_impl(std::move(X)); }
TypeDD reduce(TypeDD X) { return reduce_impl(std::move(X)); }

// ---------------------------------------------------------------------------
// isomorphism of reduced structures

namespace {

template <class S>
struct IsoSearch {
  const S& X;
  const S& Y;
  bool use_gr;
  std::vector<int> map_xy, map_yx;

  IsoSearch(const S& x, const S& y, bool g) : X(x), Y(y), use_gr(g) {}

  bool gen_compatible(int x, int y) const {
    const DGen& a = X.gens[x];
    const DGen& b = Y.gens[y];
    if (a.idem != b.idem || a.idem2 != b.idem2) return false;
    if (use_gr && (a.maslov != b.maslov || a.alex2 != b.alex2)) return false;
    return true;
  }

  bool arrows_consistent(int x) const {
    int y = map_xy[x];
    for (const auto& ar : X.delta[x]) {
      if (map_xy[ar.dst] < 0) continue;
      bool found = false;
      for (const auto& br : Y.delta[y])
        if (br.dst == map_xy[ar.dst] && br.coef == ar.coef) found = true;
      if (!found) return false;
    }
    for (const auto& br : Y.delta[y]) {
      if (map_yx[br.dst] < 0) continue;
      bool found = false;
      for (const auto& ar : X.delta[x])
        if (ar.dst == map_yx[br.dst] && ar.coef == br.coef) found = true;
      if (!found) return false;
    }
    // arrows into x from already-mapped sources
    for (int p = 0; p < X.size(); p++) {
      if (map_xy[p] < 0 || p == x) continue;
      for (const auto& ar : X.delta[p]) {
        if (ar.dst != x) continue;
        bool found = false;
        for (const auto& br : Y.delta[map_xy[p]])
          if (br.dst == y && br.coef == ar.coef) found = true;
        if (!found) return false;
      }
      for (const auto& br : Y.delta[map_xy[p]]) {
        if (br.dst != y) continue;
        bool found = false;
        for (const auto& ar : X.delta[p])
          if (ar.dst == x && ar.coef == br.coef) found = true;
        if (!found) return false;
      }
    }
    return true;
  }

  bool run() {
    if (X.size() != Y.size()) return false;
    map_xy.assign(X.size(), -1);
    map_yx.assign(Y.size(), -1);
    return extend(0);
  }

  bool extend(int x) {
    if (x == X.size()) return true;
    for (int y = 0; y < Y.size(); y++) {
      if (map_yx[y] >= 0 || !gen_compatible(x, y)) continue;
      map_xy[x] = y;
      map_yx[y] = x;
      if (arrows_consistent(x) && extend(x + 1)) return true;
      map_xy[x] = -1;
      map_yx[y] = -1;
    }
    return false;
  }
};

}  // namespace

bool equal_reduced(const TypeD& X, const TypeD& Y, bool check_gr) {
  if (!(X.spec == Y.spec)) return false;
  return IsoSearch<TypeD>(X, Y, check_gr).run();
}

bool equal_reduced(const TypeDD& X, const TypeDD& Y, bool check_gr) {
  if (!(X.spec1 == Y.spec1) || !(X.spec2 == Y.spec2)) return false;
  return IsoSearch<TypeDD>(X, Y, check_gr).run();
}

// ---------------------------------------------------------------------------
// isomorphism up to change of basis

namespace {

// pure elements with prescribed idempotents and bigrading
std::vector<Pure> coef_candidates(const AlgebraSpec& spec, Idem l, Idem r, int maslov,
                                  int alex2) {
  // gradings bound the weights: sum_S w2 = #C - maslov <= |S| - maslov,
  // sum_{S^c} w2 = alex2 + sum_S w2
  int s_bound = std::max(0, popcount(spec.upwards) - maslov);
  int bound = std::max(0, alex2 + s_bound) + s_bound;
  std::vector<Pure> out;
  for (const auto& p : enumerate_pure(spec, bound)) {
    if (p.left != l || p.right != r) continue;
    if (p.maslov(spec.upwards) != maslov || p.alexander2(spec.upwards) != alex2) continue;
    out.push_back(p);
  }
  return out;
}

struct DCoefTraits {
  using C = Pure;
  static std::vector<C> candidates(const TypeD& X, const DGen& a, const DGen& b) {
    return coef_candidates(X.spec, a.idem, b.idem, a.maslov - b.maslov, a.alex2 - b.alex2);
  }
};

struct DDCoefTraits {
  using C = PurePair;
  static std::vector<C> candidates(const TypeDD& X, const DGen& a, const DGen& b) {
    std::vector<PurePair> out;
    int dm = a.maslov - b.maslov, da = a.alex2 - b.alex2;
    // joint weight bound from the combined gradings
    int sb = std::max(0, popcount(X.spec1.upwards) + popcount(X.spec2.upwards) - dm);
    int bound = std::max(0, da + sb) + sb;
    for (const auto& c1 : enumerate_pure(X.spec1, bound)) {
      if (c1.left != a.idem || c1.right != b.idem) continue;
      int m2 = dm - c1.maslov(X.spec1.upwards);
      int a2 = da - c1.alexander2(X.spec1.upwards);
      for (const auto& c2 : coef_candidates(X.spec2, a.idem2, b.idem2, m2, a2))
        out.push_back({c1, c2});
    }
    return out;
  }
};

template <class S, class Traits>
bool iso_impl(const S& X, const S& Y) {
  using C = typename Traits::C;
  if (X.size() != Y.size()) return false;
  if (equal_reduced(X, Y)) return true;
  int n = X.size();
  // unknowns: (x, y, c)
  struct Unknown {
    int x, y;
    C c;
    bool diag;
  };
  std::vector<Unknown> unk;
  for (int x = 0; x < n; x++)
    for (int y = 0; y < n; y++)
      for (const auto& c : Traits::candidates(X, X.gens[x], Y.gens[y]))
        unk.push_back({x, y, c, coef_is_unit(c)});
  if (unk.empty()) return false;
  if (unk.size() > 20000) return false;  // out of scope for this search

  // terms of the intertwining relation, indexed
  std::map<std::tuple<int, int, C>, int> term_index;
  auto tindex = [&](int x, int y, const C& c) {
    auto key = std::make_tuple(x, y, c);
    auto it = term_index.find(key);
    if (it != term_index.end()) return it->second;
    int id = (int)term_index.size();
    term_index.emplace(key, id);
    return id;
  };
  std::vector<std::vector<int>> cols(unk.size());
  for (size_t u = 0; u < unk.size(); u++) {
    // differential of the coefficient
    for (const auto& dc : coef_diff(unk[u].c)) cols[u].push_back(tindex(unk[u].x, unk[u].y, dc));
    // phi then delta_Y
    for (const auto& ar : Y.delta[unk[u].y])
      if (auto p = coef_mul(unk[u].c, ar.coef)) cols[u].push_back(tindex(unk[u].x, ar.dst, *p));
    // delta_X then phi: arrows into x
    for (int s = 0; s < n; s++)
      for (const auto& ar : X.delta[s])
        if (ar.dst == unk[u].x)
          if (auto p = coef_mul(ar.coef, unk[u].c)) cols[u].push_back(tindex(s, unk[u].y, *p));
    // F2-normalize repeated terms
    std::sort(cols[u].begin(), cols[u].end());
    std::vector<int> norm;
    for (size_t i = 0; i < cols[u].size();) {
      size_t j = i;
      while (j < cols[u].size() && cols[u][j] == cols[u][i]) j++;
      if ((j - i) % 2) norm.push_back(cols[u][i]);
      i = j;
    }
    cols[u] = norm;
  }
  int nterms = (int)term_index.size();
  int nw = (nterms + 63) / 64, uw = ((int)unk.size() + 63) / 64;
  std::vector<std::vector<uint64_t>> rows(unk.size(), std::vector<uint64_t>(nw + uw, 0));
  for (size_t u = 0; u < unk.size(); u++) {
    for (int t : cols[u]) rows[u][t / 64] ^= 1ull << (t % 64);
    rows[u][nw + u / 64] ^= 1ull << (u % 64);
  }
  // eliminate on the term part; rows with zero term part span the chain maps
  int rank = 0;
  for (int c = 0; c < nterms && rank < (int)rows.size(); c++) {
    int piv = -1;
    for (int r = rank; r < (int)rows.size(); r++)
      if (rows[r][c / 64] >> (c % 64) & 1) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < (int)rows.size(); r++) {
      if (r == rank) continue;
      if (rows[r][c / 64] >> (c % 64) & 1)
        for (int w = 0; w < nw + uw; w++) rows[r][w] ^= rows[rank][w];
    }
    rank++;
  }
  std::vector<std::vector<uint64_t>> null_basis;
  for (int r = rank; r < (int)rows.size(); r++) {
    bool zero = true;
    for (int w = 0; w < nw && zero; w++) zero = rows[r][w] == 0;
    if (zero) null_basis.push_back(std::vector<uint64_t>(rows[r].begin() + nw, rows[r].end()));
  }
  if (null_basis.empty()) return false;

  // an element is invertible iff its idempotent-coefficient part is an
  // invertible F2 matrix (the rest is weight-positive, hence nilpotent)
  auto invertible = [&](const std::vector<uint64_t>& lambda) {
    std::vector<std::vector<uint64_t>> P(n, std::vector<uint64_t>((n + 63) / 64, 0));
    for (size_t u = 0; u < unk.size(); u++) {
      if (!(lambda[u / 64] >> (u % 64) & 1) || !unk[u].diag) continue;
      P[unk[u].x][unk[u].y / 64] ^= 1ull << (unk[u].y % 64);
    }
    return f2_rank(P, n) == n;
  };
  for (const auto& v : null_basis)
    if (invertible(v)) return true;
  // random combinations, deterministic seed
  uint64_t state = 0x9e3779b97f4a7c15ull;
  auto rnd = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int trial = 0; trial < 600; trial++) {
    std::vector<uint64_t> lambda(uw, 0);
    for (const auto& v : null_basis)
      if (rnd() & 1)
        for (int w = 0; w < uw; w++) lambda[w] ^= v[w];
    if (invertible(lambda)) return true;
  }
  return false;
}

}  // namespace

bool iso_reduced(const TypeD& X, const TypeD& Y) {
  if (!(X.spec == Y.spec)) return false;
  return iso_impl<TypeD, DCoefTraits>(X, Y);
}

bool iso_reduced(const TypeDD& X, const TypeDD& Y) {
  if (!(X.spec1 == Y.spec1) || !(X.spec2 == Y.spec2)) return false;
  return iso_impl<TypeDD, DDCoefTraits>(X, Y);
}

template <class S, class C>
static S change_basis_impl(const S& X, int g, const C& c, int h) {
  S out = X;
  for (int x = 0; x < X.size(); x++) out.delta[x].clear();
  for (int x = 0; x < X.size(); x++) {
    // delta(x) plus, when x = g, c * delta(h) and the differential of c
    std::vector<std::pair<C, int>> terms;
    for (const auto& ar : X.delta[x]) terms.push_back({ar.coef, ar.dst});
    if (x == g) {
      for (const auto& ar : X.delta[h])
        if (auto p = coef_mul(c, ar.coef)) terms.push_back({*p, ar.dst});
      for (const auto& dc : coef_diff(c)) terms.push_back({dc, h});
    }
    // post-compose: every term into g spawns one into h
    std::vector<std::pair<C, int>> extra;
    for (const auto& [a, dst] : terms)
      if (dst == g)
        if (auto p = coef_mul(a, c)) extra.push_back({*p, h});
    for (const auto& [a, dst] : terms) out.add_arrow(x, a, dst);
    for (const auto& [a, dst] : extra) out.add_arrow(x, a, dst);
  }
  return out;
}

TypeD change_basis(const TypeD& X, int g, const Pure& c, int h) {
  return change_basis_impl(X, g, c, h);
}
TypeDD change_basis(const TypeDD& X, int g, const PurePair& c, int h) {
  return change_basis_impl(X, g, c, h);
}

// ---------------------------------------------------------------------------
// serialization

template <class S>
static std::string serialize_impl(const S& X, const std::string& head) {
  std::ostringstream os;
  os << head << " gens=" << X.size() << "\n";
  for (int i = 0; i < X.size(); i++) {
    const DGen& g = X.gens[i];
    os << "gen " << i << " idem=" << render_idem(g.idem, 30);
    if (g.idem2) os << "|" << render_idem(g.idem2, 30);
    os << " maslov=" << g.maslov << " alex2=" << g.alex2 << "\n";
  }
  for (int i = 0; i < X.size(); i++)
    for (const auto& ar : X.delta[i])
      os << "arrow " << i << " -> " << ar.dst << " : " << coef_render(ar.coef) << "\n";
  return os.str();
}

std::string serialize(const TypeD& X) {
  return serialize_impl(X, "typeD " + X.spec.str());
}
std::string serialize(const TypeDD& X) {
  return serialize_impl(X, "typeDD " + X.spec1.str() + " " + X.spec2.str());
}

// ---------------------------------------------------------------------------
// homology

int BigradedModule::total() const {
  int t = 0;
  for (auto& [k, v] : dims) t += v;
  return t;
}

CheckReport GradedComplex::check() const {
  CheckReport rep;
  std::set<std::pair<int, int>> arr(arrows.begin(), arrows.end());
  if (arr.size() != arrows.size()) {
    rep.ok = false;
    rep.detail += "duplicate arrows\n";
  }
  for (auto [s, d] : arrows) {
    if (gens[s].maslov != gens[d].maslov + 1 || gens[s].alex2 != gens[d].alex2) {
      rep.ok = false;
      rep.detail += "graded arrow violation\n";
    }
  }
  std::map<std::pair<int, int>, int> sq;
  for (auto [s, d] : arrows)
    for (auto [s2, d2] : arrows)
      if (d == s2) sq[{s, d2}] ^= 1;
  for (auto& [k, v] : sq)
    if (v) {
      rep.ok = false;
      rep.detail += "d^2 != 0\n";
      break;
    }
  return rep;
}

int f2_rank(std::vector<std::vector<uint64_t>>& rows, int ncols) {
  int rank = 0;
  for (int c = 0; c < ncols; c++) {
    int piv = -1;
    for (int r = rank; r < (int)rows.size(); r++)
      if (rows[r][c / 64] >> (c % 64) & 1) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < (int)rows.size(); r++) {
      if (r == rank) continue;
      if (rows[r][c / 64] >> (c % 64) & 1)
        for (size_t w = 0; w < rows[r].size(); w++) rows[r][w] ^= rows[rank][w];
    }
    rank++;
  }
  return rank;
}

BigradedModule homology_F2(const GradedComplex& C) {
  // group generators by (maslov, alex2); d maps (m, a) -> (m-1, a)
  std::map<std::pair<int, int>, std::vector<int>> blocks;
  for (int i = 0; i < (int)C.gens.size(); i++)
    blocks[{C.gens[i].maslov, C.gens[i].alex2}].push_back(i);
  std::map<int, int> index_in_block;
  for (auto& [k, v] : blocks)
    for (int i = 0; i < (int)v.size(); i++) index_in_block[v[i]] = i;

  std::map<std::pair<int, int>, int> rank_d;
  for (auto& [key, srcs] : blocks) {
    auto dstkey = std::make_pair(key.first - 1, key.second);
    auto it = blocks.find(dstkey);
    int ncols = it == blocks.end() ? 0 : (int)it->second.size();
    if (ncols == 0) {
      rank_d[key] = 0;
      continue;
    }
    std::vector<std::vector<uint64_t>> rows(srcs.size(),
                                            std::vector<uint64_t>((ncols + 63) / 64, 0));
    std::map<int, int> row_of;
    for (int i = 0; i < (int)srcs.size(); i++) row_of[srcs[i]] = i;
    for (auto [s, d] : C.arrows) {
      auto k2 = std::make_pair(C.gens[s].maslov, C.gens[s].alex2);
      if (k2 != key) continue;
      int r = row_of[s], c = index_in_block[d];
      rows[r][c / 64] ^= 1ull << (c % 64);
    }
    rank_d[key] = f2_rank(rows, ncols);
  }
  BigradedModule H;
  for (auto& [key, v] : blocks) {
    int dim = (int)v.size() - rank_d[key];
    auto up = std::make_pair(key.first + 1, key.second);
    if (rank_d.count(up)) dim -= rank_d[up];
    assert(dim >= 0);
    if (dim > 0) H.dims[key] = dim;
  }
  return H;
}

CheckReport FUComplex::check() const {
  CheckReport rep;
  for (const auto& a : arrows) {
    if (a.upow < 0) {
      rep.ok = false;
      rep.detail += "negative U power\n";
    }
    // an arrow src -> U^j dst drops the Alexander grading by j and the
    // Maslov grading by one
    if (gens[a.src].maslov != gens[a.dst].maslov + 1 ||
        gens[a.src].alex2 != gens[a.dst].alex2 + 2 * a.upow) {
      rep.ok = false;
      rep.detail += "FU arrow grading violation\n";
    }
  }
  return rep;
}

FUModule homology_FU(FUComplex C) {
  // Cancellation with monomial pivots: repeatedly cancel the arrow with the
  // smallest U power; corrections stay non-negative by pivot minimality.
  int n = (int)C.gens.size();
  std::vector<bool> dead(n, false);
  std::map<std::pair<int, int>, std::set<int>> arr;
  for (const auto& a : C.arrows) {
    auto& s = arr[{a.src, a.dst}];
    if (s.count(a.upow))
      s.erase(a.upow);
    else
      s.insert(a.upow);
  }
  FUModule out;
  while (true) {
    int bs = -1, bd = -1, bp = INT32_MAX;
    for (auto& [key, pows] : arr) {
      if (pows.empty()) continue;
      int p = *pows.begin();
      if (p < bp) {
        bp = p;
        bs = key.first;
        bd = key.second;
      }
    }
    if (bs < 0) break;
    if (bp > 0) out.torsion.push_back({C.gens[bd].maslov, C.gens[bd].alex2, bp});
    std::vector<std::tuple<int, int, int>> into_bd, outof_bs;
    for (auto& [key, pows] : arr) {
      if (key.second == bd && key.first != bs)
        for (int p : pows) into_bd.push_back({key.first, key.second, p});
      if (key.first == bs && key.second != bd)
        for (int p : pows) outof_bs.push_back({key.first, key.second, p});
    }
    for (auto& [s, d, p] : into_bd)
      for (auto& [s2, d2, q] : outof_bs) {
        int np = p - bp + q;
        assert(np >= 0);
        auto& set2 = arr[{s, d2}];
        if (set2.count(np))
          set2.erase(np);
        else
          set2.insert(np);
      }
    dead[bs] = dead[bd] = true;
    for (auto it = arr.begin(); it != arr.end();) {
      if (it->first.first == bs || it->first.second == bs || it->first.first == bd ||
          it->first.second == bd)
        it = arr.erase(it);
      else
        ++it;
    }
  }
  for (int i = 0; i < n; i++)
    if (!dead[i]) out.towers.push_back({C.gens[i].maslov, C.gens[i].alex2});
  std::sort(out.towers.begin(), out.towers.end());
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

}  // namespace hfk
