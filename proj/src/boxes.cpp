#include "hfk/bimodules.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <sstream>

namespace hfk {

// ---------------------------------------------------------------------------
// default walker: collect inputs, evaluate delta at the end

namespace {

class CollectingWalker : public DAWalker {
 public:
  CollectingWalker(const DABimodule* M, int gen) : M_(M), gen_(gen) {}

  std::vector<std::unique_ptr<DAWalker>> feed(const Pure& a) const override {
    std::vector<std::unique_ptr<DAWalker>> out;
    int arity = M_->max_arity();
    if (arity > 0 && (int)inputs_.size() + 2 > arity) return out;
    auto w = std::make_unique<CollectingWalker>(M_, gen_);
    w->inputs_ = inputs_;
    w->inputs_.push_back(a);
    out.push_back(std::move(w));
    return out;
  }

  std::vector<DATerm> finish() const override {
    return M_->delta(gen_, std::span<const Pure>(inputs_));
  }

 private:
  const DABimodule* M_;
  int gen_;
  std::vector<Pure> inputs_;
};

}  // namespace

std::unique_ptr<DAWalker> DABimodule::walker(int gen) const {
  return std::make_unique<CollectingWalker>(this, gen);
}

// ---------------------------------------------------------------------------
// identity and morphism bimodules

namespace {

class MorphismDA : public DABimodule {
 public:
  MorphismDA(const AlgebraSpec& out, const AlgebraSpec& in,
             std::function<Elt(const Pure&)> phi, std::function<Idem(Idem)> idem_map)
      : phi_(std::move(phi)), idem_map_(std::move(idem_map)) {
    out_spec_ = out;
    in_spec_ = in;
    for (Idem x : in.idempotents()) gens_.push_back({idem_map_(x), x, 0, 0});
  }

  int max_arity() const override { return 2; }

  std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const override {
    std::vector<DATerm> out;
    if (inputs.size() != 1) return out;
    const Pure& a = inputs[0];
    if (a.left != gens_[gen].in_idem) return out;
    for (const auto& b : phi_(a).terms) {
      // locate target generator by input idempotent
      for (int j = 0; j < (int)gens_.size(); j++)
        if (gens_[j].in_idem == a.right && gens_[j].out_idem == b.right)
          out.push_back({b, j});
    }
    return out;
  }

 private:
  std::function<Elt(const Pure&)> phi_;
  std::function<Idem(Idem)> idem_map_;
};

}  // namespace

DAPtr identity_da(const AlgebraSpec& spec) {
  return std::make_shared<MorphismDA>(
      spec, spec, [](const Pure& a) { return Elt(a); }, [](Idem x) { return x; });
}

DAPtr morphism_da(const AlgebraSpec& out, const AlgebraSpec& in,
                  std::function<Elt(const Pure&)> phi) {
  auto idem_map = [phi](Idem x) -> Idem {
    // image of the idempotent under the ring map
    Pure p;
    p.left = p.right = x;
    p.m = 0;  // patched below by caller-side phi handling
    return x;
  };
  (void)idem_map;
  // derive the idempotent correspondence from phi on idempotents
  auto f = [phi, in](Idem x) -> Idem {
    auto e = idempotent_elt(in.m, x);
    Elt img = phi(*e);
    assert(img.terms.size() == 1 && img.terms[0].is_idempotent());
    return img.terms[0].left;
  };
  return std::make_shared<MorphismDA>(out, in, phi, f);
}

DAPtr vrot_bimodule(const AlgebraSpec& in) {
  AlgebraSpec out{in.m, in.k, 0};
  for (int i = 1; i <= in.m; i++)
    if (has_bit(in.upwards, i)) out.upwards |= 1u << (in.m + 1 - i);
  return morphism_da(out, in, [](const Pure& a) { return Elt(vrot(a)); });
}

// ---------------------------------------------------------------------------
// composite bimodule

namespace {

class CompositeDA : public DABimodule {
 public:
  CompositeDA(DAPtr outer, DAPtr inner) : M_(std::move(outer)), N_(std::move(inner)) {
    assert(M_->in_spec() == N_->out_spec());
    out_spec_ = M_->out_spec();
    in_spec_ = N_->in_spec();
    for (int i = 0; i < M_->num_gens(); i++)
      for (int j = 0; j < N_->num_gens(); j++)
        if (M_->gen(i).in_idem == N_->gen(j).out_idem) {
          pairs_.push_back({i, j});
          gens_.push_back({M_->gen(i).out_idem, N_->gen(j).in_idem,
                           M_->gen(i).maslov + N_->gen(j).maslov,
                           M_->gen(i).alex2 + N_->gen(j).alex2});
        }
  }

  int max_arity() const override {
    return 0;  // conservative: block structure is unbounded in general
  }

  int pair_index(int mg, int ng) const {
    for (int t = 0; t < (int)pairs_.size(); t++)
      if (pairs_[t] == std::pair<int, int>{mg, ng}) return t;
    return -1;
  }

  std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const override;
  std::unique_ptr<DAWalker> walker(int gen) const override;

  DAPtr M_, N_;
  std::vector<std::pair<int, int>> pairs_;
};

// State: the outer walker has consumed every inner output emitted so far;
// the inner operation in progress (if any) has consumed a suffix of the
// inputs.  Closing an op feeds its output to the outer walker immediately,
// so a bounded outer prunes long delta^1_1 chains of the inner bimodule.
class CompositeWalker : public DAWalker {
 public:
  const CompositeDA* C;
  int mgen;                            // for locating target pairs only
  int ngen;                            // current inner generator
  std::shared_ptr<const DAWalker> ow;  // outer walker state
  std::shared_ptr<const DAWalker> cur; // inner op in progress (may be null)

  // states with no op in progress reachable by closing cur and applying
  // inner delta^1_1 steps, each immediately pushed through the outer walker
  void closures(std::vector<std::unique_ptr<CompositeWalker>>& out) const {
    struct Item {
      int ngen;
      std::shared_ptr<const DAWalker> ow;
      int depth;
    };
    std::vector<Item> stack;
    auto advance = [&](const DAWalker& from, int depth,
                       std::shared_ptr<const DAWalker> outer) {
      for (const auto& t : from.finish()) {
        if (depth > 256) throw SearchBudgetExceeded();
        for (auto& nxt : outer->feed(t.coef))
          stack.push_back({t.dst, std::shared_ptr<const DAWalker>(std::move(nxt)), depth});
      }
    };
    if (cur)
      advance(*cur, 0, ow);
    else
      stack.push_back({ngen, ow, 0});
    while (!stack.empty()) {
      Item it = std::move(stack.back());
      stack.pop_back();
      auto w = std::make_unique<CompositeWalker>();
      w->C = C;
      w->mgen = mgen;
      w->ngen = it.ngen;
      w->ow = it.ow;
      out.push_back(std::move(w));
      // one further inner delta^1_1
      auto w1 = C->N_->walker(it.ngen);
      advance(*w1, it.depth + 1, it.ow);
    }
  }

  std::vector<std::unique_ptr<DAWalker>> feed(const Pure& a) const override {
    std::vector<std::unique_ptr<DAWalker>> out;
    auto emit = [&](int ng, std::shared_ptr<const DAWalker> outer,
                    std::unique_ptr<DAWalker> inner) {
      auto w = std::make_unique<CompositeWalker>();
      w->C = C;
      w->mgen = mgen;
      w->ngen = ng;
      w->ow = std::move(outer);
      w->cur = std::shared_ptr<const DAWalker>(std::move(inner));
      out.push_back(std::move(w));
    };
    // extend the op in progress
    if (cur)
      for (auto& nxt : cur->feed(a)) emit(ngen, ow, std::move(nxt));
    // close (possibly through delta^1_1 steps), then start a new op
    std::vector<std::unique_ptr<CompositeWalker>> closed;
    closures(closed);
    for (auto& st : closed) {
      auto w0 = C->N_->walker(st->ngen);
      for (auto& nxt : w0->feed(a)) emit(st->ngen, st->ow, std::move(nxt));
    }
    return out;
  }

  std::vector<DATerm> finish() const override {
    std::vector<DATerm> out;
    std::vector<std::unique_ptr<CompositeWalker>> closed;
    closures(closed);
    for (auto& st : closed)
      for (const auto& t : st->ow->finish()) {
        int pi = C->pair_index(t.dst, st->ngen);
        if (pi >= 0) out.push_back({t.coef, pi});
      }
    // F2-normalize
    std::sort(out.begin(), out.end(), [](const DATerm& a, const DATerm& b) {
      if (a.dst != b.dst) return a.dst < b.dst;
      return a.coef < b.coef;
    });
    std::vector<DATerm> norm;
    for (size_t i = 0; i < out.size();) {
      size_t j = i;
      while (j < out.size() && out[j].dst == out[i].dst && out[j].coef == out[i].coef) j++;
      if ((j - i) % 2) norm.push_back(out[i]);
      i = j;
    }
    return norm;
  }
};

std::vector<DATerm> CompositeDA::delta(int gen, std::span<const Pure> inputs) const {
  auto w = walker(gen);
  std::vector<std::unique_ptr<DAWalker>> frontier;
  frontier.push_back(std::move(w));
  for (const auto& a : inputs) {
    std::vector<std::unique_ptr<DAWalker>> next;
    for (auto& ww : frontier)
      for (auto& n : ww->feed(a)) next.push_back(std::move(n));
    frontier = std::move(next);
    if (frontier.empty()) return {};
  }
  std::vector<DATerm> out;
  for (auto& ww : frontier)
    for (const auto& t : ww->finish()) out.push_back(t);
  std::sort(out.begin(), out.end(), [](const DATerm& a, const DATerm& b) {
    if (a.dst != b.dst) return a.dst < b.dst;
    return a.coef < b.coef;
  });
  std::vector<DATerm> norm;
  for (size_t i = 0; i < out.size();) {
    size_t j = i;
    while (j < out.size() && out[j].dst == out[i].dst && out[j].coef == out[i].coef) j++;
    if ((j - i) % 2) norm.push_back(out[i]);
    i = j;
  }
  return norm;
}

std::unique_ptr<DAWalker> CompositeDA::walker(int gen) const {
  auto w = std::make_unique<CompositeWalker>();
  w->C = this;
  w->mgen = pairs_[gen].first;
  w->ngen = pairs_[gen].second;
  w->ow = std::shared_ptr<const DAWalker>(M_->walker(pairs_[gen].first));
  return w;
}

}  // namespace

DAPtr box_DA_DA(DAPtr M, DAPtr N) {
  return std::make_shared<CompositeDA>(std::move(M), std::move(N));
}

// ---------------------------------------------------------------------------
// box tensor products

TypeD box_DA_D(const DABimodule& M, const TypeD& X, const BoxOptions& opt) {
  assert(M.in_spec() == X.spec);
  TypeD out;
  out.spec = M.out_spec();
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < M.num_gens(); i++)
    for (int j = 0; j < X.size(); j++)
      if (M.gen(i).in_idem == X.gens[j].idem) {
        index[{i, j}] = out.size();
        out.add_gen({M.gen(i).out_idem, 0, M.gen(i).maslov + X.gens[j].maslov,
                     M.gen(i).alex2 + X.gens[j].alex2});
      }
  for (auto& [key, src] : index) {
    long budget = opt.budget_per_gen;
    // DFS over delta-sequences of X fed into M's walker
    std::function<void(const DAWalker&, int)> dfs = [&](const DAWalker& w, int xcur) {
      for (const auto& t : w.finish()) {
        auto it = index.find({t.dst, xcur});
        assert(it != index.end());
        out.add_arrow(src, t.coef, it->second);
      }
      for (const auto& ar : X.delta[xcur]) {
        auto succ = w.feed(ar.coef);
        for (auto& s : succ) {
          if (--budget < 0) throw SearchBudgetExceeded();
          dfs(*s, ar.dst);
        }
      }
    };
    auto w0 = M.walker(key.first);
    dfs(*w0, key.second);
  }
  return out;
}

TypeDD box_DA_DD(const DABimodule& M, const TypeDD& Y, const BoxOptions& opt) {
  assert(M.in_spec() == Y.spec1);
  TypeDD out;
  out.spec1 = M.out_spec();
  out.spec2 = Y.spec2;
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < M.num_gens(); i++)
    for (int j = 0; j < Y.size(); j++)
      if (M.gen(i).in_idem == Y.gens[j].idem) {
        index[{i, j}] = out.size();
        out.add_gen({M.gen(i).out_idem, Y.gens[j].idem2,
                     M.gen(i).maslov + Y.gens[j].maslov,
                     M.gen(i).alex2 + Y.gens[j].alex2});
      }
  // The passenger weight of any arrow of the product is bounded in terms of
  // the generator gradings, which prunes weight-pumping loops of Y.
  int mspread = 0, aspread = 0;
  if (!out.gens.empty()) {
    int mlo = INT32_MAX, mhi = INT32_MIN, alo = INT32_MAX, ahi = INT32_MIN;
    for (const auto& g : out.gens) {
      mlo = std::min(mlo, g.maslov);
      mhi = std::max(mhi, g.maslov);
      alo = std::min(alo, g.alex2);
      ahi = std::max(ahi, g.alex2);
    }
    mspread = mhi - mlo;
    aspread = ahi - alo;
  }
  int cap2 = aspread + 3 * mspread + 4 * (M.out_spec().m + Y.spec2.m) + 16;
  for (auto& [key, src] : index) {
    long budget = opt.budget_per_gen;
    std::function<void(const DAWalker&, int, const Pure&)> dfs = [&](const DAWalker& w,
                                                                     int ycur,
                                                                     const Pure& acc) {
      for (const auto& t : w.finish()) {
        auto it = index.find({t.dst, ycur});
        assert(it != index.end());
        out.add_arrow(src, PurePair{t.coef, acc}, it->second);
      }
      for (const auto& ar : Y.delta[ycur]) {
        auto prod = mul(acc, ar.coef.a2);
        if (!prod || prod->total_weight2() > cap2) continue;
        auto succ = w.feed(ar.coef.a1);
        for (auto& s : succ) {
          if (--budget < 0) throw SearchBudgetExceeded();
          dfs(*s, ar.dst, *prod);
        }
      }
    };
    auto w0 = M.walker(key.first);
    Pure acc = *idempotent_elt(Y.spec2.m, Y.gens[key.second].idem2);
    dfs(*w0, key.second, acc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DA structure relation, checked on bounded tuples

namespace {

struct TermAcc {
  std::vector<std::pair<Pure, int>> acc;
  void toggle(const Pure& c, int dst) {
    std::pair<Pure, int> key{c, dst};
    auto it = std::lower_bound(acc.begin(), acc.end(), key);
    if (it != acc.end() && *it == key)
      acc.erase(it);
    else
      acc.insert(it, key);
  }
  void toggle_all(const std::vector<DATerm>& ts) {
    for (const auto& t : ts) toggle(t.coef, t.dst);
  }
};

}  // namespace

CheckReport check_typeDA(const DABimodule& M, int weight_bound2, int len_bound) {
  CheckReport rep;
  const AlgebraSpec& B = M.in_spec();
  auto pures = enumerate_pure(B, weight_bound2);
  std::map<Idem, std::vector<Pure>> by_left;
  for (const auto& p : pures)
    if (!p.is_idempotent()) by_left[p.left].push_back(p);

  // strict unitality, and vanishing of higher actions on unit inputs; with
  // these verified, relations on tuples containing idempotents reduce to
  // relations on idempotent-free tuples, so the enumeration below includes
  // idempotent entries only in short tuples
  for (int g = 0; g < M.num_gens(); g++) {
    Pure unit_in = *idempotent_elt(B.m, M.gen(g).in_idem);
    auto ts = M.delta(g, std::span<const Pure>(&unit_in, 1));
    bool ok = ts.size() == 1 && ts[0].dst == g && ts[0].coef.is_idempotent() &&
              ts[0].coef.left == M.gen(g).out_idem;
    if (!ok) {
      rep.ok = false;
      rep.detail += "strict unitality fails at generator " + std::to_string(g) + "\n";
    }
    for (const auto& a : by_left[M.gen(g).in_idem]) {
      Pure ia = *idempotent_elt(B.m, a.left);
      Pure ib = *idempotent_elt(B.m, a.right);
      std::vector<Pure> t1 = {ia, a}, t2 = {a, ib};
      if (!M.delta(g, std::span<const Pure>(t1)).empty() ||
          !M.delta(g, std::span<const Pure>(t2)).empty()) {
        rep.ok = false;
        rep.detail += "unit input does not vanish in delta_3 at gen " + std::to_string(g) +
                      " with " + render(a) + "\n";
      }
    }
  }

  // memoized single-input actions (the composite terms hit them repeatedly)
  std::map<std::pair<int, Pure>, std::vector<DATerm>> memo1;
  auto delta1 = [&](int g, const Pure& a) -> const std::vector<DATerm>& {
    auto key = std::make_pair(g, a);
    auto it = memo1.find(key);
    if (it != memo1.end()) return it->second;
    return memo1.emplace(key, M.delta(g, std::span<const Pure>(&a, 1))).first->second;
  };

  for (int g = 0; g < M.num_gens(); g++) {
    std::vector<Pure> tuple;
    // prefix_terms[j] = delta(g, tuple[0..j)); maintained along the search
    std::vector<std::vector<DATerm>> prefix_terms(1);
    prefix_terms[0] = M.delta(g, {});
    std::function<void(Idem, int)> rec = [&](Idem cur, int wleft) {
      TermAcc acc;
      int n = (int)tuple.size();
      std::span<const Pure> tu(tuple);
      const auto& full = prefix_terms[n];
      // (1) differentiate outputs
      for (const auto& t : full)
        for (const auto& dc : differential(t.coef).terms) acc.toggle(dc, t.dst);
      // (2) differentiate one input
      for (int j = 0; j < n; j++) {
        auto dterms = differential(tuple[j]).terms;
        for (const auto& da : dterms) {
          auto saved = tuple[j];
          tuple[j] = da;
          acc.toggle_all(M.delta(g, tu));
          tuple[j] = saved;
        }
      }
      // (3) multiply adjacent inputs
      for (int j = 0; j + 1 < n; j++) {
        auto prod = mul(tuple[j], tuple[j + 1]);
        if (!prod) continue;
        std::vector<Pure> t2(tuple.begin(), tuple.end());
        t2.erase(t2.begin() + j);
        t2[j] = *prod;
        acc.toggle_all(M.delta(g, std::span<const Pure>(t2)));
      }
      // (4) composites through every split
      for (int j = 0; j <= n; j++) {
        std::span<const Pure> rest(tuple.data() + j, n - j);
        for (const auto& t1 : prefix_terms[j]) {
          const std::vector<DATerm>* second;
          std::vector<DATerm> tmp;
          if (n - j == 1) {
            second = &delta1(t1.dst, tuple[j]);
          } else {
            tmp = M.delta(t1.dst, rest);
            second = &tmp;
          }
          for (const auto& t2 : *second)
            if (auto prod = mul(t1.coef, t2.coef)) acc.toggle(*prod, t2.dst);
        }
      }
      if (!acc.acc.empty()) {
        rep.ok = false;
        std::ostringstream os;
        os << "DA relation fails at gen " << g << " with inputs (";
        for (const auto& a : tuple) os << render(a) << ", ";
        os << ")";
        for (auto& [c, d] : acc.acc) os << " [" << render(c) << " -> " << d << "]";
        rep.detail += os.str() + "\n";
      }
      if (n == len_bound) return;
      auto extend = [&](const Pure& a) {
        int w = a.total_weight2();
        if (w > wleft) return;
        tuple.push_back(a);
        prefix_terms.push_back(M.delta(g, std::span<const Pure>(tuple)));
        rec(a.right, wleft - w);
        prefix_terms.pop_back();
        tuple.pop_back();
      };
      // idempotent entries only matter in short tuples (see above)
      if (n < 2) extend(*idempotent_elt(B.m, cur));
      for (const auto& a : by_left[cur]) extend(a);
    };
    rec(M.gen(g).in_idem, weight_bound2);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// terminal A-modules

CheckReport check_typeA(const TypeA& M, int weight_bound2, int len_bound) {
  CheckReport rep;
  auto pures = enumerate_pure(M.spec, weight_bound2);
  std::map<Idem, std::vector<Pure>> by_left;
  for (const auto& p : pures) by_left[p.left].push_back(p);

  auto m2 = [&](int g, const Pure& a) { return M.act(g, a); };

  for (int g = 0; g < (int)M.gens.size(); g++) {
    std::vector<Pure> tuple;
    std::function<void(Idem, int)> rec = [&](Idem cur, int wleft) {
      int n = (int)tuple.size();
      if (n >= 1) {
        // A-infinity relation for m2-only modules:
        // m2(m2(..m2(x,a1)..), an) associativity against mu2 and d
        std::vector<int> acc;  // F2 multiset of generators (for n inputs collapsed)
        auto toggle = [&](int x) {
          auto it = std::find(acc.begin(), acc.end(), x);
          if (it != acc.end())
            acc.erase(it);
          else
            acc.push_back(x);
        };
        if (n == 2) {
          // m2(m2(x,a),b) + m2(x, a*b) + [m2 has no m1/m3 partners] = 0
          for (int mid : m2(g, tuple[0]))
            for (int dst : m2(mid, tuple[1])) toggle(dst);
          if (auto prod = mul(tuple[0], tuple[1]))
            for (int dst : m2(g, *prod)) toggle(dst);
          // d(a) terms: m2(x, da) + m2(x, a d(b))... these belong to n==1 checks
          if (!acc.empty()) {
            rep.ok = false;
            rep.detail += "A-module associativity fails\n";
          }
        }
        if (n == 1) {
          // m2(x, da) must vanish since m1 = 0
          for (const auto& da : differential(tuple[0]).terms)
            for (int dst : m2(g, da)) toggle(dst);
          if (!acc.empty()) {
            rep.ok = false;
            rep.detail += "A-module differential compatibility fails\n";
          }
        }
      }
      if (n == len_bound) return;
      for (const auto& a : by_left[cur]) {
        int w = a.total_weight2();
        if (w > wleft) continue;
        tuple.push_back(a);
        rec(a.right, wleft - w);
        tuple.pop_back();
      }
    };
    rec(M.gens[g].idem, weight_bound2);
  }
  return rep;
}

GradedComplex box_A_D_graded(const TypeA& M, const TypeD& X) {
  GradedComplex C;
  std::map<std::pair<int, int>, int> index;
  for (int t = 0; t < (int)M.gens.size(); t++)
    for (int x = 0; x < X.size(); x++)
      if (M.gens[t].idem == X.gens[x].idem) {
        index[{t, x}] = (int)C.gens.size();
        C.gens.push_back({0, 0, M.gens[t].maslov + X.gens[x].maslov,
                          M.gens[t].alex2 + X.gens[x].alex2});
      }
  std::map<std::pair<int, int>, int> mult;
  for (auto& [key, src] : index) {
    auto [t, x] = key;
    for (const auto& ar : X.delta[x])
      for (int t2 : M.act(t, ar.coef)) {
        auto it = index.find({t2, ar.dst});
        assert(it != index.end());
        mult[{src, it->second}] ^= 1;
      }
  }
  for (auto& [k, v] : mult)
    if (v) C.arrows.push_back(k);
  return C;
}

FUComplex box_A_D_filtered(const TypeA& M, const TypeD& X) {
  FUComplex C;
  std::map<std::pair<int, int>, int> index;
  for (int t = 0; t < (int)M.gens.size(); t++)
    for (int x = 0; x < X.size(); x++)
      if (M.gens[t].idem == X.gens[x].idem) {
        index[{t, x}] = (int)C.gens.size();
        C.gens.push_back({0, 0, M.gens[t].maslov + X.gens[x].maslov,
                          M.gens[t].alex2 + X.gens[x].alex2});
      }
  std::map<std::pair<int, int>, int> mult;
  for (auto& [key, src] : index) {
    auto [t, x] = key;
    for (const auto& ar : X.delta[x])
      for (int t2 : M.act(t, ar.coef)) {
        auto it = index.find({t2, ar.dst});
        assert(it != index.end());
        mult[{src, it->second}] ^= 1;
      }
  }
  for (auto& [k, v] : mult) {
    if (!v) continue;
    int da2 = C.gens[k.first].alex2 - C.gens[k.second].alex2;
    assert(da2 >= 0 && da2 % 2 == 0);
    C.arrows.push_back({k.first, k.second, da2 / 2});
  }
  return C;
}

}  // namespace hfk
