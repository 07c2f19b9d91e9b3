#include "hfk/diagram.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

#include "hfk/local.hpp"

namespace hfk {

int BridgeDiagram::num_crossings() const {
  int n = 0;
  for (const auto& e : events)
    if (e.kind == EvKind::Cross) n++;
  return n;
}

namespace {

// One step of the traversal through the diagram.  State: (slice, position,
// going down?).  Slices are numbered so that slice i sits above event i.
struct Walker {
  const BridgeDiagram* d;
  int slice, pos;
  bool down;

  bool operator==(const Walker& o) const {
    return slice == o.slice && pos == o.pos && down == o.down;
  }

  void step() {
    if (down) {
      const Event& e = d->events[slice];
      switch (e.kind) {
        case EvKind::Cross:
          slice++;
          if (pos == e.pos)
            pos = e.pos + 1;
          else if (pos == e.pos + 1)
            pos = e.pos;
          break;
        case EvKind::Max:
          slice++;
          if (pos >= e.pos) pos += 2;
          break;
        case EvKind::Min:
          if (pos == e.pos || pos == e.pos + 1) {
            pos = 2 * e.pos + 1 - pos;
            down = false;
          } else {
            slice++;
            if (pos > e.pos) pos -= 2;
          }
          break;
      }
    } else {
      const Event& e = d->events[slice - 1];
      switch (e.kind) {
        case EvKind::Cross:
          slice--;
          if (pos == e.pos)
            pos = e.pos + 1;
          else if (pos == e.pos + 1)
            pos = e.pos;
          break;
        case EvKind::Max:
          if (pos == e.pos || pos == e.pos + 1) {
            pos = 2 * e.pos + 1 - pos;
            down = true;
          } else {
            slice--;
            if (pos > e.pos + 1) pos -= 2;
          }
          break;
        case EvKind::Min:
          slice--;
          if (pos >= e.pos) pos += 2;
          break;
      }
    }
  }
};

}  // namespace

void BridgeDiagram::validate() {
  int K = (int)events.size();
  if (K < 2) throw ParseError("diagram needs at least a maximum and a minimum", 0, 0);
  strands.assign(K + 1, 0);
  for (int i = 0; i < K; i++) {
    int n = strands[i];
    const Event& e = events[i];
    switch (e.kind) {
      case EvKind::Max:
        if (e.pos < 1 || e.pos > n + 1)
          throw ParseError("maximum out of range", i, e.pos);
        strands[i + 1] = n + 2;
        break;
      case EvKind::Min:
        if (e.pos < 1 || e.pos + 1 > n)
          throw ParseError("minimum out of range", i, e.pos);
        strands[i + 1] = n - 2;
        break;
      case EvKind::Cross:
        if (e.pos < 1 || e.pos + 1 > n)
          throw ParseError("crossing out of range", i, e.pos);
        strands[i + 1] = n;
        break;
    }
  }
  if (strands[K] != 0) throw ParseError("strand count does not close", K, 0);
  if (events[0].kind != EvKind::Max || events[0].pos != 1)
    throw ParseError("first event must be the global maximum", 0, 0);
  if (events[K - 1].kind != EvKind::Min || events[K - 1].pos != 1)
    throw ParseError("last event must be the marked global minimum", K - 1, 0);
  int total = 0;
  for (int i = 1; i < K; i++) total += strands[i];

  // trace the knot: start going up out of the global minimum
  std::set<std::pair<int, int>> seen;
  Walker w{this, K - 1, 1, false};
  Walker start = w;
  std::vector<std::pair<Walker, bool>> visits;
  int steps = 0;
  upwards.assign(K + 1, 0);
  do {
    if (w.slice >= 1 && w.slice <= K - 1) {
      if (seen.count({w.slice, w.pos}))
        throw ParseError("diagram has more than one component", w.slice, w.pos);
      seen.insert({w.slice, w.pos});
      if (!w.down) upwards[w.slice] |= 1u << w.pos;
    }
    w.step();
    if (++steps > 4 * total + 8) break;
  } while (!(w == start));
  if ((int)seen.size() != total)
    throw ParseError("diagram has more than one component", 0, 0);
}

BridgeDiagram BridgeDiagram::mirror() const {
  BridgeDiagram out = *this;
  for (auto& e : out.events)
    if (e.kind == EvKind::Cross) e.sign = -e.sign;
  return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Lines {
  std::vector<std::string> rows;
  explicit Lines(const std::string& text) {
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row)) rows.push_back(row);
  }
};

}  // namespace

BraidWord parse_braid(const std::string& text) {
  // grammar: "braid <n> [i1,i2,...]" or just "<n> [i1,...]"
  std::string t = text;
  size_t p = t.find("braid");
  if (p != std::string::npos) t = t.substr(p + 5);
  std::istringstream is(t);
  BraidWord b;
  if (!(is >> b.n) || b.n < 1) throw ParseError("expected strand count", 1, 1);
  char ch;
  if (!(is >> ch) || ch != '[') throw ParseError("expected '['", 1, 1);
  while (true) {
    if (!(is >> ch)) throw ParseError("unterminated braid word", 1, 1);
    if (ch == ']') break;
    is.putback(ch);
    int v;
    if (!(is >> v)) throw ParseError("expected integer in braid word", 1, 1);
    if (v == 0 || std::abs(v) >= b.n)
      throw ParseError("braid letter out of range", 1, 1);
    b.word.push_back(v);
    if (is >> ch) {
      if (ch == ']') break;
      if (ch != ',') throw ParseError("expected ',' in braid word", 1, 1);
    } else {
      throw ParseError("unterminated braid word", 1, 1);
    }
  }
  return b;
}

BridgeDiagram parse_events(const std::string& text) {
  Lines lines(text);
  std::vector<Event> bottom_up;
  std::vector<char> max_letters;
  bool saw_header = false;
  for (int ln = 0; ln < (int)lines.rows.size(); ln++) {
    std::string row = lines.rows[ln];
    size_t hash = row.find('#');
    if (hash != std::string::npos) row = row.substr(0, hash);
    std::istringstream is(row);
    std::string tok;
    if (!(is >> tok)) continue;
    if (tok == "strands") {
      int v;
      if (!(is >> v) || v != 0) throw ParseError("expected 'strands 0'", ln + 1, 1);
      saw_header = true;
    } else if (tok == "max") {
      int c;
      std::string o;
      if (!(is >> c >> o) || (o != "L" && o != "R"))
        throw ParseError("expected 'max <c> <L|R>'", ln + 1, 1);
      bottom_up.push_back({EvKind::Max, c, 0});
      max_letters.push_back(o[0]);
    } else if (tok == "min") {
      int c;
      if (!(is >> c)) throw ParseError("expected 'min <c>'", ln + 1, 1);
      bottom_up.push_back({EvKind::Min, c, 0});
    } else if (tok == "cross") {
      std::string sg;
      int i;
      if (!(is >> sg >> i) || (sg != "+" && sg != "-"))
        throw ParseError("expected 'cross <+|-> <i>'", ln + 1, 1);
      bottom_up.push_back({EvKind::Cross, i, sg == "+" ? 1 : -1});
    } else {
      throw ParseError("unknown event '" + tok + "'", ln + 1, 1);
    }
  }
  if (!saw_header) throw ParseError("missing 'strands 0' header", 1, 1);
  BridgeDiagram d;
  d.events.assign(bottom_up.rbegin(), bottom_up.rend());
  d.validate();
  // check the cap orientation letters: 'R' means the left leg goes up
  int mi = (int)max_letters.size() - 1;
  for (int i = 0; i < (int)d.events.size() && mi >= 0; i++) {
    if (d.events[i].kind != EvKind::Max) continue;
    bool left_up = has_bit(d.upwards[i + 1], d.events[i].pos);
    char want = left_up ? 'R' : 'L';
    if (max_letters[mi] != want)
      throw ParseError("inconsistent cap orientation", i, d.events[i].pos);
    mi--;
  }
  return d;
}

BridgeDiagram braid_to_bridge(const BraidWord& b) {
  BridgeDiagram d;
  for (int i = 1; i <= b.n; i++) d.events.push_back({EvKind::Max, i, 0});
  for (int v : b.word) d.events.push_back({EvKind::Cross, std::abs(v), v > 0 ? 1 : -1});
  for (int i = b.n; i >= 1; i--) d.events.push_back({EvKind::Min, i, 0});
  d.validate();
  return d;
}

// ---------------------------------------------------------------------------
// regions and Kauffman states

namespace {

struct Regions {
  const BridgeDiagram& d;
  std::vector<int> parent;
  std::vector<int> offset;  // index of interval (slice, 0)
  int unbounded = -1;
  int forbidden = -1;  // the bounded region at the marked edge

  explicit Regions(const BridgeDiagram& dd) : d(dd) {
    int K = (int)d.events.size();
    offset.assign(K + 1, 0);
    int total = 0;
    for (int i = 0; i <= K; i++) {
      offset[i] = total;
      total += d.strands[i] + 1;
    }
    parent.assign(total, 0);
    std::iota(parent.begin(), parent.end(), 0);
    for (int i = 0; i < K; i++) {
      const Event& e = d.events[i];
      int n = d.strands[i];
      switch (e.kind) {
        case EvKind::Cross:
          for (int q = 0; q <= n; q++)
            if (q != e.pos) join(id(i, q), id(i + 1, q));
          break;
        case EvKind::Max:
          for (int q = 0; q < e.pos; q++) join(id(i, q), id(i + 1, q));
          for (int q = e.pos; q <= n; q++) join(id(i, q), id(i + 1, q + 2));
          join(id(i, e.pos - 1), id(i + 1, e.pos + 1));
          break;
        case EvKind::Min:
          for (int q = 0; q < e.pos; q++) join(id(i, q), id(i + 1, q));
          for (int q = e.pos + 2; q <= n; q++) join(id(i, q), id(i + 1, q - 2));
          join(id(i, e.pos - 1), id(i, e.pos + 1));
          break;
      }
    }
    // the two unbounded intervals of every slice lie in one region
    for (int i = 0; i <= K; i++) {
      join(id(0, 0), id(i, 0));
      join(id(0, 0), id(i, d.strands[i]));
    }
    unbounded = find(id(0, 0));
    forbidden = find(id(K - 1, 1));
  }

  int id(int slice, int q) const { return offset[slice] + q; }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<KauffmanState> kauffman_states(const BridgeDiagram& d) {
  Regions R(const_cast<BridgeDiagram&>(d));
  // collect crossings with their four quadrant regions
  struct Cr {
    int event;
    int regions[4];  // indexed by Quad: N, S, W, E
    bool positive;
    bool up_i, up_i1;
  };
  std::vector<Cr> crs;
  for (int i = 0; i < (int)d.events.size(); i++) {
    const Event& e = d.events[i];
    if (e.kind != EvKind::Cross) continue;
    Cr c;
    c.event = i;
    c.regions[QN] = R.find(R.id(i, e.pos));
    c.regions[QS] = R.find(R.id(i + 1, e.pos));
    c.regions[QW] = R.find(R.id(i, e.pos - 1));
    c.regions[QE] = R.find(R.id(i, e.pos + 1));
    c.positive = e.sign > 0;
    c.up_i = has_bit(d.upwards[i], e.pos);
    c.up_i1 = has_bit(d.upwards[i], e.pos + 1);
    crs.push_back(c);
  }
  std::vector<KauffmanState> out;
  std::vector<int> pick(crs.size());
  std::set<int> used;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == crs.size()) {
      KauffmanState s;
      s.quadrant = pick;
      for (size_t t = 0; t < crs.size(); t++) {
        s.maslov += crossing_maslov(crs[t].positive, crs[t].up_i, crs[t].up_i1,
                                    (Quad)pick[t]);
        s.alex2 += crossing_alex2(crs[t].positive, crs[t].up_i, crs[t].up_i1,
                                  (Quad)pick[t]);
      }
      out.push_back(s);
      return;
    }
    for (int q = 0; q < 4; q++) {
      int r = crs[i].regions[q];
      if (r == R.unbounded || r == R.forbidden || used.count(r)) continue;
      used.insert(r);
      pick[i] = q;
      rec(i + 1);
      used.erase(r);
    }
  };
  rec(0);
  return out;
}

bool Laurent::symmetric() const {
  for (auto& [e, v] : c) {
    auto it = c.find(-e);
    if (it == c.end() || it->second != v) return false;
  }
  return true;
}

long long Laurent::at_one() const {
  long long s = 0;
  for (auto& [e, v] : c) s += v;
  return s;
}

std::string Laurent::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    auto [e, v] = *it;
    if (!first) os << (v >= 0 ? " + " : " - ");
    else if (v < 0)
      os << "-";
    long long av = std::abs(v);
    first = false;
    if (av != 1 || e == 0) os << av;
    if (e != 0) {
      if (av != 1) os << "*";
      os << "t";
      if (e != 2) {
        os << "^";
        if (e % 2 == 0)
          os << e / 2;
        else
          os << "(" << e << "/2)";
      }
    }
  }
  return os.str();
}

Laurent alexander_from_states(const BridgeDiagram& d) {
  Laurent p;
  for (const auto& s : kauffman_states(d)) p.add(s.alex2, (s.maslov % 2 == 0) ? 1 : -1);
  if (p.at_one() < 0)
    for (auto& [e, v] : p.c) v = -v;
  return p;
}

// ---------------------------------------------------------------------------
// signature via the Goeritz form

namespace {

struct Rat {
  long long n = 0, d = 1;
  Rat() = default;
  Rat(long long v) : n(v), d(1) {}
  Rat(long long a, long long b) : n(a), d(b) { norm(); }
  void norm() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(std::abs(n), d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Rat operator-(const Rat& o) const { return Rat(n * o.d - o.n * d, d * o.d); }
  Rat operator*(const Rat& o) const { return Rat(n * o.n, d * o.d); }
  Rat operator/(const Rat& o) const { return Rat(n * o.d, d * o.n); }
  int sign() const { return n > 0 ? 1 : (n < 0 ? -1 : 0); }
};

// signature of a symmetric rational matrix by recursive diagonalization
int sym_signature(std::vector<std::vector<Rat>> A) {
  int n = (int)A.size(), sig = 0;
  for (int done = 0; done < n;) {
    // find a nonzero diagonal pivot
    int piv = -1;
    for (int i = done; i < n; i++)
      if (A[i][i].sign() != 0) {
        piv = i;
        break;
      }
    if (piv >= 0) {
      std::swap(A[piv], A[done]);
      for (int i = 0; i < n; i++) std::swap(A[i][piv], A[i][done]);
      sig += A[done][done].sign();
      for (int i = done + 1; i < n; i++) {
        if (A[i][done].sign() == 0) continue;
        Rat f = A[i][done] / A[done][done];
        for (int j = done; j < n; j++) A[i][j] = A[i][j] - f * A[done][j];
      }
      for (int i = done + 1; i < n; i++) A[done][i] = Rat(0);
      done++;
      continue;
    }
    // all-zero diagonal: look for an off-diagonal hyperbolic pair
    int a = -1, b = -1;
    for (int i = done; i < n && a < 0; i++)
      for (int j = i + 1; j < n && a < 0; j++)
        if (A[i][j].sign() != 0) {
          a = i;
          b = j;
        }
    if (a < 0) break;  // zero block
    // x_a := x_a + x_b makes the diagonal nonzero
    for (int j = 0; j < n; j++) A[a][j] = A[a][j] - (Rat(0) - A[b][j]);
    for (int i = 0; i < n; i++) A[i][a] = A[i][a] - (Rat(0) - A[i][b]);
  }
  return sig;
}

}  // namespace

int signature(const BridgeDiagram& d) {
  Regions R(const_cast<BridgeDiagram&>(d));
  int K = (int)d.events.size();
  // two-color the regions: adjacent across each strand segment
  std::map<int, int> color;
  std::vector<std::pair<int, int>> adj;
  for (int i = 1; i <= K - 1; i++)
    for (int p = 1; p <= d.strands[i]; p++)
      adj.push_back({R.find(R.id(i, p - 1)), R.find(R.id(i, p))});
  color[R.unbounded] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : adj) {
      if (color.count(a) && !color.count(b)) {
        color[b] = 1 - color[a];
        changed = true;
      } else if (color.count(b) && !color.count(a)) {
        color[a] = 1 - color[b];
        changed = true;
      }
    }
  }
  for (auto [a, b] : adj) assert(color.at(a) != color.at(b));

  // white regions (the checkerboard color of the unbounded region)
  std::map<int, int> windex;
  for (auto& [r, c] : color)
    if (c == 0 && !windex.count(r)) {
      int id = (int)windex.size();
      windex[r] = id;
    }
  int W = (int)windex.size();
  std::vector<std::vector<Rat>> G(W, std::vector<Rat>(W, Rat(0)));
  int mu = 0;
  for (int i = 0; i < K; i++) {
    const Event& e = d.events[i];
    if (e.kind != EvKind::Cross) continue;
    int rn = R.find(R.id(i, e.pos));
    int rs = R.find(R.id(i + 1, e.pos));
    int rw = R.find(R.id(i, e.pos - 1));
    int re = R.find(R.id(i, e.pos + 1));
    bool white_ns = color.at(rn) == 0;
    int a = white_ns ? rn : rw;
    int b = white_ns ? rs : re;
    // Goeritz sign: depends on which diagonal is white and the crossing sign
    int eta = (white_ns ? -1 : 1) * e.sign;
    bool parallel = has_bit(d.upwards[i], e.pos) == has_bit(d.upwards[i], e.pos + 1);
    // type II crossings correct the signature of the form
    bool type2 = white_ns != parallel;
    if (type2) mu += eta;
    if (a == b) continue;
    int ia = windex.at(a), ib = windex.at(b);
    G[ia][ib] = G[ia][ib] - Rat(eta);
    G[ib][ia] = G[ib][ia] - Rat(eta);
    G[ia][ia] = G[ia][ia] - (Rat(0) - Rat(eta));
    G[ib][ib] = G[ib][ib] - (Rat(0) - Rat(eta));
  }
  // discard the row/column of the unbounded region
  int drop = windex.at(R.unbounded);
  std::vector<std::vector<Rat>> G2;
  for (int i = 0; i < W; i++) {
    if (i == drop) continue;
    std::vector<Rat> row;
    for (int j = 0; j < W; j++)
      if (j != drop) row.push_back(G[i][j]);
    G2.push_back(row);
  }
  return sym_signature(G2) - mu;
}

// ---------------------------------------------------------------------------
// PD codes

PDCode parse_pd(const std::string& text) {
  PDCode pd;
  size_t i = 0;
  int line = 1, col = 1;
  auto skip = [&]() {
    while (i < text.size() && (isspace((unsigned char)text[i]) || text[i] == ',')) {
      if (text[i] == '\n') {
        line++;
        col = 1;
      } else
        col++;
      i++;
    }
  };
  skip();
  while (i < text.size()) {
    if (text[i] != 'X') throw ParseError("expected 'X(a,b,c,d)'", line, col);
    i++;
    if (i >= text.size() || (text[i] != '(' && text[i] != '['))
      throw ParseError("expected '(' after X", line, col);
    i++;
    std::array<int, 4> t{};
    for (int k = 0; k < 4; k++) {
      skip();
      int v = 0;
      bool any = false;
      while (i < text.size() && isdigit((unsigned char)text[i])) {
        v = v * 10 + (text[i] - '0');
        i++;
        any = true;
      }
      if (!any) throw ParseError("expected edge number", line, col);
      t[k] = v;
    }
    skip();
    if (i >= text.size() || (text[i] != ')' && text[i] != ']'))
      throw ParseError("expected ')'", line, col);
    i++;
    pd.crossings.push_back(t);
    skip();
  }
  if (pd.crossings.empty()) throw ParseError("empty PD code", 1, 1);
  // validity: each edge appears exactly twice, under-strand goes a -> c
  int n2 = 2 * (int)pd.crossings.size();
  std::map<int, int> count;
  for (auto& x : pd.crossings)
    for (int v : x) {
      if (v < 1 || v > n2) throw ParseError("edge number out of range", 1, 1);
      count[v]++;
    }
  for (auto& [e, c] : count)
    if (c != 2) throw ParseError("edge does not appear exactly twice", 1, 1);
  for (auto& x : pd.crossings)
    if (x[2] != (x[0] % n2) + 1)
      throw ParseError("PD code is not a single oriented component", 1, 1);
  return pd;
}

// Greedy Morse sweep: maintain a wall of pending half-edges hanging down;
// place a crossing when its two upper legs can attach (opening fresh arcs
// with maxima as needed) and close matched pairs with minima.  The legs of
// X(a,b,c,d) are listed counterclockwise, so in a drawing with two legs
// attached upward they read (down-left, down-right, up-right, up-left)
// starting from some rotation.
BridgeDiagram pd_to_bridge(const PDCode& pd) {
  int nc = (int)pd.crossings.size();
  int n2 = 2 * nc;
  std::vector<int> wall;
  std::vector<Event> events;
  std::vector<bool> placed(nc, false);

  auto pending_at = [&](int e) {
    for (size_t p = 0; p < wall.size(); p++)
      if (wall[p] == e) return (int)p;
    return -1;
  };
  auto close_pairs = [&]() {
    bool again = true;
    while (again) {
      again = false;
      for (size_t p = 0; p + 1 < wall.size(); p++)
        if (wall[p] == wall[p + 1]) {
          events.push_back({EvKind::Min, (int)p + 1, 0});
          wall.erase(wall.begin() + p, wall.begin() + p + 2);
          again = true;
          break;
        }
    }
  };
  auto place = [&](int ci, int r, int at) {
    // consume wall[at], wall[at+1] = (up-left, up-right) legs
    const auto& x = pd.crossings[ci];
    int ul = x[(r + 1) % 4], ur = x[r];
    assert(wall[at] == ul && wall[at + 1] == ur);
    (void)ul;
    (void)ur;
    // braid-positive when the over-strand runs up-left to down-right;
    // the over-strand occupies the even legs of (b, d) = (x1, x3)
    bool over_upper_left = ((r + 1) % 4 == 1) || ((r + 1) % 4 == 3);
    events.push_back({EvKind::Cross, at + 1, over_upper_left ? 1 : -1});
    wall[at] = x[(r + 2) % 4];      // down-left
    wall[at + 1] = x[(r + 3) % 4];  // down-right
    placed[ci] = true;
    close_pairs();
  };

  for (int done = 0; done < nc; done++) {
    int bc = -1, br = -1, bat = -1, bkind = -1;
    // both upper legs already adjacent on the wall
    for (int ci = 0; ci < nc && bc < 0; ci++) {
      if (placed[ci]) continue;
      const auto& x = pd.crossings[ci];
      for (int r = 0; r < 4 && bc < 0; r++) {
        int ul = x[(r + 1) % 4], ur = x[r];
        for (size_t p = 0; p + 1 < wall.size(); p++)
          if (wall[p] == ul && wall[p + 1] == ur) {
            bc = ci;
            br = r;
            bat = (int)p;
            bkind = 2;
            break;
          }
      }
    }
    // one pending leg: open the other with a maximum beside it
    for (int ci = 0; ci < nc && bc < 0; ci++) {
      if (placed[ci]) continue;
      const auto& x = pd.crossings[ci];
      for (int r = 0; r < 4 && bc < 0; r++) {
        int ul = x[(r + 1) % 4], ur = x[r];
        int pl = pending_at(ul), pr = pending_at(ur);
        if (pl >= 0 && pr < 0 && ul != ur) {
          bc = ci;
          br = r;
          bat = pl;
          bkind = 1;
        } else if (pr >= 0 && pl < 0 && ul != ur) {
          bc = ci;
          br = r;
          bat = pr;
          bkind = 0;
        }
      }
    }
    // no legs pending: open both
    if (bc < 0) {
      for (int ci = 0; ci < nc && bc < 0; ci++)
        if (!placed[ci]) {
          bc = ci;
          br = 0;
          bat = (int)wall.size();
          bkind = 3;
        }
    }
    if (bc < 0) throw ParseError("planarity failure in PD conversion", 0, 0);
    const auto& x = pd.crossings[bc];
    int ul = x[(br + 1) % 4], ur = x[br];
    if (bkind == 1) {
      // up-left pending at bat; open up-right just to its right
      events.push_back({EvKind::Max, bat + 2, 0});
      wall.insert(wall.begin() + bat + 1, {ur, ur});
      place(bc, br, bat);
    } else if (bkind == 0) {
      // up-right pending at bat; open up-left just to its left
      events.push_back({EvKind::Max, bat + 1, 0});
      wall.insert(wall.begin() + bat, {ul, ul});
      place(bc, br, bat + 1);
    } else if (bkind == 3) {
      events.push_back({EvKind::Max, bat + 1, 0});
      wall.insert(wall.begin() + bat, {ur, ur});
      events.push_back({EvKind::Max, bat + 1, 0});
      wall.insert(wall.begin() + bat, {ul, ul});
      // wall: [ul, ul, ur, ur]; consume the middle pair
      place(bc, br, bat + 1);
    } else {
      place(bc, br, bat);
    }
  }
  if (!wall.empty()) throw ParseError("planarity failure in PD conversion", 0, 0);
  BridgeDiagram d;
  d.events = events;
  d.validate();
  return d;
}

}  // namespace hfk
