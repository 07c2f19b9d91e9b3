#pragma once

// Knot diagrams in bridge position: ingestion from event scripts, braid
// words and PD codes, orientation tracing, Kauffman state enumeration, and
// the classical Alexander polynomial and signature computed independently
// of the homology pipeline.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfk/algebra.hpp"

namespace hfk {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& what, int l, int c)
      : std::runtime_error(what + " at line " + std::to_string(l) + ", column " +
                           std::to_string(c)),
        line(l),
        col(c) {}
};

enum class EvKind { Max, Min, Cross };

struct Event {
  EvKind kind;
  int pos = 1;   // leftmost strand of the pair involved
  int sign = 0;  // +1 / -1 for crossings
};

struct BridgeDiagram {
  // events listed top-down: the global maximum first, the marked global
  // minimum last
  std::vector<Event> events;
  // computed by validate(): strand count and orientation of each slice;
  // slice i lies above event i, slice events.size() is the empty bottom
  std::vector<int> strands;
  std::vector<Mask> upwards;

  int num_crossings() const;
  // checks counts and positions, traces the single component, and fills
  // the orientation data; throws ParseError on failure
  void validate();
  BridgeDiagram mirror() const;
};

struct BraidWord {
  int n = 1;
  std::vector<int> word;  // nonzero; |i| < n; sign = crossing sign
};

BraidWord parse_braid(const std::string& text);
BridgeDiagram parse_events(const std::string& text);
BridgeDiagram braid_to_bridge(const BraidWord& b);

struct PDCode {
  // X(a,b,c,d) tuples, KnotTheory edge numbering
  std::vector<std::array<int, 4>> crossings;
};

PDCode parse_pd(const std::string& text);
BridgeDiagram pd_to_bridge(const PDCode& pd);

// ---------------------------------------------------------------------------
// Kauffman states

struct KauffmanState {
  std::vector<int> quadrant;  // per crossing, values Quad (see local.hpp)
  int maslov = 0;
  int alex2 = 0;
};

std::vector<KauffmanState> kauffman_states(const BridgeDiagram& d);

// Laurent polynomial in t^(1/2): coefficient map keyed by doubled exponent
struct Laurent {
  std::map<int, long long> c;
  void add(int exp2, long long v) {
    c[exp2] += v;
    if (c[exp2] == 0) c.erase(exp2);
  }
  bool operator==(const Laurent&) const = default;
  bool symmetric() const;
  long long at_one() const;
  std::string str() const;  // rendered in t with half-integer exponents
};

// state sum sum (-1)^M t^A, normalized so that Delta(1) = 1
Laurent alexander_from_states(const BridgeDiagram& d);

int signature(const BridgeDiagram& d);

}  // namespace hfk
