#pragma once

// Type DA bimodules and box tensor products.
//
// A DA bimodule consumes algebra elements of in_spec on the right and emits
// elements of out_spec on the left.  Structure maps are exposed two ways:
// delta() evaluates one operation on a full input tuple; walker() feeds
// inputs incrementally so that unbounded bimodules (the minimum) can prune
// while a tensor product is being enumerated.

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "hfk/algebra.hpp"
#include "hfk/structures.hpp"

namespace hfk {

struct SearchBudgetExceeded : std::runtime_error {
  SearchBudgetExceeded() : std::runtime_error("tensor product search budget exceeded") {}
};

struct DAGen {
  Idem out_idem = 0, in_idem = 0;
  int maslov = 0;
  int alex2 = 0;
};

struct DATerm {
  Pure coef;  // element of out_spec
  int dst;
};

class DAWalker {
 public:
  virtual ~DAWalker() = default;
  virtual std::vector<std::unique_ptr<DAWalker>> feed(const Pure& a) const = 0;
  virtual std::vector<DATerm> finish() const = 0;
};

class DABimodule {
 public:
  virtual ~DABimodule() = default;
  const AlgebraSpec& out_spec() const { return out_spec_; }
  const AlgebraSpec& in_spec() const { return in_spec_; }
  int num_gens() const { return (int)gens_.size(); }
  const DAGen& gen(int i) const { return gens_[i]; }

  // largest j with delta_j possibly nonzero; 0 means unbounded
  virtual int max_arity() const = 0;
  virtual std::vector<DATerm> delta(int gen, std::span<const Pure> inputs) const = 0;
  virtual std::unique_ptr<DAWalker> walker(int gen) const;

 protected:
  AlgebraSpec out_spec_, in_spec_;
  std::vector<DAGen> gens_;
};

using DAPtr = std::shared_ptr<const DABimodule>;

// identity bimodule of an algebra
DAPtr identity_da(const AlgebraSpec& spec);
// bimodule of an algebra homomorphism phi: in -> out on pure elements
DAPtr morphism_da(const AlgebraSpec& out, const AlgebraSpec& in,
                  std::function<Elt(const Pure&)> phi);
// the vertical-rotation morphism bimodule [R]
DAPtr vrot_bimodule(const AlgebraSpec& in);

// lazy composite M (x) N (out(N) must match in(M))
DAPtr box_DA_DA(DAPtr M, DAPtr N);

struct BoxOptions {
  long budget_per_gen = 10000;  // expansions before SearchBudgetExceeded
};

TypeD box_DA_D(const DABimodule& M, const TypeD& X, const BoxOptions& opt = {});
// pairs a DA bimodule against the first factor of a DD structure; the
// passenger outputs are multiplied in emission order
TypeDD box_DA_DD(const DABimodule& M, const TypeDD& Y, const BoxOptions& opt = {});

CheckReport check_typeDA(const DABimodule& M, int weight_bound2, int len_bound);

// ---------------------------------------------------------------------------
// terminal A-modules (the global minimum)

enum class TerminalVariant { Graded, Filtered, VLifted };

struct TypeA {
  AlgebraSpec spec;
  struct AGen {
    Idem idem;
    int maslov = 0, alex2 = 0;
  };
  std::vector<AGen> gens;
  // m_2(gen, a): list of target generators (other actions vanish)
  std::function<std::vector<int>(int, const Pure&)> act;
  TerminalVariant variant = TerminalVariant::Filtered;
};

CheckReport check_typeA(const TypeA& M, int weight_bound2, int len_bound);

GradedComplex box_A_D_graded(const TypeA& M, const TypeD& X);
FUComplex box_A_D_filtered(const TypeA& M, const TypeD& X);

}  // namespace hfk
