#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqhh/algebra.h"
#include "eqhh/complex.h"

namespace eqhh {

// A simplex in Eilenberg-Zilber normal form: a strictly decreasing
// degeneracy word applied to a nondegenerate core, s_{w0} s_{w1} ... core.
struct Simplex {
  std::vector<int> word;
  int core_dim = 0;
  Index core_id = 0;

  int dim() const { return core_dim + static_cast<int>(word.size()); }
  bool is_degenerate() const { return !word.empty(); }
  bool operator==(const Simplex& o) const {
    return core_dim == o.core_dim && core_id == o.core_id && word == o.word;
  }
  bool operator<(const Simplex& o) const {
    if (core_dim != o.core_dim) return core_dim < o.core_dim;
    if (core_id != o.core_id) return core_id < o.core_id;
    return word < o.word;
  }
};

inline Simplex nondeg(int dim, Index id) { return Simplex{{}, dim, id}; }

// normalize s_j applied after the strictly decreasing word w
std::vector<int> word_insert(std::vector<int> w, int j);

// Truncated simplicial set: nondegenerate simplices per dimension up to
// `top`, faces stored in EZ normal form. `complete` asserts there are no
// nondegenerate simplices above `top` at all.
class SimplicialSet {
 public:
  std::string name;
  int top = 0;
  bool complete = false;
  std::vector<std::vector<std::string>> labels;         // [n][i]
  std::vector<std::vector<std::vector<Simplex>>> face;  // [n][i][k], n >= 1

  Index count(int n) const {
    if (n < 0 || n > top) return 0;
    return static_cast<Index>(labels[static_cast<size_t>(n)].size());
  }
  Index total_nondeg() const;
  const std::string& label(int n, Index i) const {
    return labels[static_cast<size_t>(n)][static_cast<size_t>(i)];
  }

  // face/degeneracy of arbitrary EZ-encoded simplices
  Simplex face_of(const Simplex& s, int i) const;
  Simplex degeneracy_of(const Simplex& s, int j) const;
  Simplex vertex_of(const Simplex& s, int k) const;
  Simplex leading_edge(const Simplex& s) const;  // vertices 0-1, dim >= 1

  // all simplices of dimension n including degenerate ones; requires
  // n <= top unless complete
  std::vector<Simplex> all_simplices(int n) const;

  // simplicial identities d_i d_j = d_{j-1} d_i for i < j on all stored
  // cells, plus face shape sanity; throws InvalidInput
  void validate_or_throw() const;
};

using SSPtr = std::shared_ptr<const SimplicialSet>;

// name in {point, interval, circle, two-intervals-circle, delta2,
// boundary-delta2, sphere2, sphere3}; all complete, any truncation valid
SSPtr standard_model(const std::string& name);
std::vector<std::string> standard_model_names();

// map of simplicial sets given on nondegenerate generators
struct SimplicialMap {
  SSPtr src, dst;
  std::vector<std::vector<Simplex>> img;  // [n][i]

  Simplex apply(const Simplex& s) const;
  void validate_or_throw() const;  // commutes with faces
  bool is_cofibration() const;     // injective, nondeg to nondeg
  bool is_isomorphism() const;
  static SimplicialMap identity(SSPtr x);
};

// principal G-bundle cocycle: labels on nondegenerate edges, degenerate
// edges implicitly carry the identity
struct BundleCocycle {
  SSPtr base;
  GroupPtr group;
  std::vector<int> lambda;  // per nondegenerate 1-simplex

  int label_of(const Simplex& edge) const;
  void validate_or_throw() const;  // InvalidCocycle
  static BundleCocycle trivial(SSPtr x, GroupPtr g);
};

// lambda'(e) = kappa(target)*lambda(e)*kappa(source)^{-1}
BundleCocycle coboundary(const BundleCocycle& c, const std::vector<int>& kappa);
// lambda'(e) = lambda(phi(e)) along an isomorphism phi : X -> base(c)
BundleCocycle pullback_cocycle(const SimplicialMap& phi,
                               const BundleCocycle& c);

// simplicial set with right G-action permuting nondegenerate cells
struct GSimplicialSet {
  SSPtr space;
  GroupPtr group;
  std::vector<std::vector<std::vector<Index>>> act;  // [n][i][g]

  Index act_cell(int n, Index i, int g) const {
    return act[static_cast<size_t>(n)][static_cast<size_t>(i)]
              [static_cast<size_t>(g)];
  }
  Simplex act_on(const Simplex& s, int g) const;
  bool is_free() const;
  void validate_or_throw() const;
};

// twisted cartesian product X x_tau G modeling the pullback of the
// universal bundle; tau(x) = lambda(leading edge of x) enters d_0
GSimplicialSet total_space(const BundleCocycle& c);

// twisting-function identities induced by the cocycle condition; returns
// a witness description on failure
std::optional<std::string> twisting_identities_check(const BundleCocycle& c);

// the simplex bijection total_space(c) -> total_space(coboundary(c, kappa)),
// (x, h) -> (x, kappa(vertex_0(x)) h)
SimplicialMap transport_total_map(const BundleCocycle& c,
                                  const std::vector<int>& kappa);

struct PushoutResult {
  SSPtr space;
  SimplicialMap from_x, from_y;
};
// pushout X cup_A Y of f : A -> X (must be a cofibration) and g : A -> Y
PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& g);
// merged cocycle on the pushout; cx, cy must agree on A (CocycleMismatch)
BundleCocycle glue_cocycles(const PushoutResult& p, const SimplicialMap& f,
                            const SimplicialMap& g, const BundleCocycle& cx,
                            const BundleCocycle& cy);

constexpr Index kDefaultCellCap = 200'000;

// nerve of the one-object groupoid of G, truncated at dimension d
SSPtr nerve(const FiniteGroup& g, int d, Index cell_cap = kDefaultCellCap);

// nerve of the action groupoid H//G for a homomorphism lam : G -> H given
// by images, with its free right H-action
GSimplicialSet action_groupoid_nerve(GroupPtr g, GroupPtr h,
                                     const std::vector<int>& lam, int d,
                                     Index cell_cap = kDefaultCellCap);

// diagonal of the simplicial bar construction B(Y, G, *), truncated at d
SSPtr homotopy_quotient(const GSimplicialSet& y, int d,
                        Index cell_cap = kDefaultCellCap);

// homology of normalized chains
ChainComplex normalized_chains(const SimplicialSet& x, const Field& f);
BettiTable simplicial_homology(const SimplicialSet& x, const Field& f,
                               int n_max, Index budget = kDefaultBudget);

}  // namespace eqhh
