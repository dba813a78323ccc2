#pragma once
#include <string>
#include <vector>

#include "eqhh/algebra.h"
#include "eqhh/complex.h"
#include "eqhh/simplicial.h"

namespace eqhh {

// coefficient data brought to unit-basis form, the action conjugated along
struct Coefficient {
  AlgPtr alg;
  int unit = 0;
  GAction act;
};
Coefficient ingest_coefficient(AlgPtr a, const GAction& act);

// a constructed homology model; the complex carries its certified window
struct HochschildModel {
  std::string kind;
  std::string detail;
  CCPtr complex;

  BettiTable betti(int n_max, Index budget = kDefaultBudget) const {
    return complex->homology(n_max, budget);
  }
};

// normalized Hochschild model A^{(x)X_q}, faces induced covariantly
HochschildModel pirashvili_chains(SSPtr x, AlgPtr a, int n_max,
                                  Index budget = kDefaultBudget);

// normalized bar model over the total space of the cocycle: level (p, q) is
// A^{(x)(Y_q x G^p)}; d_0 acts, middle faces merge group slots, the last
// face drops the tuple tail and twists every slot by its own group label
HochschildModel equivariant_bar_chains(const BundleCocycle& c, AlgPtr a,
                                       const GAction& act, int n_max,
                                       Index budget = kDefaultBudget);

// same bar construction over an arbitrary right G-simplicial set
HochschildModel coinvariants_chains(const GSimplicialSet& y, AlgPtr a,
                                    const GAction& act, int n_max,
                                    Index budget = kDefaultBudget);

// twisted cyclic bar complex: C_n = A^{(x)(n+1)}, d_i merge for i < n, the
// wrap face merges rho(g)(a_n) into a_0 (Koszul signs per the one global
// convention)
HochschildModel twisted_circle_chains(AlgPtr a, const GAction& act, int g,
                                      int n_max,
                                      Index budget = kDefaultBudget);

// two-sided bar construction B(b, R, c) for left dg modules over the same
// graded-commutative ring; b is used through the flip as a right module
HochschildModel derived_tensor(const DGModule& b, const DGModule& c,
                               int n_max, Index budget = kDefaultBudget);

// the augmentation at bar degree 0: slot (x, h) -> x twisted by rho(h). Its
// target is the twisted Pirashvili complex of the base (d_0 twists each slot
// by the label of its leading edge); for a trivial cocycle that target is
// pirashvili_chains and the certificate is the trivial-bundle reduction.
struct AugmentationCert {
  HochschildModel big, small;
  ChainMap pi;
  QuasiIsoCert cert;
};
AugmentationCert bar_augmentation(const BundleCocycle& c, AlgPtr a,
                                  const GAction& act, int n_max,
                                  Index budget = kDefaultBudget);

// chain isomorphism of bar models induced by a cocycle transport
struct TransportCert {
  HochschildModel src, dst;
  ChainMap map;
  bool is_iso = false;
  int through = -1;
};
// c2 must equal coboundary(c, kappa); throws NotCoboundaryRelated otherwise
TransportCert transport_iso(const BundleCocycle& c, const BundleCocycle& c2,
                            const std::vector<int>& kappa, AlgPtr a,
                            const GAction& act, int n_max,
                            Index budget = kDefaultBudget);
// pullback variant along a simplicial isomorphism phi : X' -> base(c)
TransportCert pullback_iso(const SimplicialMap& phi, const BundleCocycle& c,
                           AlgPtr a, const GAction& act, int n_max,
                           Index budget = kDefaultBudget);

struct ExcisionStep {
  std::string name;
  bool is_iso = false;
  QuasiIsoCert cert;
};

struct ExcisionReport {
  bool pass = false;
  int n_requested = 0;
  int n_full = -1;  // degree certified by the full bar pipeline, -1 skipped
  int n_fast = -1;  // degree certified by the circle fast path
  int holonomy = 0;  // reduced cocycle class as a group element index
  std::vector<ExcisionStep> steps;
  BettiTable glued_big;   // equivariant bar of the glued space, if feasible
  BettiTable fast_value;  // twisted circle value along the fast path
  BettiTable derived;     // independent derived-tensor route
  std::string notes;

  std::string str() const;
};

// gluing comparison for a circle built from two intervals along two points:
// certifies a zigzag of strict chain maps connecting the derived tensor of
// the interval reductions to the bar model of the glued cocycle, plus the
// fast circle-level version, each arrow's cone checked exactly acyclic
ExcisionReport excision_check(const SimplicialMap& f1, const SimplicialMap& f2,
                              const PushoutResult& glued,
                              const BundleCocycle& c, AlgPtr a,
                              const GAction& act, int n_max,
                              Index budget = kDefaultBudget);

}  // namespace eqhh
