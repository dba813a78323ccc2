#pragma once
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqhh/complex.h"
#include "eqhh/sparse.h"

namespace eqhh {

struct FiniteGroup {
  std::string name;
  std::vector<std::string> elems;
  std::vector<std::vector<int>> mul;
  int id = 0;
  std::vector<int> inv;

  int order() const { return static_cast<int>(elems.size()); }
  int times(int a, int b) const {
    return mul[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  int inverse(int a) const { return inv[static_cast<size_t>(a)]; }
  bool is_abelian() const;
  int element_index(const std::string& s) const;  // -1 when absent

  // validates associativity, identity and inverses on the full table
  static FiniteGroup make(std::string name, std::vector<std::string> elems,
                          std::vector<std::vector<int>> mul);
  static FiniteGroup cyclic(int n);
  static FiniteGroup klein();
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// every group homomorphism g -> h as an image table, brute-forced; only
// sensible for the small catalog groups
std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& g,
                                                const FiniteGroup& h);
bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                     const std::vector<int>& imgs);

struct Violation {
  ErrKind kind;
  std::string detail;
};

// Finite-basis graded-commutative dg algebra given by structure constants.
// mult[i][j] holds the coordinates of (basis_i * basis_j).
class DGAlgebra {
 public:
  std::string name;
  Field field = Field::rationals();
  std::vector<std::string> basis;
  std::vector<int> deg;
  std::vector<std::vector<SparseVec>> mult;
  SparseVec unit;
  SparseMatrix d;

  Index dim() const { return static_cast<Index>(basis.size()); }
  int min_deg() const;
  int max_deg() const;

  SparseVec mul_vec(const SparseVec& a, const SparseVec& b) const;
  SparseVec apply_d(const SparseVec& a) const { return d.apply(a); }

  std::optional<Violation> validate() const;
  void validate_or_throw() const;

  // index of the unit when it is exactly one basis vector with coefficient
  // 1, else -1
  int unit_index() const;
};

using AlgPtr = std::shared_ptr<const DGAlgebra>;

// basis positions grouped by internal degree, ascending
struct GradedBasis {
  std::map<int, std::vector<Index>> by_degree;
  std::vector<std::pair<int, Index>> pos;  // basis index -> (degree, slot)
};
GradedBasis graded_positions(const std::vector<int>& deg);

// the underlying chain complex of the algebra (exact: bounded both sides)
ChainComplex algebra_complex(const DGAlgebra& a);

// Koszul-signed tensor product of algebras; basis pairs are row-major
// (i * dimB + j).
DGAlgebra tensor_algebra(const DGAlgebra& a, const DGAlgebra& b);

// pair coordinates of a (x) b inside the tensor algebra basis
SparseVec outer(const SparseVec& a, const SparseVec& b, Index dim_b);

// group algebra of an abelian group, concentrated in degree 0
DGAlgebra group_algebra(const FiniteGroup& g, const Field& f);

// change of basis turning the unit into basis vector; to_new * old = new
// coordinates. Identity when the unit already is a basis vector.
struct UnitBasisForm {
  AlgPtr alg;
  SparseMatrix to_new, from_new;
  int unit_idx = 0;
};
UnitBasisForm unit_basis_form(AlgPtr a);

// G-action by dg algebra automorphisms
struct GAction {
  std::string name;
  GroupPtr group;
  AlgPtr alg;
  std::vector<SparseMatrix> rho;

  const SparseMatrix& of(int g) const {
    return rho[static_cast<size_t>(g)];
  }
  bool is_trivial() const;
  void validate_or_throw() const;

  static GAction trivial(GroupPtr g, AlgPtr a);
};

// checks that m : src -> dst is a map of dg algebras (unit, product,
// differential, degree)
void check_algebra_hom(const DGAlgebra& src, const DGAlgebra& dst,
                       const SparseMatrix& m);

// Left dg module over a ring R presented by structure constants
// act[i][j] = r_i . m_j.
struct DGModule {
  AlgPtr ring;
  std::vector<int> deg;
  SparseMatrix d;
  std::vector<std::vector<SparseVec>> act;

  Index dim() const { return static_cast<Index>(deg.size()); }
  SparseVec act_vec(const SparseVec& r, const SparseVec& m) const;
  void validate_or_throw() const;
};

// A viewed as an R-module through an algebra map hom : R -> A
DGModule module_from_hom(AlgPtr r, AlgPtr a, const SparseMatrix& hom);

// the algebra map A (x) A -> A, (a (x) b) -> rho(g)(a) * b
SparseMatrix twist_hom(const DGAlgebra& aa, const DGAlgebra& a,
                       const GAction& act, int g);

// A_g: A as an (A (x) A)-module, the action twisted by g on the first factor
DGModule twisted_bimodule(AlgPtr aa, AlgPtr a, const GAction& act, int g);

}  // namespace eqhh
