#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqhh/sparse.h"

namespace eqhh {

// Homology dimensions per degree over a certified range.
struct BettiTable {
  std::map<int, Index> dims;
  int lo = 0, hi = -1;

  Index at(int n) const {
    auto it = dims.find(n);
    return it == dims.end() ? 0 : it->second;
  }
  bool operator==(const BettiTable& o) const = default;
  std::string str() const;
};

// Z-graded complex with degree -1 differential, certified on [lo, hi]:
// chains vanish below lo, degrees above hi are unknown unless
// bounded_above. d_n maps C_n to C_{n-1}; missing matrices mean zero.
class ChainComplex {
 public:
  ChainComplex(const Field& f, std::map<int, Index> dims,
               std::map<int, SparseMatrix> diffs, int lo, int hi,
               bool bounded_above);

  static ChainComplex concentrated(const Field& f, int degree, Index dim);
  static ChainComplex zero(const Field& f) {
    return concentrated(f, 0, 0);
  }

  const Field& field() const { return f_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool bounded_above() const { return bounded_; }
  Index dim(int n) const;
  Index total_dim() const;
  const SparseMatrix& diff(int n) const;  // shaped zero matrix when absent

  // exact homology dims for degrees in [a, b]; needs b + 1 certified
  BettiTable homology_range(int a, int b, Index budget = kDefaultBudget) const;
  BettiTable homology(int n_max, Index budget = kDefaultBudget) const {
    return homology_range(0, n_max, budget);
  }

  // cycle representatives spanning H_n, and reduction mod boundaries
  std::vector<SparseVec> homology_basis(int n, Index budget = kDefaultBudget) const;
  SparseVec reduce_mod_boundaries(int n, const SparseVec& v,
                                  Index budget = kDefaultBudget) const;
  // coordinates of a cycle in the homology_basis(n) frame
  SparseVec express_in_homology(int n, const SparseVec& v,
                                Index budget = kDefaultBudget) const;

 private:
  Field f_;
  std::map<int, Index> dims_;
  std::map<int, SparseMatrix> d_;
  int lo_, hi_;
  bool bounded_;
  mutable std::map<int, Index> rank_cache_;
  mutable std::map<int, SparseMatrix> zero_cache_;

  Index rank_d(int n, Index budget) const;
  void check_degree_known(int n, const char* what) const;
};

using CCPtr = std::shared_ptr<const ChainComplex>;

inline CCPtr make_complex(ChainComplex c) {
  return std::make_shared<const ChainComplex>(std::move(c));
}

// Strict chain map; commutation with differentials is asserted on the
// overlapping certified window at construction.
class ChainMap {
 public:
  ChainMap(CCPtr src, CCPtr dst, std::map<int, SparseMatrix> blocks);

  static ChainMap identity(CCPtr c);
  static ChainMap zero(CCPtr src, CCPtr dst);

  const CCPtr& source() const { return src_; }
  const CCPtr& target() const { return dst_; }
  const SparseMatrix& block(int n) const;  // shaped zero when absent
  ChainMap compose_after(const ChainMap& g) const;  // this o g
  ChainMap scaled(const Scalar& c) const;
  ChainMap operator+(const ChainMap& o) const;
  ChainMap operator-(const ChainMap& o) const;

 private:
  ChainMap() = default;
  CCPtr src_, dst_;
  std::map<int, SparseMatrix> blocks_;
  mutable std::map<int, SparseMatrix> zero_cache_;
};

// Cone(f)_n = X_{n-1} + Y_n with d(x,y) = (-dx, f(x)+dy).
ChainComplex cone(const ChainMap& f);

struct QuasiIsoCert {
  bool ok = false;
  int through = -1;     // degrees 0..through certified
  BettiTable cone_betti;
};

// True iff the cone of f is acyclic in degrees <= n_max. Source must be
// certified through n_max, target through n_max + 1.
QuasiIsoCert is_quasi_iso(const ChainMap& f, int n_max,
                          Index budget = kDefaultBudget);

// Graded tensor product with Koszul signs; block order at total degree n is
// ascending source degree, row-major within a block.
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b,
                    Index budget = kDefaultBudget);

// Convolution of Betti tables (Kunneth over a field) on [0, n_max].
BettiTable betti_convolution(const BettiTable& a, const BettiTable& b,
                             int n_max);

// Grid of vector spaces indexed by multidegrees in N^axes with one
// commuting degree -1 differential per axis; totalization introduces the
// checkerboard signs (-1)^(sum of earlier coordinates).
class Multicomplex {
 public:
  Multicomplex(const Field& f, int axes) : f_(f), axes_(axes) {}

  int axes() const { return axes_; }
  const Field& field() const { return f_; }
  void set_dim(const std::vector<int>& v, Index d);
  Index dim(const std::vector<int>& v) const;
  void set_diff(int axis, const std::vector<int>& v, SparseMatrix m);
  const SparseMatrix* diff(int axis, const std::vector<int>& v) const;
  const std::map<std::vector<int>, Index>& cells() const { return dims_; }

  // asserts pairwise commutation and per-axis d^2 = 0 for all stored cells
  // of total degree <= through
  void validate(int through) const;

 private:
  Field f_;
  int axes_;
  std::map<std::vector<int>, Index> dims_;
  std::map<std::pair<int, std::vector<int>>, SparseMatrix> diffs_;
};

// Total complex over total degrees [0, hi]; the grid must hold every cell
// with total degree <= hi. Basis blocks ordered lexicographically by
// multidegree.
ChainComplex total_complex(const Multicomplex& mc, int hi, bool bounded_above,
                           Index budget = kDefaultBudget);

// position bookkeeping for placing vectors into a total complex
struct TotalBasis {
  std::map<int, std::vector<std::vector<int>>> cells_by_degree;
  std::map<std::vector<int>, Index> offset;
  Index block_offset(const std::vector<int>& v) const {
    auto it = offset.find(v);
    require(it != offset.end(), ErrKind::DimensionMismatch,
            "multidegree outside totalized grid");
    return it->second;
  }
};
TotalBasis total_basis(const Multicomplex& mc, int hi);

}  // namespace eqhh
