#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eqhh/scalar.h"

namespace eqhh {

using Index = std::int64_t;

// Sorted-by-index coordinate vector, no explicit zeros.
struct SparseVec {
  std::vector<std::pair<Index, Scalar>> e;

  bool is_zero() const { return e.empty(); }
  Index nnz() const { return static_cast<Index>(e.size()); }
  Scalar get(Index i, const Field& f) const;
  void set(Index i, const Scalar& v);  // insert or overwrite, drops zeros
  bool operator==(const SparseVec& o) const { return e == o.e; }
};

// v += c * w
void axpy(SparseVec& v, const Scalar& c, const SparseVec& w);
void scale_vec(SparseVec& v, const Scalar& c);

// Immutable-ish exact sparse matrix, row-major. Rows hold sorted coordinate
// lists. The field is fixed at construction even when empty.
class SparseMatrix {
 public:
  SparseMatrix() : r_(0), c_(0), f_(Field::rationals()) {}
  SparseMatrix(Index rows, Index cols, const Field& f)
      : r_(rows), c_(cols), f_(f), rows_(static_cast<size_t>(rows)) {
    require(rows >= 0 && cols >= 0, ErrKind::DimensionMismatch,
            "negative matrix shape");
  }

  static SparseMatrix identity(Index n, const Field& f);
  static SparseMatrix zero(Index rows, Index cols, const Field& f) {
    return SparseMatrix(rows, cols, f);
  }

  Index rows() const { return r_; }
  Index cols() const { return c_; }
  const Field& field() const { return f_; }
  Index nnz() const;

  const SparseVec& row(Index i) const { return rows_[static_cast<size_t>(i)]; }
  Scalar at(Index i, Index j) const;
  void set(Index i, Index j, const Scalar& v);
  void add_to(Index i, Index j, const Scalar& v);
  void set_row(Index i, SparseVec v);

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Scalar& c) const;
  SparseVec apply(const SparseVec& v) const;  // matrix * column vector
  bool operator==(const SparseMatrix& o) const;
  bool is_zero() const;

  // hcat/vcat helpers for cones and block maps
  static SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);
  static SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b);

 private:
  Index r_, c_;
  Field f_;
  std::vector<SparseVec> rows_;

  void check_entry(Index i, Index j, const Scalar& v) const;
};

constexpr Index kDefaultBudget = 2'000'000;

// Exact elimination kernels. All throw BudgetExceeded when intermediate
// fill-in passes the nonzero budget and MixedFields on field mismatch.
Index rank(const SparseMatrix& m, Index budget = kDefaultBudget);
std::vector<SparseVec> kernel_basis(const SparseMatrix& m,
                                    Index budget = kDefaultBudget);

// Fully reduced row echelon form: unit pivots, pivot columns cleared
// everywhere else, rows ordered by pivot column.
struct Rref {
  std::vector<SparseVec> rows;
  std::vector<Index> pivot_cols;
  Index rank() const { return static_cast<Index>(rows.size()); }
};
Rref rref(const SparseMatrix& m, Index budget = kDefaultBudget);

// Exact inverse of a square matrix, or nullopt when singular.
std::optional<SparseMatrix> try_inverse(const SparseMatrix& m,
                                        Index budget = kDefaultBudget);

// Solve m * x = b; nullopt when inconsistent.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b,
                               Index budget = kDefaultBudget);

// Presentation of V/span(gens): `project` maps old coordinates onto the
// free-coordinate basis of the quotient, `reps` lifts that basis back.
struct QuotientPresentation {
  SparseMatrix project;        // (dim V - rank) x dim V
  std::vector<Index> free_cols;
  std::vector<SparseVec> reps; // unit vectors at free_cols
  Index dim() const { return static_cast<Index>(free_cols.size()); }
};
QuotientPresentation quotient_basis(Index space_dim,
                                    const std::vector<SparseVec>& gens,
                                    const Field& f,
                                    Index budget = kDefaultBudget);

// Incremental echelon basis of a row space; powers membership tests and
// homology-class comparisons. Rows kept fully reduced with unit pivots.
class EchelonForm {
 public:
  explicit EchelonForm(const Field& f) : f_(f) {}

  // Reduce v against the current basis (returns the canonical residue).
  SparseVec reduce(const SparseVec& v) const;
  // Reduce and, if the residue is nonzero, add it to the basis. Returns
  // true when the vector enlarged the span.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  const Field& field() const { return f_; }

 private:
  Field f_;
  std::vector<SparseVec> rows_;       // sorted by pivot col
  std::vector<Index> pivots_;
};

}  // namespace eqhh
