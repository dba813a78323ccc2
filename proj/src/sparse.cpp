#include "eqhh/sparse.h"

#include <algorithm>
#include <queue>
#include <unordered_set>

namespace eqhh {

Scalar SparseVec::get(Index i, const Field& f) const {
  auto it = std::lower_bound(
      e.begin(), e.end(), i,
      [](const std::pair<Index, Scalar>& a, Index b) { return a.first < b; });
  if (it != e.end() && it->first == i) return it->second;
  return Scalar::zero(f);
}

void SparseVec::set(Index i, const Scalar& v) {
  auto it = std::lower_bound(
      e.begin(), e.end(), i,
      [](const std::pair<Index, Scalar>& a, Index b) { return a.first < b; });
  if (it != e.end() && it->first == i) {
    if (v.is_zero())
      e.erase(it);
    else
      it->second = v;
  } else if (!v.is_zero()) {
    e.insert(it, {i, v});
  }
}

void axpy(SparseVec& v, const Scalar& c, const SparseVec& w) {
  if (c.is_zero() || w.e.empty()) return;
  std::vector<std::pair<Index, Scalar>> out;
  out.reserve(v.e.size() + w.e.size());
  size_t i = 0, j = 0;
  while (i < v.e.size() || j < w.e.size()) {
    if (j == w.e.size() || (i < v.e.size() && v.e[i].first < w.e[j].first)) {
      out.push_back(v.e[i++]);
    } else if (i == v.e.size() || w.e[j].first < v.e[i].first) {
      Scalar t = c * w.e[j].second;
      if (!t.is_zero()) out.emplace_back(w.e[j].first, std::move(t));
      ++j;
    } else {
      Scalar t = v.e[i].second + c * w.e[j].second;
      if (!t.is_zero()) out.emplace_back(v.e[i].first, std::move(t));
      ++i;
      ++j;
    }
  }
  v.e = std::move(out);
}

void scale_vec(SparseVec& v, const Scalar& c) {
  if (c.is_zero()) {
    v.e.clear();
    return;
  }
  for (auto& [i, x] : v.e) x *= c;
}

SparseMatrix SparseMatrix::identity(Index n, const Field& f) {
  SparseMatrix m(n, n, f);
  for (Index i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

Index SparseMatrix::nnz() const {
  Index t = 0;
  for (const auto& r : rows_) t += r.nnz();
  return t;
}

void SparseMatrix::check_entry(Index i, Index j, const Scalar& v) const {
  require(i >= 0 && i < r_ && j >= 0 && j < c_, ErrKind::DimensionMismatch,
          "entry outside matrix shape");
  require(v.field() == f_, ErrKind::MixedFields,
          "entry field " + v.field().name() + " in " + f_.name() + " matrix");
}

Scalar SparseMatrix::at(Index i, Index j) const {
  require(i >= 0 && i < r_ && j >= 0 && j < c_, ErrKind::DimensionMismatch,
          "entry outside matrix shape");
  return rows_[static_cast<size_t>(i)].get(j, f_);
}

void SparseMatrix::set(Index i, Index j, const Scalar& v) {
  check_entry(i, j, v);
  rows_[static_cast<size_t>(i)].set(j, v);
}

void SparseMatrix::add_to(Index i, Index j, const Scalar& v) {
  check_entry(i, j, v);
  auto& row = rows_[static_cast<size_t>(i)];
  Scalar cur = row.get(j, f_);
  row.set(j, cur + v);
}

void SparseMatrix::set_row(Index i, SparseVec v) {
  require(i >= 0 && i < r_, ErrKind::DimensionMismatch, "row out of range");
  for (const auto& [j, x] : v.e) check_entry(i, j, x);
  rows_[static_cast<size_t>(i)] = std::move(v);
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(c_, r_, f_);
  std::vector<Index> counts(static_cast<size_t>(c_), 0);
  for (const auto& r : rows_)
    for (const auto& [j, x] : r.e) counts[static_cast<size_t>(j)]++;
  for (Index j = 0; j < c_; ++j)
    t.rows_[static_cast<size_t>(j)].e.reserve(
        static_cast<size_t>(counts[static_cast<size_t>(j)]));
  for (Index i = 0; i < r_; ++i)
    for (const auto& [j, x] : rows_[static_cast<size_t>(i)].e)
      t.rows_[static_cast<size_t>(j)].e.emplace_back(i, x);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  require(f_ == o.f_, ErrKind::MixedFields, "matrix product fields disagree");
  require(c_ == o.r_, ErrKind::DimensionMismatch,
          "matrix product shape mismatch");
  SparseMatrix out(r_, o.c_, f_);
  for (Index i = 0; i < r_; ++i) {
    SparseVec acc;
    for (const auto& [k, a] : rows_[static_cast<size_t>(i)].e)
      axpy(acc, a, o.rows_[static_cast<size_t>(k)]);
    out.rows_[static_cast<size_t>(i)] = std::move(acc);
  }
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  require(f_ == o.f_, ErrKind::MixedFields, "matrix sum fields disagree");
  require(r_ == o.r_ && c_ == o.c_, ErrKind::DimensionMismatch,
          "matrix sum shape mismatch");
  SparseMatrix out(r_, c_, f_);
  for (Index i = 0; i < r_; ++i) {
    SparseVec v = rows_[static_cast<size_t>(i)];
    axpy(v, Scalar::one(f_), o.rows_[static_cast<size_t>(i)]);
    out.rows_[static_cast<size_t>(i)] = std::move(v);
  }
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  require(f_ == o.f_, ErrKind::MixedFields, "matrix diff fields disagree");
  require(r_ == o.r_ && c_ == o.c_, ErrKind::DimensionMismatch,
          "matrix diff shape mismatch");
  SparseMatrix out(r_, c_, f_);
  Scalar minus_one = -Scalar::one(f_);
  for (Index i = 0; i < r_; ++i) {
    SparseVec v = rows_[static_cast<size_t>(i)];
    axpy(v, minus_one, o.rows_[static_cast<size_t>(i)]);
    out.rows_[static_cast<size_t>(i)] = std::move(v);
  }
  return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
  require(c.field() == f_, ErrKind::MixedFields, "scale field disagrees");
  SparseMatrix out(r_, c_, f_);
  if (c.is_zero()) return out;
  for (Index i = 0; i < r_; ++i) {
    SparseVec v = rows_[static_cast<size_t>(i)];
    scale_vec(v, c);
    out.rows_[static_cast<size_t>(i)] = std::move(v);
  }
  return out;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  SparseVec out;
  for (Index i = 0; i < r_; ++i) {
    const auto& row = rows_[static_cast<size_t>(i)].e;
    Scalar s = Scalar::zero(f_);
    size_t a = 0, b = 0;
    while (a < row.size() && b < v.e.size()) {
      if (row[a].first < v.e[b].first)
        ++a;
      else if (v.e[b].first < row[a].first)
        ++b;
      else {
        s += row[a].second * v.e[b].second;
        ++a;
        ++b;
      }
    }
    if (!s.is_zero()) out.e.emplace_back(i, std::move(s));
  }
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return r_ == o.r_ && c_ == o.c_ && f_ == o.f_ && rows_ == o.rows_;
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : rows_)
    if (!r.is_zero()) return false;
  return true;
}

SparseMatrix SparseMatrix::hstack(const SparseMatrix& a,
                                  const SparseMatrix& b) {
  require(a.f_ == b.f_, ErrKind::MixedFields, "hstack fields disagree");
  require(a.r_ == b.r_, ErrKind::DimensionMismatch, "hstack row mismatch");
  SparseMatrix out(a.r_, a.c_ + b.c_, a.f_);
  for (Index i = 0; i < a.r_; ++i) {
    SparseVec v = a.rows_[static_cast<size_t>(i)];
    for (const auto& [j, x] : b.rows_[static_cast<size_t>(i)].e)
      v.e.emplace_back(a.c_ + j, x);
    out.rows_[static_cast<size_t>(i)] = std::move(v);
  }
  return out;
}

SparseMatrix SparseMatrix::vstack(const SparseMatrix& a,
                                  const SparseMatrix& b) {
  require(a.f_ == b.f_, ErrKind::MixedFields, "vstack fields disagree");
  require(a.c_ == b.c_, ErrKind::DimensionMismatch, "vstack col mismatch");
  SparseMatrix out(a.r_ + b.r_, a.c_, a.f_);
  for (Index i = 0; i < a.r_; ++i)
    out.rows_[static_cast<size_t>(i)] = a.rows_[static_cast<size_t>(i)];
  for (Index i = 0; i < b.r_; ++i)
    out.rows_[static_cast<size_t>(a.r_ + i)] = b.rows_[static_cast<size_t>(i)];
  return out;
}

namespace {

// Gauss-Jordan elimination with Markowitz-flavored pivoting: pick the active
// column with fewest active nonzeros (lazy min-heap), then the shortest row
// in it. keep_pivots retains and fully reduces pivot rows (RREF); otherwise
// pivot rows are dropped once used, which is all rank needs.
struct Elim {
  std::vector<SparseVec> rows;
  std::vector<std::unordered_set<Index>> col_rows;
  std::priority_queue<std::pair<Index, Index>,
                      std::vector<std::pair<Index, Index>>,
                      std::greater<std::pair<Index, Index>>>
      heap;
  Field f;
  Index total_nnz = 0;
  Index budget;

  Elim(const SparseMatrix& m, Index budget_, Index pivot_col_limit = -1)
      : col_rows(static_cast<size_t>(m.cols())), f(m.field()),
        budget(budget_), limit_(pivot_col_limit) {
    rows.reserve(static_cast<size_t>(m.rows()));
    for (Index i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    is_pivot_col_.assign(col_rows.size(), 0);
    is_pivot_row_.assign(rows.size(), 0);
    for (size_t i = 0; i < rows.size(); ++i)
      for (const auto& [j, x] : rows[i].e) {
        col_rows[static_cast<size_t>(j)].insert(static_cast<Index>(i));
        ++total_nnz;
      }
    require(total_nnz <= budget, ErrKind::BudgetExceeded,
            "matrix nonzeros " + std::to_string(total_nnz) + " over budget " +
                std::to_string(budget));
    for (size_t j = 0; j < col_rows.size(); ++j)
      if (!col_rows[j].empty())
        heap.push({static_cast<Index>(col_rows[j].size()),
                   static_cast<Index>(j)});
  }

  void detach_row(Index r) {
    for (const auto& [j, x] : rows[static_cast<size_t>(r)].e) {
      col_rows[static_cast<size_t>(j)].erase(r);
      push_col(j);
    }
    total_nnz -= rows[static_cast<size_t>(r)].nnz();
  }

  void attach_row(Index r) {
    for (const auto& [j, x] : rows[static_cast<size_t>(r)].e) {
      col_rows[static_cast<size_t>(j)].insert(r);
      push_col(j);
    }
    total_nnz += rows[static_cast<size_t>(r)].nnz();
    require(total_nnz <= budget, ErrKind::BudgetExceeded,
            "elimination fill-in over budget " + std::to_string(budget));
  }

  void push_col(Index j) {
    const auto& s = col_rows[static_cast<size_t>(j)];
    if (!s.empty()) heap.push({static_cast<Index>(s.size()), j});
  }

  // next pivot column by lazy heap, -1 when done
  Index pop_pivot_col() {
    while (!heap.empty()) {
      auto [cnt, j] = heap.top();
      heap.pop();
      if (is_pivot_col_[static_cast<size_t>(j)]) continue;
      if (limit_ >= 0 && j >= limit_) continue;
      if (static_cast<Index>(col_rows[static_cast<size_t>(j)].size()) == cnt)
        return j;
    }
    return -1;
  }

  // shortest active (non-pivot) row with an entry in col j, -1 if none
  Index shortest_row_in_col(Index j) {
    Index best = -1, best_nnz = -1;
    for (Index r : col_rows[static_cast<size_t>(j)]) {
      if (is_pivot_row_[static_cast<size_t>(r)]) continue;
      Index n = rows[static_cast<size_t>(r)].nnz();
      if (best == -1 || n < best_nnz || (n == best_nnz && r < best)) {
        best = r;
        best_nnz = n;
      }
    }
    return best;
  }

  // Returns pivot (row, col) pairs in elimination order.
  std::vector<std::pair<Index, Index>> run(bool keep_pivots) {
    std::vector<std::pair<Index, Index>> pivots;
    while (true) {
      Index pc = pop_pivot_col();
      if (pc < 0) break;
      Index pr = shortest_row_in_col(pc);
      if (pr < 0) {
        // only retained pivot rows left in this column; active rows can
        // never regain entries here, so the column is spent
        is_pivot_col_[static_cast<size_t>(pc)] = 1;
        continue;
      }
      Scalar pval = rows[static_cast<size_t>(pr)].get(pc, f);
      // clear column pc from every other active row
      std::vector<Index> targets(col_rows[static_cast<size_t>(pc)].begin(),
                                 col_rows[static_cast<size_t>(pc)].end());
      std::sort(targets.begin(), targets.end());
      for (Index r : targets) {
        if (r == pr) continue;
        Scalar factor =
            -(rows[static_cast<size_t>(r)].get(pc, f) / pval);
        detach_row(r);
        axpy(rows[static_cast<size_t>(r)], factor,
             rows[static_cast<size_t>(pr)]);
        attach_row(r);
      }
      pivots.emplace_back(pr, pc);
      is_pivot_col_[static_cast<size_t>(pc)] = 1;
      is_pivot_row_[static_cast<size_t>(pr)] = 1;
      // retire the pivot column from selection; with keep_pivots the pivot
      // row stays attached so later eliminations keep reducing it
      // (Gauss-Jordan gives fully reduced rows at the end)
      detach_row(pr);
      if (keep_pivots) attach_row(pr);
    }
    return pivots;
  }

  std::vector<char> is_pivot_col_;
  std::vector<char> is_pivot_row_;
  Index limit_;
};

}  // namespace

Index rank(const SparseMatrix& m, Index budget) {
  // elimination cost scales with row count; rank is transpose-invariant
  if (m.rows() > m.cols()) return rank(m.transpose(), budget);
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Elim e(m, budget);
  return static_cast<Index>(e.run(false).size());
}

Rref rref(const SparseMatrix& m, Index budget) {
  Rref out;
  if (m.rows() == 0 || m.cols() == 0) return out;
  Elim e(m, budget);
  auto pivots = e.run(true);
  std::sort(pivots.begin(), pivots.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [pr, pc] : pivots) {
    SparseVec row = e.rows[static_cast<size_t>(pr)];
    Scalar lead = row.get(pc, m.field());
    scale_vec(row, lead.inv());
    out.rows.push_back(std::move(row));
    out.pivot_cols.push_back(pc);
  }
  return out;
}

std::vector<SparseVec> kernel_basis(const SparseMatrix& m, Index budget) {
  std::vector<SparseVec> basis;
  if (m.cols() == 0) return basis;
  Rref r = rref(m, budget);
  std::vector<char> is_pivot(static_cast<size_t>(m.cols()), 0);
  for (Index c : r.pivot_cols) is_pivot[static_cast<size_t>(c)] = 1;
  for (Index j = 0; j < m.cols(); ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    SparseVec v;
    for (size_t i = 0; i < r.rows.size(); ++i) {
      Scalar c = r.rows[i].get(j, m.field());
      if (!c.is_zero()) v.e.emplace_back(r.pivot_cols[i], -c);
    }
    v.e.emplace_back(j, Scalar::one(m.field()));
    std::sort(v.e.begin(), v.e.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b,
                               Index budget) {
  // kernel of [m | -b]: a kernel vector with nonzero last coordinate t
  // gives m(x/t) = b
  SparseMatrix aug(m.rows(), m.cols() + 1, m.field());
  for (Index i = 0; i < m.rows(); ++i) aug.set_row(i, m.row(i));
  for (const auto& [i, x] : b.e) aug.set(i, m.cols(), -x);
  for (SparseVec& k : kernel_basis(aug, budget)) {
    Scalar t = k.get(m.cols(), m.field());
    if (t.is_zero()) continue;
    SparseVec x;
    for (const auto& [j, v] : k.e)
      if (j < m.cols()) x.e.emplace_back(j, v / t);
    return x;
  }
  return std::nullopt;
}

std::optional<SparseMatrix> try_inverse(const SparseMatrix& m, Index budget) {
  require(m.rows() == m.cols(), ErrKind::DimensionMismatch,
          "inverse of a non-square matrix");
  Index n = m.rows();
  if (n == 0) return SparseMatrix(0, 0, m.field());
  // eliminate [m | id] with pivots restricted to the m block; full rank
  // there leaves each pivot row as e_c in the m block and the matching
  // inverse row in the id block
  SparseMatrix aug(n, 2 * n, m.field());
  for (Index i = 0; i < n; ++i) {
    aug.set_row(i, m.row(i));
    aug.set(i, n + i, Scalar::one(m.field()));
  }
  Elim e(aug, budget, n);
  auto pivots = e.run(true);
  if (static_cast<Index>(pivots.size()) < n) return std::nullopt;
  SparseMatrix out(n, n, m.field());
  for (const auto& [pr, pc] : pivots) {
    SparseVec full = e.rows[static_cast<size_t>(pr)];
    scale_vec(full, full.get(pc, m.field()).inv());
    SparseVec row;
    for (const auto& [j, x] : full.e)
      if (j >= n) row.e.emplace_back(j - n, x);
    out.set_row(pc, row);
  }
  return out;
}

QuotientPresentation quotient_basis(Index space_dim,
                                    const std::vector<SparseVec>& gens,
                                    const Field& f, Index budget) {
  SparseMatrix g(static_cast<Index>(gens.size()), space_dim, f);
  for (size_t i = 0; i < gens.size(); ++i) {
    for (const auto& [j, x] : gens[i].e)
      require(j >= 0 && j < space_dim, ErrKind::DimensionMismatch,
              "generator coordinate outside space dimension");
    g.set_row(static_cast<Index>(i), gens[i]);
  }
  Rref r = rref(g, budget);
  QuotientPresentation out;
  std::vector<char> is_pivot(static_cast<size_t>(space_dim), 0);
  std::vector<Index> pivot_rank(static_cast<size_t>(space_dim), -1);
  for (size_t i = 0; i < r.pivot_cols.size(); ++i) {
    is_pivot[static_cast<size_t>(r.pivot_cols[i])] = 1;
    pivot_rank[static_cast<size_t>(r.pivot_cols[i])] = static_cast<Index>(i);
  }
  for (Index j = 0; j < space_dim; ++j)
    if (!is_pivot[static_cast<size_t>(j)]) out.free_cols.push_back(j);
  std::vector<Index> free_pos(static_cast<size_t>(space_dim), -1);
  for (size_t k = 0; k < out.free_cols.size(); ++k)
    free_pos[static_cast<size_t>(out.free_cols[k])] = static_cast<Index>(k);

  out.project = SparseMatrix(static_cast<Index>(out.free_cols.size()),
                             space_dim, f);
  // e_j with j free maps to its quotient basis vector; e_c with c the pivot
  // of row R maps to minus the free part of R
  for (size_t k = 0; k < out.free_cols.size(); ++k)
    out.project.set(static_cast<Index>(k), out.free_cols[k], Scalar::one(f));
  for (size_t i = 0; i < r.rows.size(); ++i) {
    Index c = r.pivot_cols[i];
    for (const auto& [j, x] : r.rows[i].e) {
      if (j == c) continue;
      out.project.set(free_pos[static_cast<size_t>(j)], c, -x);
    }
  }
  for (Index j : out.free_cols) {
    SparseVec v;
    v.e.emplace_back(j, Scalar::one(f));
    out.reps.push_back(std::move(v));
  }
  return out;
}

SparseVec EchelonForm::reduce(const SparseVec& v) const {
  SparseVec r = v;
  for (size_t k = 0; k < rows_.size(); ++k) {
    Scalar c = r.get(pivots_[k], f_);
    if (!c.is_zero()) axpy(r, -c, rows_[k]);
  }
  return r;
}

bool EchelonForm::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.is_zero()) return false;
  Index pivot = r.e.front().first;
  scale_vec(r, r.e.front().second.inv());
  for (size_t k = 0; k < rows_.size(); ++k) {
    Scalar c = rows_[k].get(pivot, f_);
    if (!c.is_zero()) axpy(rows_[k], -c, r);
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  size_t pos = static_cast<size_t>(it - pivots_.begin());
  pivots_.insert(it, pivot);
  rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(r));
  return true;
}

}  // namespace eqhh
