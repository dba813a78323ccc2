#include "eqhh/complex.h"

#include <algorithm>
#include <climits>

namespace eqhh {

std::string BettiTable::str() const {
  std::string s;
  for (int n = lo; n <= hi; ++n) {
    if (!s.empty()) s += ",";
    s += std::to_string(at(n));
  }
  return "(" + s + ")";
}

ChainComplex::ChainComplex(const Field& f, std::map<int, Index> dims,
                           std::map<int, SparseMatrix> diffs, int lo, int hi,
                           bool bounded_above)
    : f_(f), dims_(std::move(dims)), d_(std::move(diffs)), lo_(lo), hi_(hi),
      bounded_(bounded_above) {
  require(lo_ <= hi_, ErrKind::InvalidInput, "empty certification window");
  for (const auto& [n, dim] : dims_)
    require(dim >= 0 && (n >= lo_ || dim == 0), ErrKind::InvalidInput,
            "chains below the window at degree " + std::to_string(n));
  for (const auto& [n, m] : d_) {
    require(n > lo_ && n <= hi_, ErrKind::InvalidInput,
            "differential outside window at degree " + std::to_string(n));
    require(m.field() == f_, ErrKind::MixedFields,
            "differential field mismatch");
    require(m.rows() == dim(n - 1) && m.cols() == dim(n),
            ErrKind::DimensionMismatch,
            "differential shape at degree " + std::to_string(n));
  }
  for (int n = lo_ + 2; n <= hi_; ++n) {
    if (dim(n) == 0 || dim(n - 1) == 0 || dim(n - 2) == 0) continue;
    if (!(diff(n - 1) * diff(n)).is_zero())
      fail(ErrKind::InvalidInput, "d^2 != 0 at degree " + std::to_string(n));
  }
}

ChainComplex ChainComplex::concentrated(const Field& f, int degree,
                                        Index dim) {
  std::map<int, Index> dims;
  dims[degree] = dim;
  return ChainComplex(f, std::move(dims), {}, std::min(degree, 0), degree,
                      true);
}

Index ChainComplex::dim(int n) const {
  auto it = dims_.find(n);
  return it == dims_.end() ? 0 : it->second;
}

Index ChainComplex::total_dim() const {
  Index t = 0;
  for (const auto& [n, d] : dims_) t += d;
  return t;
}

const SparseMatrix& ChainComplex::diff(int n) const {
  auto it = d_.find(n);
  if (it != d_.end()) return it->second;
  auto z = zero_cache_.find(n);
  if (z == zero_cache_.end())
    z = zero_cache_.emplace(n, SparseMatrix::zero(dim(n - 1), dim(n), f_))
            .first;
  return z->second;
}

void ChainComplex::check_degree_known(int n, const char* what) const {
  require(n <= hi_ || bounded_, ErrKind::WindowTooSmall,
          std::string(what) + " needs degree " + std::to_string(n) +
              " beyond certified window [" + std::to_string(lo_) + ", " +
              std::to_string(hi_) + "]");
}

Index ChainComplex::rank_d(int n, Index budget) const {
  if (n <= lo_ || dim(n) == 0 || dim(n - 1) == 0) return 0;
  if (n > hi_) return 0;  // callers must have checked boundedness
  auto it = rank_cache_.find(n);
  if (it != rank_cache_.end()) return it->second;
  Index r = rank(diff(n), budget);
  rank_cache_[n] = r;
  return r;
}

BettiTable ChainComplex::homology_range(int a, int b, Index budget) const {
  require(a <= b, ErrKind::InvalidInput, "empty homology range");
  check_degree_known(b + 1, "homology");
  BettiTable t;
  t.lo = a;
  t.hi = b;
  for (int n = a; n <= b; ++n) {
    Index h = dim(n) - rank_d(n, budget) - rank_d(n + 1, budget);
    if (h != 0) t.dims[n] = h;
  }
  return t;
}

std::vector<SparseVec> ChainComplex::homology_basis(int n,
                                                    Index budget) const {
  check_degree_known(n + 1, "homology basis");
  std::vector<SparseVec> kernel;
  if (n <= lo_ || dim(n - 1) == 0) {
    // whole space is the kernel
    for (Index i = 0; i < dim(n); ++i) {
      SparseVec v;
      v.set(i, Scalar::one(f_));
      kernel.push_back(std::move(v));
    }
  } else {
    kernel = kernel_basis(diff(n), budget);
  }
  EchelonForm boundaries(f_);
  if (n + 1 <= hi_ && dim(n + 1) > 0) {
    SparseMatrix dt = diff(n + 1).transpose();
    for (Index i = 0; i < dt.rows(); ++i) boundaries.insert(dt.row(i));
  }
  std::vector<SparseVec> reps;
  for (const auto& v : kernel)
    if (boundaries.insert(v)) reps.push_back(v);
  return reps;
}

SparseVec ChainComplex::reduce_mod_boundaries(int n, const SparseVec& v,
                                              Index budget) const {
  check_degree_known(n + 1, "boundary reduction");
  (void)budget;
  EchelonForm boundaries(f_);
  if (n + 1 <= hi_ && dim(n + 1) > 0) {
    SparseMatrix dt = diff(n + 1).transpose();
    for (Index i = 0; i < dt.rows(); ++i) boundaries.insert(dt.row(i));
  }
  return boundaries.reduce(v);
}

namespace {
// any solution of (columns) x = b, or nullopt when inconsistent
std::optional<SparseVec> solve_columns(const std::vector<SparseVec>& columns,
                                       const SparseVec& b, Index rows,
                                       const Field& f, Index budget) {
  Index n = static_cast<Index>(columns.size());
  SparseMatrix m(rows, n + 1, f);
  SparseMatrix mt(n + 1, rows, f);
  for (Index j = 0; j < n; ++j)
    for (const auto& [i, x] : columns[static_cast<size_t>(j)].e)
      mt.set(j, i, x);
  for (const auto& [i, x] : b.e) mt.set(n, i, -x);
  m = mt.transpose();
  for (const auto& k : kernel_basis(m, budget)) {
    Scalar last = k.get(n, f);
    if (!last.is_zero()) {
      SparseVec x;
      Scalar linv = last.inv();
      for (const auto& [i, c] : k.e)
        if (i != n) x.set(i, c * linv);
      return x;
    }
  }
  return std::nullopt;
}
}  // namespace

SparseVec ChainComplex::express_in_homology(int n, const SparseVec& v,
                                            Index budget) const {
  check_degree_known(n + 1, "homology coordinates");
  if (n > lo_ && dim(n - 1) > 0)
    require(diff(n).apply(v).is_zero(), ErrKind::InvalidInput,
            "vector is not a cycle");
  auto reps = homology_basis(n, budget);
  std::vector<SparseVec> cols = reps;
  if (n + 1 <= hi_ && dim(n + 1) > 0) {
    SparseMatrix dt = diff(n + 1).transpose();
    for (Index i = 0; i < dt.rows(); ++i)
      if (!dt.row(i).is_zero()) cols.push_back(dt.row(i));
  }
  auto sol = solve_columns(cols, v, dim(n), f_, budget);
  require(sol.has_value(), ErrKind::InvalidInput,
          "cycle not expressible: homology frame inconsistent");
  SparseVec out;
  for (const auto& [i, c] : sol->e)
    if (i < static_cast<Index>(reps.size())) out.set(i, c);
  return out;
}

ChainMap::ChainMap(CCPtr src, CCPtr dst, std::map<int, SparseMatrix> blocks)
    : src_(std::move(src)), dst_(std::move(dst)), blocks_(std::move(blocks)) {
  require(src_ && dst_, ErrKind::InvalidInput, "null complex in chain map");
  require(src_->field() == dst_->field(), ErrKind::MixedFields,
          "chain map fields disagree");
  for (const auto& [n, m] : blocks_) {
    require(m.field() == src_->field(), ErrKind::MixedFields,
            "chain map block field mismatch");
    require(m.rows() == dst_->dim(n) && m.cols() == src_->dim(n),
            ErrKind::DimensionMismatch,
            "chain map block shape at degree " + std::to_string(n));
  }
  int lo = std::max(src_->lo(), dst_->lo());
  int hi = std::min(src_->hi(), dst_->hi());
  for (int n = lo + 1; n <= hi; ++n) {
    if (src_->dim(n) == 0) continue;
    SparseMatrix lhs = dst_->diff(n) * block(n);
    SparseMatrix rhs = block(n - 1) * src_->diff(n);
    require(lhs == rhs, ErrKind::InvalidInput,
            "chain map fails to commute with d at degree " +
                std::to_string(n));
  }
}

ChainMap ChainMap::identity(CCPtr c) {
  std::map<int, SparseMatrix> blocks;
  for (int n = c->lo(); n <= c->hi(); ++n)
    if (c->dim(n) > 0)
      blocks.emplace(n, SparseMatrix::identity(c->dim(n), c->field()));
  return ChainMap(c, c, std::move(blocks));
}

ChainMap ChainMap::zero(CCPtr src, CCPtr dst) {
  return ChainMap(std::move(src), std::move(dst), {});
}

const SparseMatrix& ChainMap::block(int n) const {
  auto it = blocks_.find(n);
  if (it != blocks_.end()) return it->second;
  auto z = zero_cache_.find(n);
  if (z == zero_cache_.end())
    z = zero_cache_
            .emplace(n, SparseMatrix::zero(dst_->dim(n), src_->dim(n),
                                           src_->field()))
            .first;
  return z->second;
}

ChainMap ChainMap::compose_after(const ChainMap& g) const {
  require(g.dst_ == src_ ||
              (g.dst_->field() == src_->field() && g.dst_->lo() == src_->lo() &&
               g.dst_->hi() == src_->hi()),
          ErrKind::BoundaryMismatch, "chain map composition mismatch");
  std::map<int, SparseMatrix> blocks;
  int lo = std::max(src_->lo(), g.src_->lo());
  int hi = std::min(src_->hi(), g.src_->hi());
  for (int n = lo; n <= hi; ++n) {
    if (g.src_->dim(n) == 0 || dst_->dim(n) == 0) continue;
    SparseMatrix m = block(n) * g.block(n);
    if (!m.is_zero()) blocks.emplace(n, std::move(m));
  }
  return ChainMap(g.src_, dst_, std::move(blocks));
}

ChainMap ChainMap::scaled(const Scalar& c) const {
  std::map<int, SparseMatrix> blocks;
  for (const auto& [n, m] : blocks_) {
    SparseMatrix s = m.scaled(c);
    if (!s.is_zero()) blocks.emplace(n, std::move(s));
  }
  return ChainMap(src_, dst_, std::move(blocks));
}

ChainMap ChainMap::operator+(const ChainMap& o) const {
  require(src_ == o.src_ && dst_ == o.dst_, ErrKind::BoundaryMismatch,
          "chain map sum endpoints disagree");
  std::map<int, SparseMatrix> blocks;
  int lo = src_->lo(), hi = src_->hi();
  for (int n = lo; n <= hi; ++n) {
    if (src_->dim(n) == 0 || dst_->dim(n) == 0) continue;
    SparseMatrix m = block(n) + o.block(n);
    if (!m.is_zero()) blocks.emplace(n, std::move(m));
  }
  return ChainMap(src_, dst_, std::move(blocks));
}

ChainMap ChainMap::operator-(const ChainMap& o) const {
  return *this + o.scaled(-Scalar::one(src_->field()));
}

ChainComplex cone(const ChainMap& f) {
  const auto& x = *f.source();
  const auto& y = *f.target();
  const Field& k = x.field();
  int lo = std::min(x.lo() + 1, y.lo());
  int hi;
  bool bounded = x.bounded_above() && y.bounded_above();
  if (bounded)
    hi = std::max(x.hi() + 1, y.hi());
  else
    hi = std::min(x.bounded_above() ? INT_MAX : x.hi() + 1,
                  y.bounded_above() ? INT_MAX : y.hi());
  std::map<int, Index> dims;
  for (int n = lo; n <= hi; ++n) {
    Index d = x.dim(n - 1) + y.dim(n);
    if (d > 0) dims[n] = d;
  }
  std::map<int, SparseMatrix> diffs;
  for (int n = lo + 1; n <= hi; ++n) {
    Index rows = x.dim(n - 2) + y.dim(n - 1);
    Index cols = x.dim(n - 1) + y.dim(n);
    if (rows == 0 || cols == 0) continue;
    SparseMatrix m(rows, cols, k);
    if (x.dim(n - 1) > 0 && x.dim(n - 2) > 0) {
      const SparseMatrix& dx = x.diff(n - 1);
      for (Index i = 0; i < dx.rows(); ++i)
        for (const auto& [j, v] : dx.row(i).e) m.set(i, j, -v);
    }
    if (x.dim(n - 1) > 0 && y.dim(n - 1) > 0) {
      const SparseMatrix& fb = f.block(n - 1);
      for (Index i = 0; i < fb.rows(); ++i)
        for (const auto& [j, v] : fb.row(i).e)
          m.set(x.dim(n - 2) + i, j, v);
    }
    if (y.dim(n) > 0 && y.dim(n - 1) > 0) {
      const SparseMatrix& dy = y.diff(n);
      for (Index i = 0; i < dy.rows(); ++i)
        for (const auto& [j, v] : dy.row(i).e)
          m.set(x.dim(n - 2) + i, x.dim(n - 1) + j, v);
    }
    if (!m.is_zero()) diffs.emplace(n, std::move(m));
  }
  return ChainComplex(k, std::move(dims), std::move(diffs), lo, hi, bounded);
}

QuasiIsoCert is_quasi_iso(const ChainMap& f, int n_max, Index budget) {
  require(
      (f.source()->hi() >= n_max + 1 || f.source()->bounded_above()) &&
          (f.target()->hi() >= n_max + 1 || f.target()->bounded_above()),
      ErrKind::WindowTooSmall,
      "quasi-iso check needs both complexes certified through n_max + 1");
  ChainComplex c = cone(f);
  QuasiIsoCert cert;
  cert.through = n_max;
  cert.cone_betti = c.homology_range(std::min(c.lo(), 0), n_max, budget);
  cert.ok = true;
  for (const auto& [n, d] : cert.cone_betti.dims)
    if (d != 0) cert.ok = false;
  return cert;
}

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b,
                    Index budget) {
  require(a.field() == b.field(), ErrKind::MixedFields,
          "tensor fields disagree");
  const Field& k = a.field();
  int lo = a.lo() + b.lo();
  bool bounded = a.bounded_above() && b.bounded_above();
  int hi;
  if (bounded)
    hi = a.hi() + b.hi();
  else
    hi = std::min(a.bounded_above() ? INT_MAX : a.hi() + b.lo(),
                  b.bounded_above() ? INT_MAX : b.hi() + a.lo());
  require(hi >= lo, ErrKind::WindowTooSmall, "tensor window is empty");

  auto block_dims = [&](int n) {
    std::vector<std::pair<int, Index>> blocks;  // (i, offset)
    Index off = 0;
    for (int i = a.lo(); i <= std::min(a.hi(), n - b.lo()); ++i) {
      Index da = a.dim(i), db = b.dim(n - i);
      if (da == 0 || db == 0) continue;
      blocks.emplace_back(i, off);
      off += da * db;
    }
    return std::make_pair(blocks, off);
  };

  std::map<int, Index> dims;
  for (int n = lo; n <= hi; ++n) {
    Index d = block_dims(n).second;
    if (d > 0) dims[n] = d;
  }
  std::map<int, SparseMatrix> diffs;
  Index nnz_guard = 0;
  for (int n = lo + 1; n <= hi; ++n) {
    auto [src_blocks, src_dim] = block_dims(n);
    auto [dst_blocks, dst_dim] = block_dims(n - 1);
    if (src_dim == 0 || dst_dim == 0) continue;
    std::map<int, Index> dst_off;
    for (const auto& [i, off] : dst_blocks) dst_off[i] = off;
    SparseMatrix m(dst_dim, src_dim, k);
    for (const auto& [i, off] : src_blocks) {
      int j = n - i;
      Index da = a.dim(i), db = b.dim(j);
      // d_a x tensor y
      if (dst_off.count(i - 1) && a.dim(i - 1) > 0) {
        const SparseMatrix& dA = a.diff(i);
        for (Index r = 0; r < dA.rows(); ++r)
          for (const auto& [c, v] : dA.row(r).e)
            for (Index y = 0; y < db; ++y) {
              m.set(dst_off[i - 1] + r * db + y, off + c * db + y, v);
              ++nnz_guard;
            }
      }
      // (-1)^i x tensor d_b y
      if (dst_off.count(i) && b.dim(j - 1) > 0) {
        const SparseMatrix& dB = b.diff(j);
        Scalar sign = (i % 2 == 0) ? Scalar::one(k) : -Scalar::one(k);
        for (Index r = 0; r < dB.rows(); ++r)
          for (const auto& [c, v] : dB.row(r).e)
            for (Index x = 0; x < da; ++x) {
              m.set(dst_off[i] + x * b.dim(j - 1) + r, off + x * db + c,
                    sign * v);
              ++nnz_guard;
            }
      }
      require(nnz_guard <= budget, ErrKind::BudgetExceeded,
              "tensor complex over nonzero budget");
    }
    if (!m.is_zero()) diffs.emplace(n, std::move(m));
  }
  return ChainComplex(k, std::move(dims), std::move(diffs), lo, hi, bounded);
}

BettiTable betti_convolution(const BettiTable& a, const BettiTable& b,
                             int n_max) {
  BettiTable t;
  t.lo = 0;
  t.hi = n_max;
  for (int n = 0; n <= n_max; ++n) {
    Index s = 0;
    for (const auto& [i, da] : a.dims) {
      auto it = b.dims.find(n - i);
      if (it != b.dims.end()) s += da * it->second;
    }
    if (s != 0) t.dims[n] = s;
  }
  return t;
}

void Multicomplex::set_dim(const std::vector<int>& v, Index d) {
  require(static_cast<int>(v.size()) == axes_, ErrKind::DimensionMismatch,
          "multidegree arity mismatch");
  for (int x : v)
    require(x >= 0, ErrKind::InvalidInput, "negative multidegree");
  if (d != 0)
    dims_[v] = d;
  else
    dims_.erase(v);
}

Index Multicomplex::dim(const std::vector<int>& v) const {
  auto it = dims_.find(v);
  return it == dims_.end() ? 0 : it->second;
}

void Multicomplex::set_diff(int axis, const std::vector<int>& v,
                            SparseMatrix m) {
  require(axis >= 0 && axis < axes_, ErrKind::DimensionMismatch,
          "axis out of range");
  require(v[static_cast<size_t>(axis)] >= 1, ErrKind::InvalidInput,
          "differential source must be positive along its axis");
  std::vector<int> w = v;
  w[static_cast<size_t>(axis)] -= 1;
  require(m.rows() == dim(w) && m.cols() == dim(v), ErrKind::DimensionMismatch,
          "grid differential shape mismatch");
  require(m.field() == f_, ErrKind::MixedFields, "grid field mismatch");
  if (!m.is_zero()) diffs_[{axis, v}] = std::move(m);
}

const SparseMatrix* Multicomplex::diff(int axis,
                                       const std::vector<int>& v) const {
  auto it = diffs_.find({axis, v});
  return it == diffs_.end() ? nullptr : &it->second;
}

namespace {
int total_deg(const std::vector<int>& v) {
  int t = 0;
  for (int x : v) t += x;
  return t;
}
}  // namespace

void Multicomplex::validate(int through) const {
  for (const auto& [v, dv] : dims_) {
    if (total_deg(v) > through) continue;
    for (int a = 0; a < axes_; ++a) {
      if (v[static_cast<size_t>(a)] < 1) continue;
      std::vector<int> va = v;
      va[static_cast<size_t>(a)] -= 1;
      const SparseMatrix* da = diff(a, v);
      // d^2 = 0 along the axis
      if (v[static_cast<size_t>(a)] >= 2 && da) {
        const SparseMatrix* da2 = diff(a, va);
        if (da2 && !(*da2 * *da).is_zero())
          fail(ErrKind::SignConventionViolation,
               "axis differential fails d^2 = 0");
      }
      for (int b = a + 1; b < axes_; ++b) {
        if (v[static_cast<size_t>(b)] < 1) continue;
        std::vector<int> vb = v;
        vb[static_cast<size_t>(b)] -= 1;
        const SparseMatrix* db = diff(b, v);
        const SparseMatrix* da_after = diff(a, vb);
        const SparseMatrix* db_after = diff(b, va);
        std::vector<int> vab = va;
        vab[static_cast<size_t>(b)] -= 1;
        Index rows = dim(vab), cols = dv;
        SparseMatrix lhs = SparseMatrix::zero(rows, cols, f_);
        SparseMatrix rhs = SparseMatrix::zero(rows, cols, f_);
        if (db_after && da) lhs = *db_after * *da;
        if (da_after && db) rhs = *da_after * *db;
        if (!(lhs == rhs))
          fail(ErrKind::SignConventionViolation,
               "grid differentials do not commute");
      }
    }
  }
}

TotalBasis total_basis(const Multicomplex& mc, int hi) {
  TotalBasis tb;
  for (const auto& [v, d] : mc.cells()) {
    int t = total_deg(v);
    if (t > hi || d == 0) continue;
    tb.cells_by_degree[t].push_back(v);
  }
  for (auto& [t, cells] : tb.cells_by_degree) {
    std::sort(cells.begin(), cells.end());
    Index off = 0;
    for (const auto& v : cells) {
      tb.offset[v] = off;
      off += mc.dim(v);
    }
  }
  return tb;
}

ChainComplex total_complex(const Multicomplex& mc, int hi, bool bounded_above,
                           Index budget) {
  mc.validate(hi);
  TotalBasis tb = total_basis(mc, hi);
  const Field& k = mc.field();
  std::map<int, Index> dims;
  for (const auto& [t, cells] : tb.cells_by_degree) {
    Index d = 0;
    for (const auto& v : cells) d += mc.dim(v);
    if (d > 0) dims[t] = d;
  }
  std::map<int, SparseMatrix> diffs;
  for (int n = 1; n <= hi; ++n) {
    auto src_it = tb.cells_by_degree.find(n);
    auto dst_it = tb.cells_by_degree.find(n - 1);
    if (src_it == tb.cells_by_degree.end() ||
        dst_it == tb.cells_by_degree.end())
      continue;
    Index src_dim = dims.count(n) ? dims[n] : 0;
    Index dst_dim = dims.count(n - 1) ? dims[n - 1] : 0;
    if (src_dim == 0 || dst_dim == 0) continue;
    SparseMatrix m(dst_dim, src_dim, k);
    Index nnz = 0;
    for (const auto& v : src_it->second) {
      Index src_off = tb.offset.at(v);
      int sign_acc = 1;
      for (int a = 0; a < mc.axes(); ++a) {
        if (v[static_cast<size_t>(a)] >= 1) {
          const SparseMatrix* da = mc.diff(a, v);
          std::vector<int> w = v;
          w[static_cast<size_t>(a)] -= 1;
          if (da && tb.offset.count(w)) {
            Index dst_off = tb.offset.at(w);
            Scalar s = sign_acc > 0 ? Scalar::one(k) : -Scalar::one(k);
            for (Index r = 0; r < da->rows(); ++r)
              for (const auto& [c, val] : da->row(r).e) {
                m.set(dst_off + r, src_off + c, s * val);
                ++nnz;
              }
            require(nnz <= budget, ErrKind::BudgetExceeded,
                    "total complex over nonzero budget");
          }
        }
        if (v[static_cast<size_t>(a)] % 2 == 1) sign_acc = -sign_acc;
      }
    }
    if (!m.is_zero()) diffs.emplace(n, std::move(m));
  }
  return ChainComplex(k, std::move(dims), std::move(diffs), 0, hi,
                      bounded_above);
}

}  // namespace eqhh
