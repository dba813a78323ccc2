#include "eqhh/algebra.h"

#include <algorithm>

namespace eqhh {

bool FiniteGroup::is_abelian() const {
  int n = order();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (times(a, b) != times(b, a)) return false;
  return true;
}

int FiniteGroup::element_index(const std::string& s) const {
  for (size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == s) return static_cast<int>(i);
  return -1;
}

FiniteGroup FiniteGroup::make(std::string name, std::vector<std::string> elems,
                              std::vector<std::vector<int>> mul) {
  FiniteGroup g;
  g.name = std::move(name);
  g.elems = std::move(elems);
  g.mul = std::move(mul);
  int n = g.order();
  require(n > 0, ErrKind::InvalidInput, "empty group");
  require(static_cast<int>(g.mul.size()) == n, ErrKind::InvalidInput,
          "multiplication table row count");
  for (const auto& row : g.mul) {
    require(static_cast<int>(row.size()) == n, ErrKind::InvalidInput,
            "multiplication table column count");
    for (int v : row)
      require(v >= 0 && v < n, ErrKind::InvalidInput,
              "multiplication table entry out of range");
  }
  g.id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = g.times(e, x) == x && g.times(x, e) == x;
    if (ok) {
      g.id = e;
      break;
    }
  }
  require(g.id >= 0, ErrKind::InvalidInput, "group has no identity");
  g.inv.assign(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.times(a, b) == g.id && g.times(b, a) == g.id) {
        g.inv[static_cast<size_t>(a)] = b;
        break;
      }
    require(g.inv[static_cast<size_t>(a)] >= 0, ErrKind::InvalidInput,
            "group element without inverse: " + g.elems[static_cast<size_t>(a)]);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(g.times(g.times(a, b), c) == g.times(a, g.times(b, c)),
                ErrKind::InvalidInput, "group multiplication not associative");
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  require(n >= 1, ErrKind::InvalidInput, "cyclic group order must be >= 1");
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i)
    elems.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g" + std::to_string(i)));
  std::vector<std::vector<int>> mul(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
  return make("Z" + std::to_string(n), std::move(elems), std::move(mul));
}

FiniteGroup FiniteGroup::klein() {
  // e a b c with a^2 = b^2 = c^2 = e and ab = c
  std::vector<std::vector<int>> mul = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return make("V4", {"e", "a", "b", "c"}, std::move(mul));
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h,
                     const std::vector<int>& imgs) {
  if (static_cast<int>(imgs.size()) != g.order()) return false;
  for (int v : imgs)
    if (v < 0 || v >= h.order()) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (imgs[static_cast<size_t>(g.times(a, b))] !=
          h.times(imgs[static_cast<size_t>(a)], imgs[static_cast<size_t>(b)]))
        return false;
  return true;
}

std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& g,
                                                const FiniteGroup& h) {
  int n = g.order(), m = h.order();
  std::vector<std::vector<int>> homs;
  std::vector<int> imgs(static_cast<size_t>(n), 0);
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= m;
    require(total <= 1'000'000, ErrKind::BudgetExceeded,
            "homomorphism search space too large");
  }
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (int i = 0; i < n; ++i) {
      imgs[static_cast<size_t>(i)] = static_cast<int>(c % m);
      c /= m;
    }
    if (is_homomorphism(g, h, imgs)) homs.push_back(imgs);
  }
  return homs;
}

int DGAlgebra::min_deg() const {
  return deg.empty() ? 0 : *std::min_element(deg.begin(), deg.end());
}

int DGAlgebra::max_deg() const {
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

SparseVec DGAlgebra::mul_vec(const SparseVec& a, const SparseVec& b) const {
  SparseVec acc;
  for (const auto& [i, ai] : a.e)
    for (const auto& [j, bj] : b.e)
      axpy(acc, ai * bj, mult[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return acc;
}

int DGAlgebra::unit_index() const {
  if (unit.nnz() != 1) return -1;
  return unit.e[0].second.is_one() ? static_cast<int>(unit.e[0].first) : -1;
}

namespace {
bool homogeneous_of_degree(const SparseVec& v, const std::vector<int>& deg,
                           int want) {
  for (const auto& [i, x] : v.e)
    if (deg[static_cast<size_t>(i)] != want) return false;
  return true;
}
}  // namespace

std::optional<Violation> DGAlgebra::validate() const {
  Index n = dim();
  if (n == 0) return Violation{ErrKind::InvalidAlgebra, "empty basis"};
  if (static_cast<Index>(deg.size()) != n ||
      static_cast<Index>(mult.size()) != n)
    return Violation{ErrKind::DimensionMismatch, "basis table sizes disagree"};
  for (const auto& row : mult)
    if (static_cast<Index>(row.size()) != n)
      return Violation{ErrKind::DimensionMismatch, "mult table row size"};
  if (d.rows() != n || d.cols() != n)
    return Violation{ErrKind::DimensionMismatch, "differential shape"};
  if (d.field() == field) {
  } else {
    return Violation{ErrKind::MixedFields, "differential field"};
  }
  if (unit.is_zero())
    return Violation{ErrKind::InvalidAlgebra, "unit is zero"};
  if (!homogeneous_of_degree(unit, deg, 0))
    return Violation{ErrKind::InvalidAlgebra, "unit not of degree 0"};

  auto basis_vec = [&](Index i) {
    SparseVec v;
    v.set(i, Scalar::one(field));
    return v;
  };

  for (Index i = 0; i < n; ++i) {
    // degree of products and of the differential
    for (Index j = 0; j < n; ++j) {
      const SparseVec& p = mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (!homogeneous_of_degree(p, deg,
                                 deg[static_cast<size_t>(i)] +
                                     deg[static_cast<size_t>(j)]))
        return Violation{ErrKind::InvalidAlgebra,
                         "product " + basis[static_cast<size_t>(i)] + "*" +
                             basis[static_cast<size_t>(j)] +
                             " not homogeneous of the right degree"};
    }
    SparseVec di = d.apply(basis_vec(i));
    if (!homogeneous_of_degree(di, deg, deg[static_cast<size_t>(i)] - 1))
      return Violation{ErrKind::InvalidAlgebra,
                       "differential not of degree -1 on " +
                           basis[static_cast<size_t>(i)]};
  }
  // unit laws
  for (Index i = 0; i < n; ++i) {
    SparseVec e = basis_vec(i);
    if (!(mul_vec(unit, e) == e) || !(mul_vec(e, unit) == e))
      return Violation{ErrKind::InvalidAlgebra,
                       "unit law fails on " + basis[static_cast<size_t>(i)]};
  }
  if (!d.apply(unit).is_zero())
    return Violation{ErrKind::InvalidAlgebra, "d(unit) != 0"};
  // graded commutativity
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      SparseVec ij = mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
      SparseVec ji = mult[static_cast<size_t>(j)][static_cast<size_t>(i)];
      bool odd = (deg[static_cast<size_t>(i)] % 2 != 0) &&
                 (deg[static_cast<size_t>(j)] % 2 != 0);
      if (odd) scale_vec(ji, -Scalar::one(field));
      if (!(ij == ji))
        return Violation{ErrKind::InvalidAlgebra,
                         "graded commutativity fails on (" +
                             basis[static_cast<size_t>(i)] + ", " +
                             basis[static_cast<size_t>(j)] + ")"};
    }
  // associativity
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) {
        SparseVec left = mul_vec(
            mult[static_cast<size_t>(i)][static_cast<size_t>(j)], basis_vec(k));
        SparseVec right = mul_vec(
            basis_vec(i), mult[static_cast<size_t>(j)][static_cast<size_t>(k)]);
        if (!(left == right))
          return Violation{ErrKind::InvalidAlgebra,
                           "associativity fails on (" +
                               basis[static_cast<size_t>(i)] + ", " +
                               basis[static_cast<size_t>(j)] + ", " +
                               basis[static_cast<size_t>(k)] + ")"};
      }
  // Leibniz
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      SparseVec lhs =
          d.apply(mult[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      SparseVec rhs = mul_vec(d.apply(basis_vec(i)), basis_vec(j));
      SparseVec second = mul_vec(basis_vec(i), d.apply(basis_vec(j)));
      Scalar sign = deg[static_cast<size_t>(i)] % 2 == 0
                        ? Scalar::one(field)
                        : -Scalar::one(field);
      axpy(rhs, sign, second);
      if (!(lhs == rhs))
        return Violation{ErrKind::InvalidAlgebra,
                         "Leibniz fails on (" + basis[static_cast<size_t>(i)] +
                             ", " + basis[static_cast<size_t>(j)] + ")"};
    }
  if (!(d * d).is_zero())
    return Violation{ErrKind::InvalidAlgebra, "d^2 != 0"};
  return std::nullopt;
}

void DGAlgebra::validate_or_throw() const {
  auto v = validate();
  if (v) fail(v->kind, name + ": " + v->detail);
}

GradedBasis graded_positions(const std::vector<int>& deg) {
  GradedBasis g;
  g.pos.resize(deg.size());
  for (size_t i = 0; i < deg.size(); ++i) {
    auto& slot = g.by_degree[deg[i]];
    g.pos[i] = {deg[i], static_cast<Index>(slot.size())};
    slot.push_back(static_cast<Index>(i));
  }
  return g;
}

ChainComplex algebra_complex(const DGAlgebra& a) {
  GradedBasis g = graded_positions(a.deg);
  std::map<int, Index> dims;
  for (const auto& [n, idxs] : g.by_degree)
    dims[n] = static_cast<Index>(idxs.size());
  std::map<int, SparseMatrix> diffs;
  for (const auto& [n, idxs] : g.by_degree) {
    auto below = g.by_degree.find(n - 1);
    if (below == g.by_degree.end()) continue;
    SparseMatrix m(static_cast<Index>(below->second.size()),
                   static_cast<Index>(idxs.size()), a.field);
    bool nonzero = false;
    for (size_t c = 0; c < idxs.size(); ++c) {
      SparseVec v;
      v.set(idxs[c], Scalar::one(a.field));
      for (const auto& [r, x] : a.d.apply(v).e) {
        m.set(g.pos[static_cast<size_t>(r)].second, static_cast<Index>(c), x);
        nonzero = true;
      }
    }
    if (nonzero) diffs.emplace(n, std::move(m));
  }
  return ChainComplex(a.field, std::move(dims), std::move(diffs), a.min_deg(),
                      a.max_deg(), true);
}

SparseVec outer(const SparseVec& a, const SparseVec& b, Index dim_b) {
  SparseVec v;
  for (const auto& [i, x] : a.e)
    for (const auto& [j, y] : b.e) v.e.emplace_back(i * dim_b + j, x * y);
  std::sort(v.e.begin(), v.e.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  return v;
}

DGAlgebra tensor_algebra(const DGAlgebra& a, const DGAlgebra& b) {
  require(a.field == b.field, ErrKind::MixedFields,
          "tensor algebra fields disagree");
  DGAlgebra t;
  t.name = a.name + "(x)" + b.name;
  t.field = a.field;
  Index na = a.dim(), nb = b.dim();
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) {
      t.basis.push_back(a.basis[static_cast<size_t>(i)] + "(x)" +
                        b.basis[static_cast<size_t>(j)]);
      t.deg.push_back(a.deg[static_cast<size_t>(i)] +
                      b.deg[static_cast<size_t>(j)]);
    }
  t.mult.assign(static_cast<size_t>(na * nb),
                std::vector<SparseVec>(static_cast<size_t>(na * nb)));
  for (Index i1 = 0; i1 < na; ++i1)
    for (Index j1 = 0; j1 < nb; ++j1)
      for (Index i2 = 0; i2 < na; ++i2)
        for (Index j2 = 0; j2 < nb; ++j2) {
          const SparseVec& pa =
              a.mult[static_cast<size_t>(i1)][static_cast<size_t>(i2)];
          const SparseVec& pb =
              b.mult[static_cast<size_t>(j1)][static_cast<size_t>(j2)];
          SparseVec prod = outer(pa, pb, nb);
          bool odd = (b.deg[static_cast<size_t>(j1)] % 2 != 0) &&
                     (a.deg[static_cast<size_t>(i2)] % 2 != 0);
          if (odd) scale_vec(prod, -Scalar::one(t.field));
          t.mult[static_cast<size_t>(i1 * nb + j1)]
                [static_cast<size_t>(i2 * nb + j2)] = std::move(prod);
        }
  t.unit = outer(a.unit, b.unit, nb);
  t.d = SparseMatrix(na * nb, na * nb, t.field);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < nb; ++j) {
      SparseVec ei, ej;
      ei.set(i, Scalar::one(t.field));
      ej.set(j, Scalar::one(t.field));
      SparseVec da = outer(a.d.apply(ei), ej, nb);
      SparseVec db = outer(ei, b.d.apply(ej), nb);
      Scalar sign = a.deg[static_cast<size_t>(i)] % 2 == 0
                        ? Scalar::one(t.field)
                        : -Scalar::one(t.field);
      axpy(da, sign, db);
      for (const auto& [r, x] : da.e) t.d.set(r, i * nb + j, x);
    }
  return t;
}

DGAlgebra group_algebra(const FiniteGroup& g, const Field& f) {
  require(g.is_abelian(), ErrKind::NonAbelianGroup,
          "group algebra coefficients must be commutative: " + g.name);
  DGAlgebra a;
  a.name = "k[" + g.name + "]";
  a.field = f;
  int n = g.order();
  for (int i = 0; i < n; ++i) {
    a.basis.push_back(g.elems[static_cast<size_t>(i)]);
    a.deg.push_back(0);
  }
  a.mult.assign(static_cast<size_t>(n), std::vector<SparseVec>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SparseVec v;
      v.set(g.times(i, j), Scalar::one(f));
      a.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = std::move(v);
    }
  a.unit.set(g.id, Scalar::one(f));
  a.d = SparseMatrix(n, n, f);
  return a;
}

UnitBasisForm unit_basis_form(AlgPtr a) {
  UnitBasisForm out;
  int ui = a->unit_index();
  Index n = a->dim();
  if (ui >= 0) {
    out.alg = a;
    out.to_new = SparseMatrix::identity(n, a->field);
    out.from_new = SparseMatrix::identity(n, a->field);
    out.unit_idx = ui;
    return out;
  }
  // swap basis vector i0 for the unit, i0 = first coordinate in its support
  Index i0 = a->unit.e[0].first;
  SparseMatrix from_new = SparseMatrix::identity(n, a->field);
  for (Index r = 0; r < n; ++r) from_new.set(r, i0, a->unit.get(r, a->field));
  auto inv = try_inverse(from_new);
  require(inv.has_value(), ErrKind::InvalidAlgebra,
          "unit change of basis not invertible");
  DGAlgebra b;
  b.name = a->name + "#unitbasis";
  b.field = a->field;
  b.basis = a->basis;
  b.basis[static_cast<size_t>(i0)] = "1";
  b.deg = a->deg;
  b.mult.assign(static_cast<size_t>(n), std::vector<SparseVec>(static_cast<size_t>(n)));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      SparseVec fi = from_new.apply(SparseVec{{{i, Scalar::one(a->field)}}});
      SparseVec fj = from_new.apply(SparseVec{{{j, Scalar::one(a->field)}}});
      b.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          inv->apply(a->mul_vec(fi, fj));
    }
  b.unit.set(i0, Scalar::one(a->field));
  b.d = *inv * a->d * from_new;
  b.validate_or_throw();
  out.alg = std::make_shared<const DGAlgebra>(std::move(b));
  out.to_new = *inv;
  out.from_new = from_new;
  out.unit_idx = static_cast<int>(i0);
  return out;
}

bool GAction::is_trivial() const {
  for (const auto& m : rho)
    if (!(m == SparseMatrix::identity(alg->dim(), alg->field))) return false;
  return true;
}

GAction GAction::trivial(GroupPtr g, AlgPtr a) {
  GAction act;
  act.name = "trivial";
  act.group = std::move(g);
  act.alg = std::move(a);
  for (int i = 0; i < act.group->order(); ++i)
    act.rho.push_back(SparseMatrix::identity(act.alg->dim(), act.alg->field));
  return act;
}

void check_algebra_hom(const DGAlgebra& src, const DGAlgebra& dst,
                       const SparseMatrix& m) {
  require(m.field() == src.field && src.field == dst.field,
          ErrKind::MixedFields, "algebra hom field mismatch");
  require(m.rows() == dst.dim() && m.cols() == src.dim(),
          ErrKind::DimensionMismatch, "algebra hom shape");
  require(m.apply(src.unit) == dst.unit, ErrKind::InvalidAction,
          "algebra hom does not preserve the unit");
  for (Index r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r).e)
      require(dst.deg[static_cast<size_t>(r)] ==
                  src.deg[static_cast<size_t>(c)],
              ErrKind::InvalidAction, "algebra hom does not preserve degree");
  require(m * src.d == dst.d * m, ErrKind::InvalidAction,
          "algebra hom does not commute with d");
  for (Index i = 0; i < src.dim(); ++i)
    for (Index j = 0; j < src.dim(); ++j) {
      SparseVec ei, ej;
      ei.set(i, Scalar::one(src.field));
      ej.set(j, Scalar::one(src.field));
      SparseVec lhs = m.apply(
          src.mult[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      SparseVec rhs = dst.mul_vec(m.apply(ei), m.apply(ej));
      require(lhs == rhs, ErrKind::InvalidAction,
              "algebra hom does not preserve products at (" +
                  src.basis[static_cast<size_t>(i)] + ", " +
                  src.basis[static_cast<size_t>(j)] + ")");
    }
}

void GAction::validate_or_throw() const {
  require(group && alg, ErrKind::InvalidAction, "action missing group or algebra");
  require(static_cast<int>(rho.size()) == group->order(),
          ErrKind::InvalidAction, "action table size");
  Index n = alg->dim();
  require(of(group->id) == SparseMatrix::identity(n, alg->field),
          ErrKind::InvalidAction, "rho(e) != id");
  for (int g = 0; g < group->order(); ++g) {
    check_algebra_hom(*alg, *alg, of(g));
    for (int h = 0; h < group->order(); ++h)
      require(of(g) * of(h) == of(group->times(g, h)), ErrKind::InvalidAction,
              "rho(g)rho(h) != rho(gh) at (" + group->elems[static_cast<size_t>(g)] +
                  ", " + group->elems[static_cast<size_t>(h)] + ")");
  }
}

SparseVec DGModule::act_vec(const SparseVec& r, const SparseVec& m) const {
  SparseVec acc;
  for (const auto& [i, ri] : r.e)
    for (const auto& [j, mj] : m.e)
      axpy(acc, ri * mj, act[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return acc;
}

void DGModule::validate_or_throw() const {
  require(ring != nullptr, ErrKind::InvalidAction, "module without ring");
  Index nr = ring->dim(), nm = dim();
  require(static_cast<Index>(act.size()) == nr, ErrKind::DimensionMismatch,
          "module action table rows");
  for (const auto& row : act)
    require(static_cast<Index>(row.size()) == nm, ErrKind::DimensionMismatch,
            "module action table cols");
  require(d.rows() == nm && d.cols() == nm, ErrKind::DimensionMismatch,
          "module differential shape");
  const Field& f = ring->field;
  auto basis_vec = [&](Index i) {
    SparseVec v;
    v.set(i, Scalar::one(f));
    return v;
  };
  for (Index j = 0; j < nm; ++j)
    require(act_vec(ring->unit, basis_vec(j)) == basis_vec(j),
            ErrKind::InvalidAction, "module unit law fails");
  for (Index i = 0; i < nr; ++i)
    for (Index j = 0; j < nr; ++j)
      for (Index k = 0; k < nm; ++k) {
        SparseVec lhs = act_vec(
            ring->mult[static_cast<size_t>(i)][static_cast<size_t>(j)],
            basis_vec(k));
        SparseVec rhs = act_vec(
            basis_vec(i),
            act[static_cast<size_t>(j)][static_cast<size_t>(k)]);
        require(lhs == rhs, ErrKind::InvalidAction,
                "module associativity fails");
      }
  for (Index i = 0; i < nr; ++i)
    for (Index k = 0; k < nm; ++k) {
      // degree bookkeeping
      for (const auto& [r, x] : act[static_cast<size_t>(i)][static_cast<size_t>(k)].e)
        require(deg[static_cast<size_t>(r)] ==
                    ring->deg[static_cast<size_t>(i)] + deg[static_cast<size_t>(k)],
                ErrKind::InvalidAction, "module action degree mismatch");
      // Leibniz
      SparseVec lhs =
          d.apply(act[static_cast<size_t>(i)][static_cast<size_t>(k)]);
      SparseVec rhs = act_vec(ring->d.apply(basis_vec(i)), basis_vec(k));
      Scalar sign = ring->deg[static_cast<size_t>(i)] % 2 == 0
                        ? Scalar::one(f)
                        : -Scalar::one(f);
      axpy(rhs, sign, act_vec(basis_vec(i), d.apply(basis_vec(k))));
      require(lhs == rhs, ErrKind::InvalidAction, "module Leibniz fails");
    }
  require((d * d).is_zero(), ErrKind::InvalidAction, "module d^2 != 0");
}

DGModule module_from_hom(AlgPtr r, AlgPtr a, const SparseMatrix& hom) {
  check_algebra_hom(*r, *a, hom);
  DGModule m;
  m.ring = r;
  m.deg = a->deg;
  m.d = a->d;
  Index nr = r->dim(), na = a->dim();
  m.act.assign(static_cast<size_t>(nr), std::vector<SparseVec>(static_cast<size_t>(na)));
  for (Index i = 0; i < nr; ++i) {
    SparseVec ei;
    ei.set(i, Scalar::one(r->field));
    SparseVec img = hom.apply(ei);
    for (Index j = 0; j < na; ++j) {
      SparseVec ej;
      ej.set(j, Scalar::one(a->field));
      m.act[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          a->mul_vec(img, ej);
    }
  }
  return m;
}

SparseMatrix twist_hom(const DGAlgebra& aa, const DGAlgebra& a,
                       const GAction& act, int g) {
  Index n = a.dim();
  require(aa.dim() == n * n, ErrKind::DimensionMismatch,
          "twist hom expects the square tensor algebra");
  SparseMatrix m(n, n * n, a.field);
  for (Index i = 0; i < n; ++i) {
    SparseVec ei;
    ei.set(i, Scalar::one(a.field));
    SparseVec gi = act.of(g).apply(ei);
    for (Index j = 0; j < n; ++j) {
      SparseVec ej;
      ej.set(j, Scalar::one(a.field));
      SparseVec img = a.mul_vec(gi, ej);
      for (const auto& [r, x] : img.e) m.set(r, i * n + j, x);
    }
  }
  return m;
}

DGModule twisted_bimodule(AlgPtr aa, AlgPtr a, const GAction& act, int g) {
  require(act.alg == a || act.alg->name == a->name, ErrKind::InvalidAction,
          "twisted bimodule action algebra mismatch");
  require(g >= 0 && g < act.group->order(), ErrKind::InvalidInput,
          "twist element out of range");
  return module_from_hom(aa, a, twist_hom(*aa, *a, act, g));
}

}  // namespace eqhh
