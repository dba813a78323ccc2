#include "eqhh/catalog.h"

namespace eqhh {

namespace {

// two-dimensional algebra k[x]/(x^2 - c) with |x| = xdeg; c is 0 or 1
DGAlgebra two_dim(const std::string& name, int xdeg, int xsq, const Field& f) {
  DGAlgebra a;
  a.name = name;
  a.field = f;
  a.basis = {"1", "x"};
  a.deg = {0, xdeg};
  a.mult.assign(2, std::vector<SparseVec>(2));
  SparseVec one, x, xx;
  one.set(0, Scalar::one(f));
  x.set(1, Scalar::one(f));
  if (xsq == 1) xx.set(0, Scalar::one(f));
  a.mult[0][0] = one;
  a.mult[0][1] = x;
  a.mult[1][0] = x;
  a.mult[1][1] = xx;
  a.unit = one;
  a.d = SparseMatrix(2, 2, f);
  return a;
}

}  // namespace

AlgPtr make_ground(const Field& f) {
  DGAlgebra a;
  a.name = "k";
  a.field = f;
  a.basis = {"1"};
  a.deg = {0};
  a.mult.assign(1, std::vector<SparseVec>(1));
  a.mult[0][0].set(0, Scalar::one(f));
  a.unit.set(0, Scalar::one(f));
  a.d = SparseMatrix(1, 1, f);
  return std::make_shared<const DGAlgebra>(std::move(a));
}

AlgPtr make_dual_numbers(const Field& f) {
  return std::make_shared<const DGAlgebra>(two_dim("dual-numbers", 0, 0, f));
}

AlgPtr make_kz2(const Field& f) {
  return std::make_shared<const DGAlgebra>(two_dim("kZ2", 0, 1, f));
}

AlgPtr make_exterior(const Field& f) {
  return std::make_shared<const DGAlgebra>(two_dim("exterior", 1, 0, f));
}

AlgPtr make_kz3(const Field& f) {
  DGAlgebra a;
  a.name = "kZ3";
  a.field = f;
  a.basis = {"1", "t", "t2"};
  a.deg = {0, 0, 0};
  a.mult.assign(3, std::vector<SparseVec>(3));
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      a.mult[static_cast<size_t>(i)][static_cast<size_t>(j)].set(
          (i + j) % 3, Scalar::one(f));
  a.unit.set(0, Scalar::one(f));
  a.d = SparseMatrix(3, 3, f);
  return std::make_shared<const DGAlgebra>(std::move(a));
}

std::vector<GroupPtr> catalog_groups() {
  std::vector<GroupPtr> out;
  for (int n = 1; n <= 4; ++n)
    out.push_back(std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n)));
  out.push_back(std::make_shared<const FiniteGroup>(FiniteGroup::klein()));
  return out;
}

GroupPtr find_group(const std::string& name) {
  for (const auto& g : catalog_groups())
    if (g->name == name) return g;
  fail(ErrKind::InvalidInput, "unknown group: " + name);
}

std::vector<AlgPtr> catalog_algebras(const Field& f) {
  return {make_ground(f), make_dual_numbers(f), make_kz2(f), make_kz3(f),
          make_exterior(f)};
}

AlgPtr find_algebra(const std::string& name, const Field& f) {
  for (const auto& a : catalog_algebras(f))
    if (a->name == name) return a;
  fail(ErrKind::InvalidInput, "unknown algebra: " + name);
}

namespace {

// image of the order-2 automorphism under each group element, for the
// groups that map onto Z2: Z2 (g odd), Z4 (g odd powers), V4 (a and c)
bool order_two_pattern(const FiniteGroup& g, std::vector<char>& flip) {
  flip.assign(static_cast<size_t>(g.order()), 0);
  if (g.name == "Z2") {
    flip[1] = 1;
    return true;
  }
  if (g.name == "Z4") {
    flip[1] = flip[3] = 1;
    return true;
  }
  if (g.name == "V4") {
    flip[1] = flip[3] = 1;  // a and c flip, b fixes
    return true;
  }
  return false;
}

}  // namespace

std::vector<GAction> catalog_actions(GroupPtr g, AlgPtr a) {
  std::vector<GAction> out;
  out.push_back(GAction::trivial(g, a));
  std::vector<char> flip;
  if (!order_two_pattern(*g, flip)) return out;

  const Field& f = a->field;
  if (a->name == "dual-numbers" || a->name == "kZ2" ||
      a->name == "exterior") {
    SparseMatrix sigma = SparseMatrix::identity(2, f);
    sigma.set(1, 1, -Scalar::one(f));
    GAction act;
    act.name = "sign";
    act.group = g;
    act.alg = a;
    for (int i = 0; i < g->order(); ++i)
      act.rho.push_back(flip[static_cast<size_t>(i)]
                            ? sigma
                            : SparseMatrix::identity(2, f));
    act.validate_or_throw();
    out.push_back(std::move(act));
  }
  if (a->name == "kZ3") {
    SparseMatrix inv(3, 3, f);
    inv.set(0, 0, Scalar::one(f));
    inv.set(2, 1, Scalar::one(f));
    inv.set(1, 2, Scalar::one(f));
    GAction act;
    act.name = "inv";
    act.group = g;
    act.alg = a;
    for (int i = 0; i < g->order(); ++i)
      act.rho.push_back(flip[static_cast<size_t>(i)]
                            ? inv
                            : SparseMatrix::identity(3, f));
    act.validate_or_throw();
    out.push_back(std::move(act));
  }
  return out;
}

GAction find_action(GroupPtr g, AlgPtr a, const std::string& name) {
  for (auto& act : catalog_actions(g, a))
    if (act.name == name) return act;
  fail(ErrKind::InvalidInput, "unknown action " + name + " for group " +
                                  g->name + " on algebra " + a->name);
}

std::vector<GridPoint> catalog_grid(const Field& f, Index max_dim_a,
                                    int max_order) {
  std::vector<GridPoint> out;
  for (const auto& g : catalog_groups()) {
    if (g->order() > max_order) continue;
    for (const auto& a : catalog_algebras(f)) {
      if (a->dim() > max_dim_a) continue;
      for (auto& act : catalog_actions(g, a))
        out.push_back({g, a, std::move(act)});
    }
  }
  return out;
}

std::vector<CatalogEntry> catalog_listing(const Field& f) {
  std::vector<CatalogEntry> out;
  for (const auto& g : catalog_groups())
    out.push_back({"group", g->name,
                   "order " + std::to_string(g->order()) +
                       (g->is_abelian() ? ", abelian" : "")});
  for (const auto& a : catalog_algebras(f)) {
    std::string detail = "dim " + std::to_string(a->dim());
    detail += a->max_deg() > 0 ? ", graded" : ", degree 0";
    out.push_back({"algebra", a->name, detail});
  }
  for (const auto& g : catalog_groups())
    for (const auto& a : catalog_algebras(f))
      for (auto& act : catalog_actions(g, a))
        if (act.name != "trivial")
          out.push_back({"action", act.name,
                         g->name + " on " + a->name});
  return out;
}

}  // namespace eqhh
