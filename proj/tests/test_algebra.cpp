#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "eqhh/catalog.h"

using namespace eqhh;

namespace {

const Field Q = Field::rationals();

SparseVec bv(Index i, const Field& f = Q) {
  SparseVec v;
  v.set(i, Scalar::one(f));
  return v;
}

FiniteGroup sym3() {
  // permutations of {0,1,2}: e, r, r2, s, sr, sr2
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
  auto find = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  std::vector<std::vector<int>> mul(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c;
      for (int i = 0; i < 3; ++i)
        c[static_cast<size_t>(i)] =
            perms[static_cast<size_t>(a)][static_cast<size_t>(
                perms[static_cast<size_t>(b)][static_cast<size_t>(i)])];
      mul[static_cast<size_t>(a)][static_cast<size_t>(b)] = find(c);
    }
  return FiniteGroup::make("S3", {"e", "r", "r2", "s", "sr", "sr2"},
                           std::move(mul));
}

}  // namespace

TEST_CASE("cyclic and klein groups validate") {
  auto z4 = FiniteGroup::cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.id == 0);
  CHECK(z4.times(3, 2) == 1);
  CHECK(z4.inverse(1) == 3);
  CHECK(z4.is_abelian());
  CHECK(z4.element_index("g2") == 2);
  CHECK(z4.element_index("h") == -1);

  auto v4 = FiniteGroup::klein();
  CHECK(v4.order() == 4);
  for (int a = 0; a < 4; ++a) CHECK(v4.times(a, a) == 0);
  CHECK(v4.times(1, 2) == 3);
  CHECK(v4.is_abelian());

  auto s3 = sym3();
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
}

TEST_CASE("group table validation rejects broken tables") {
  // 2x2 table without an identity
  std::vector<std::vector<int>> bad = {{1, 0}, {0, 0}};
  CHECK_THROWS_AS(FiniteGroup::make("bad", {"a", "b"}, bad), EqhhError);
}

TEST_CASE("homomorphism counts between small groups") {
  auto z2 = FiniteGroup::cyclic(2);
  auto z3 = FiniteGroup::cyclic(3);
  auto z4 = FiniteGroup::cyclic(4);
  auto v4 = FiniteGroup::klein();
  CHECK(all_homomorphisms(z2, z2).size() == 2);
  CHECK(all_homomorphisms(z3, z2).size() == 1);
  CHECK(all_homomorphisms(z4, z2).size() == 2);
  CHECK(all_homomorphisms(v4, z2).size() == 4);
  CHECK(all_homomorphisms(z2, z4).size() == 2);
  CHECK(all_homomorphisms(z2, v4).size() == 4);
  CHECK(all_homomorphisms(z3, z3).size() == 3);
  for (const auto& imgs : all_homomorphisms(v4, v4))
    CHECK(is_homomorphism(v4, v4, imgs));
  CHECK(all_homomorphisms(v4, v4).size() == 16);
}

TEST_CASE("catalog algebras validate") {
  for (const auto& a : catalog_algebras(Q)) {
    CHECK_FALSE(a->validate().has_value());
    CHECK(a->unit_index() == 0);
  }
  // truncated polynomials with |x| = 0 are fine
  auto dual = make_dual_numbers(Q);
  CHECK(dual->dim() == 2);
  CHECK(dual->mul_vec(bv(1), bv(1)).is_zero());
  // and over F2 as well
  for (const auto& a : catalog_algebras(Field::prime_field(2)))
    CHECK_FALSE(a->validate().has_value());
}

TEST_CASE("validation catches a corrupted multiplication table") {
  DGAlgebra a = *make_kz3(Q);
  // break commutativity away from the unit: t2 * t != t * t2
  a.mult[2][1] = bv(1);
  auto v = a.validate();
  REQUIRE(v.has_value());
  CHECK(v->kind == ErrKind::InvalidAlgebra);
  CHECK(v->detail.find("commutativity") != std::string::npos);
  CHECK_THROWS_AS(a.validate_or_throw(), EqhhError);

  DGAlgebra b = *make_dual_numbers(Q);
  b.unit = SparseVec{};
  v = b.validate();
  REQUIRE(v.has_value());
  CHECK(v->detail.find("unit") != std::string::npos);
}

TEST_CASE("tensor algebra dimensions and relations") {
  auto dual = make_dual_numbers(Q);
  auto kz3 = make_kz3(Q);
  DGAlgebra t = tensor_algebra(*dual, *kz3);
  CHECK(t.dim() == dual->dim() * kz3->dim());
  CHECK_FALSE(t.validate().has_value());

  // x(x)y squares to zero in dual (x) dual
  DGAlgebra dd = tensor_algebra(*dual, *dual);
  SparseVec xy = outer(bv(1), bv(1), 2);
  CHECK(dd.mul_vec(xy, xy).is_zero());
  CHECK_FALSE(dd.validate().has_value());

  // unit of the tensor is 1(x)1
  CHECK(dd.unit == outer(bv(0), bv(0), 2));
}

TEST_CASE("koszul sign in the tensor of exterior algebras") {
  auto ext = make_exterior(Q);
  DGAlgebra ee = tensor_algebra(*ext, *ext);
  CHECK_FALSE(ee.validate().has_value());
  SparseVec x1 = outer(bv(1), bv(0), 2);  // x(x)1, degree 1
  SparseVec y1 = outer(bv(0), bv(1), 2);  // 1(x)y, degree 1
  SparseVec xy = ee.mul_vec(x1, y1);
  SparseVec yx = ee.mul_vec(y1, x1);
  CHECK(xy == outer(bv(1), bv(1), 2));
  SparseVec neg = xy;
  scale_vec(neg, -Scalar::one(Q));
  CHECK(yx == neg);
  CHECK(ee.mul_vec(xy, xy).is_zero());
}

TEST_CASE("group algebra of Z2 is kZ2") {
  auto z2 = FiniteGroup::cyclic(2);
  DGAlgebra ga = group_algebra(z2, Q);
  auto kz2 = make_kz2(Q);
  CHECK(ga.dim() == 2);
  CHECK(ga.deg == kz2->deg);
  CHECK(ga.unit == kz2->unit);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) CHECK(ga.mult[i][j] == kz2->mult[i][j]);
  CHECK_FALSE(ga.validate().has_value());
  CHECK(group_algebra(FiniteGroup::cyclic(3), Q).dim() == 3);

  CHECK_THROWS_AS(group_algebra(sym3(), Q), EqhhError);
  try {
    group_algebra(sym3(), Q);
  } catch (const EqhhError& e) {
    CHECK(e.kind() == ErrKind::NonAbelianGroup);
  }
}

TEST_CASE("unit basis form rewrites a non-basis unit") {
  // idempotent basis of kZ2 in characteristic 0: e0 = 1+x, e1 = 1-x
  // e0^2 = 2 e0, e1^2 = 2 e1, e0 e1 = 0, unit = (e0 + e1)/2
  DGAlgebra a;
  a.name = "idem";
  a.field = Q;
  a.basis = {"p", "q"};
  a.deg = {0, 0};
  a.mult.assign(2, std::vector<SparseVec>(2));
  SparseVec p2, q2;
  p2.set(0, Scalar::of_int(Q, 2));
  q2.set(1, Scalar::of_int(Q, 2));
  a.mult[0][0] = p2;
  a.mult[1][1] = q2;
  a.unit.set(0, Scalar::rational(1, 2));
  a.unit.set(1, Scalar::rational(1, 2));
  a.d = SparseMatrix(2, 2, Q);
  REQUIRE_FALSE(a.validate().has_value());
  CHECK(a.unit_index() == -1);

  auto form = unit_basis_form(std::make_shared<const DGAlgebra>(a));
  CHECK(form.alg->unit_index() == form.unit_idx);
  CHECK(form.to_new * form.from_new == SparseMatrix::identity(2, Q));
  // the transported product agrees with the original one
  SparseVec lhs = form.from_new.apply(
      form.alg->mul_vec(form.to_new.apply(bv(0)), form.to_new.apply(bv(1))));
  CHECK(lhs == a.mul_vec(bv(0), bv(1)));

  auto already = unit_basis_form(make_dual_numbers(Q));
  CHECK(already.unit_idx == 0);
  CHECK(already.to_new == SparseMatrix::identity(2, Q));
}

TEST_CASE("catalog actions satisfy the group law") {
  auto z4 = find_group("Z4");
  auto dual = find_algebra("dual-numbers", Q);
  GAction sign = find_action(z4, dual, "sign");
  CHECK_FALSE(sign.is_trivial());
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h)
      CHECK(sign.of(g) * sign.of(h) == sign.of(z4->times(g, h)));
  CHECK(GAction::trivial(z4, dual).is_trivial());

  auto kz3 = find_algebra("kZ3", Q);
  GAction inv = find_action(find_group("V4"), kz3, "inv");
  CHECK(inv.of(1).apply(bv(1)) == bv(2));  // a sends t to t^2

  // no sign action for Z3
  CHECK_THROWS_AS(find_action(find_group("Z3"), dual, "sign"), EqhhError);
}

TEST_CASE("invalid action is rejected") {
  auto z2 = find_group("Z2");
  auto dual = find_algebra("dual-numbers", Q);
  GAction bad;
  bad.name = "double";
  bad.group = z2;
  bad.alg = dual;
  SparseMatrix twice = SparseMatrix::identity(2, Q);
  twice.set(1, 1, Scalar::of_int(Q, 2));  // x -> 2x, an algebra map of order 3+
  bad.rho = {SparseMatrix::identity(2, Q), twice};
  try {
    bad.validate_or_throw();
    CHECK(false);
  } catch (const EqhhError& e) {
    CHECK(e.kind() == ErrKind::InvalidAction);
  }

  // x -> x + 1 is not even degree-preserving... it is, but breaks x^2 = 0
  SparseMatrix shift = SparseMatrix::identity(2, Q);
  shift.set(0, 1, Scalar::one(Q));
  GAction bad2;
  bad2.name = "shift";
  bad2.group = z2;
  bad2.alg = dual;
  bad2.rho = {SparseMatrix::identity(2, Q), shift};
  CHECK_THROWS_AS(bad2.validate_or_throw(), EqhhError);
}

TEST_CASE("twisted bimodule formulas") {
  auto z2 = find_group("Z2");

  // A = kZ2, sign action: (x (x) 1) . 1 = -x
  auto kz2 = find_algebra("kZ2", Q);
  auto aa = std::make_shared<const DGAlgebra>(tensor_algebra(*kz2, *kz2));
  GAction sign = find_action(z2, kz2, "sign");
  DGModule ag = twisted_bimodule(aa, kz2, sign, 1);
  ag.validate_or_throw();
  SparseVec x_tensor_1 = outer(bv(1), bv(0), 2);
  SparseVec neg_x = bv(1);
  scale_vec(neg_x, -Scalar::one(Q));
  CHECK(ag.act_vec(x_tensor_1, bv(0)) == neg_x);

  // A = dual numbers, sign action: (x (x) x) . 1 = -x^2 = 0
  auto dual = find_algebra("dual-numbers", Q);
  auto dd = std::make_shared<const DGAlgebra>(tensor_algebra(*dual, *dual));
  GAction dsign = find_action(z2, dual, "sign");
  DGModule dg = twisted_bimodule(dd, dual, dsign, 1);
  SparseVec x_tensor_x = outer(bv(1), bv(1), 2);
  CHECK(dg.act_vec(x_tensor_x, bv(0)).is_zero());

  // untwisted: (x (x) 1) . 1 = x
  DGModule ae = twisted_bimodule(dd, dual, dsign, 0);
  ae.validate_or_throw();
  CHECK(ae.act_vec(x_tensor_1, bv(0)) == bv(1));
  CHECK(ae.act_vec(dd->unit, bv(1)) == bv(1));
}

TEST_CASE("algebra complex of catalog algebras") {
  auto ext = make_exterior(Q);
  ChainComplex c = algebra_complex(*ext);
  BettiTable b = c.homology(1);
  CHECK(b.at(0) == 1);
  CHECK(b.at(1) == 1);

  auto kz3 = make_kz3(Q);
  CHECK(algebra_complex(*kz3).dim(0) == 3);
}

TEST_CASE("dg algebra with nonzero differential") {
  // koszul-style: basis 1, x, y, xy with |y| = 1, dy = x, x^2 = 0, y^2 = 0
  DGAlgebra a;
  a.name = "koszul";
  a.field = Q;
  a.basis = {"1", "x", "y", "xy"};
  a.deg = {0, 0, 1, 1};
  a.mult.assign(4, std::vector<SparseVec>(4));
  auto put = [&](Index i, Index j, const SparseVec& v) {
    a.mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
  };
  put(0, 0, bv(0));
  put(0, 1, bv(1));
  put(1, 0, bv(1));
  put(0, 2, bv(2));
  put(2, 0, bv(2));
  put(0, 3, bv(3));
  put(3, 0, bv(3));
  put(1, 2, bv(3));
  put(2, 1, bv(3));
  a.unit = bv(0);
  a.d = SparseMatrix(4, 4, Q);
  a.d.set(1, 2, Scalar::one(Q));  // dy = x
  REQUIRE_FALSE(a.validate().has_value());

  ChainComplex c = algebra_complex(a);
  BettiTable b = c.homology(1);
  CHECK(b.at(0) == 1);
  CHECK(b.at(1) == 1);

  // breaking Leibniz is caught: dy = 1 has the wrong degree... use d(xy) = 1
  DGAlgebra leib = a;
  leib.d.set(0, 3, Scalar::one(Q));
  auto v = leib.validate();
  REQUIRE(v.has_value());
}

TEST_CASE("catalog grid and listing") {
  auto grid = catalog_grid(Q);
  CHECK(grid.size() == 37);
  for (const auto& pt : grid) {
    CHECK(pt.group->order() <= 4);
    CHECK(pt.alg->dim() <= 3);
  }
  auto small = catalog_grid(Q, 2, 2);
  for (const auto& pt : small) CHECK(pt.alg->dim() <= 2);

  bool saw_dual = false, saw_kz2 = false, saw_sign = false;
  for (const auto& e : catalog_listing(Q)) {
    if (e.kind == "algebra" && e.name == "dual-numbers") saw_dual = true;
    if (e.kind == "algebra" && e.name == "kZ2") saw_kz2 = true;
    if (e.kind == "action" && e.name == "sign") saw_sign = true;
  }
  CHECK(saw_dual);
  CHECK(saw_kz2);
  CHECK(saw_sign);
}

TEST_CASE("solve and inverse helpers") {
  SparseMatrix m(3, 3, Q);
  m.set(0, 0, Scalar::of_int(Q, 2));
  m.set(0, 1, Scalar::one(Q));
  m.set(1, 1, Scalar::of_int(Q, 3));
  m.set(2, 2, Scalar::of_int(Q, -1));
  auto inv = try_inverse(m);
  REQUIRE(inv.has_value());
  CHECK(*inv * m == SparseMatrix::identity(3, Q));
  CHECK(m * *inv == SparseMatrix::identity(3, Q));

  SparseMatrix sing(2, 2, Q);
  sing.set(0, 0, Scalar::one(Q));
  sing.set(1, 0, Scalar::one(Q));
  CHECK_FALSE(try_inverse(sing).has_value());

  SparseVec b;
  b.set(0, Scalar::of_int(Q, 5));
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == b);

  SparseVec bad;
  bad.set(1, Scalar::one(Q));
  CHECK_FALSE(solve(sing, bad).has_value());
}
