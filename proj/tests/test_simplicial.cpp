#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqhh/catalog.h"
#include "eqhh/simplicial.h"

using namespace eqhh;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime_field(2);

SSPtr two_points() {
  SimplicialSet s;
  s.name = "S0";
  s.top = 0;
  s.complete = true;
  s.labels = {{"p", "q"}};
  s.face = {{}};
  s.validate_or_throw();
  return std::make_shared<const SimplicialSet>(std::move(s));
}

SSPtr empty_set() {
  SimplicialSet s;
  s.name = "empty";
  s.top = 0;
  s.complete = true;
  s.labels = {{}};
  s.face = {{}};
  return std::make_shared<const SimplicialSet>(std::move(s));
}

// map from the 2-point set to the endpoints of an interval-like space
SimplicialMap endpoints(SSPtr a, SSPtr x, Index v0, Index v1) {
  SimplicialMap m;
  m.src = a;
  m.dst = x;
  m.img = {{nondeg(0, v0), nondeg(0, v1)}};
  m.validate_or_throw();
  return m;
}

std::vector<Index> betti_vec(const BettiTable& b, int n) {
  std::vector<Index> v;
  for (int i = 0; i <= n; ++i) v.push_back(b.at(i));
  return v;
}

using IV = std::vector<Index>;

}  // namespace

TEST_CASE("degeneracy word arithmetic") {
  // s_1 s_2 = s_3 s_1
  CHECK(word_insert({2}, 1) == std::vector<int>{3, 1});
  CHECK(word_insert({}, 0) == std::vector<int>{0});
  CHECK(word_insert({2, 0}, 1) == std::vector<int>{3, 1, 0});
  CHECK(word_insert({1, 0}, 4) == std::vector<int>{4, 1, 0});
}

TEST_CASE("standard models validate with documented counts") {
  auto pt = standard_model("point");
  CHECK(pt->count(0) == 1);
  CHECK(pt->total_nondeg() == 1);
  CHECK(pt->complete);

  auto circle = standard_model("circle");
  CHECK(circle->count(0) == 1);
  CHECK(circle->count(1) == 1);
  // total q-simplices including degenerate ones is q+1
  for (int q = 0; q <= 5; ++q)
    CHECK(circle->all_simplices(q).size() == static_cast<size_t>(q) + 1);

  auto ival = standard_model("interval");
  CHECK(ival->count(0) == 2);
  CHECK(ival->count(1) == 1);

  auto d2 = standard_model("delta2");
  CHECK(d2->count(2) == 1);
  CHECK(d2->count(1) == 3);
  for (const auto& n : standard_model_names())
    CHECK(standard_model(n)->complete);
}

TEST_CASE("faces degeneracies and vertices through the EZ encoding") {
  auto d2 = standard_model("delta2");
  Simplex t = nondeg(2, 0);
  CHECK(d2->leading_edge(t) == nondeg(1, 0));               // e01
  CHECK(d2->vertex_of(t, 0) == nondeg(0, 0));
  CHECK(d2->vertex_of(t, 2) == nondeg(0, 2));
  CHECK(d2->vertex_of(nondeg(1, 1), 1) == nondeg(0, 2));    // e02 target

  // d_i s_i = id and d_{i+1} s_i = id on degenerate simplices
  auto circle = standard_model("circle");
  Simplex e = nondeg(1, 0);
  Simplex se = circle->degeneracy_of(e, 0);   // s_0 e
  CHECK(se.dim() == 2);
  CHECK(circle->face_of(se, 0) == e);
  CHECK(circle->face_of(se, 1) == e);
  // d_2 s_0 e = s_0 d_1 e = s_0 v
  Simplex v = nondeg(0, 0);
  CHECK(circle->face_of(se, 2) == circle->degeneracy_of(v, 0));

  // leading edge of a twice degenerate vertex is degenerate
  Simplex vv = circle->degeneracy_of(circle->degeneracy_of(v, 0), 0);
  CHECK(circle->leading_edge(vv).is_degenerate());
}

TEST_CASE("validation catches corrupted face pointers") {
  {
    SimplicialSet bad = *standard_model("delta2");
    bad.face[2][0][0] = nondeg(1, 0);  // d0 t should be e12
    CHECK_THROWS_AS(bad.validate_or_throw(), EqhhError);
  }
  {
    SimplicialSet bad = *standard_model("delta2");
    bad.face[1][2][0] = nondeg(0, 0);  // d0 e12 should be v2
    CHECK_THROWS_AS(bad.validate_or_throw(), EqhhError);
  }
  {
    SimplicialSet bad = *standard_model("interval");
    bad.face[1][0][0] = nondeg(0, 5);  // dangling reference
    CHECK_THROWS_AS(bad.validate_or_throw(), EqhhError);
  }
}

TEST_CASE("simplicial homology of the standard models") {
  CHECK(betti_vec(simplicial_homology(*standard_model("point"), Q, 2), 2) ==
        IV{1, 0, 0});
  CHECK(betti_vec(simplicial_homology(*standard_model("circle"), Q, 2), 2) ==
        IV{1, 1, 0});
  CHECK(betti_vec(simplicial_homology(*standard_model("interval"), Q, 1), 1) ==
        IV{1, 0});
  CHECK(betti_vec(simplicial_homology(*standard_model("two-intervals-circle"),
                                      Q, 1), 1) == IV{1, 1});
  CHECK(betti_vec(simplicial_homology(*standard_model("delta2"), Q, 2), 2) ==
        IV{1, 0, 0});
  CHECK(betti_vec(simplicial_homology(*standard_model("boundary-delta2"), Q,
                                      2), 2) == IV{1, 1, 0});
  CHECK(betti_vec(simplicial_homology(*standard_model("sphere2"), Q, 3), 3) ==
        IV{1, 0, 1, 0});
  CHECK(betti_vec(simplicial_homology(*standard_model("sphere3"), F2, 3), 3) ==
        IV{1, 0, 0, 1});
}

TEST_CASE("total space of the trivial cocycle is a product") {
  auto circle = standard_model("circle");
  auto z2 = find_group("Z2");
  GSimplicialSet y = total_space(BundleCocycle::trivial(circle, z2));
  CHECK(y.space->count(0) == 2);
  CHECK(y.space->count(1) == 2);
  CHECK(y.is_free());
  // disjoint double circle
  CHECK(betti_vec(simplicial_homology(*y.space, Q, 1), 1) == IV{2, 2});

  // a point gives the discrete G-set G
  auto pt_total =
      total_space(BundleCocycle::trivial(standard_model("point"), z2));
  CHECK(pt_total.space->count(0) == 2);
  CHECK(pt_total.is_free());
}

TEST_CASE("twisted total space over the circle is a connected double cover") {
  auto circle = standard_model("circle");
  auto z2 = find_group("Z2");
  BundleCocycle c = BundleCocycle::trivial(circle, z2);
  c.lambda = {1};
  c.validate_or_throw();
  GSimplicialSet y = total_space(c);
  CHECK(y.is_free());
  CHECK(betti_vec(simplicial_homology(*y.space, Q, 1), 1) == IV{1, 1});
}

TEST_CASE("twisting identities") {
  auto d2 = standard_model("delta2");
  auto z2 = find_group("Z2");
  BundleCocycle c = BundleCocycle::trivial(d2, z2);
  c.lambda = {1, 1, 0};  // e01 -> g, e02 -> g, e12 -> e
  c.validate_or_throw();
  CHECK_FALSE(twisting_identities_check(c).has_value());

  BundleCocycle corrupt = c;
  corrupt.lambda = {1, 0, 0};  // breaks the cocycle condition on t
  CHECK_THROWS_AS(corrupt.validate_or_throw(), EqhhError);
  auto viol = twisting_identities_check(corrupt);
  REQUIRE(viol.has_value());
  CHECK(viol->find("t") != std::string::npos);

  auto z1 = find_group("Z1");
  CHECK_FALSE(
      twisting_identities_check(BundleCocycle::trivial(d2, z1)).has_value());
}

TEST_CASE("pushout glues two intervals into a circle") {
  auto a = two_points();
  auto x = standard_model("interval");
  auto y = standard_model("interval");
  // p -> v0, q -> v1 on both sides
  auto f = endpoints(a, x, 0, 1);
  auto g = endpoints(a, y, 0, 1);
  PushoutResult p = pushout(f, g);
  CHECK(p.space->count(0) == 2);
  CHECK(p.space->count(1) == 2);
  CHECK(betti_vec(simplicial_homology(*p.space, Q, 1), 1) == IV{1, 1});

  // merged cocycle carries the holonomy
  auto z2 = find_group("Z2");
  BundleCocycle cx = BundleCocycle::trivial(x, z2);
  cx.lambda = {1};
  BundleCocycle cy = BundleCocycle::trivial(y, z2);
  BundleCocycle glued = glue_cocycles(p, f, g, cx, cy);
  int total_holonomy = z2->times(glued.lambda[0], glued.lambda[1]);
  CHECK(total_holonomy == 1);
}

TEST_CASE("pushout along the identity returns the other leg") {
  auto a = standard_model("interval");
  auto y = standard_model("delta2");
  SimplicialMap f = SimplicialMap::identity(a);
  // embed the interval as edge e01 of the triangle
  SimplicialMap g;
  g.src = a;
  g.dst = y;
  g.img = {{nondeg(0, 0), nondeg(0, 1)}, {nondeg(1, 0)}};
  g.validate_or_throw();
  PushoutResult p = pushout(f, g);
  for (int n = 0; n <= 2; ++n) CHECK(p.space->count(n) == y->count(n));
  CHECK(betti_vec(simplicial_homology(*p.space, Q, 2), 2) == IV{1, 0, 0});
}

TEST_CASE("pushout over the empty set is a disjoint union") {
  auto a = empty_set();
  auto x = standard_model("circle");
  auto y = standard_model("point");
  SimplicialMap f{a, x, {{}}};
  SimplicialMap g{a, y, {{}}};
  PushoutResult p = pushout(f, g);
  CHECK(betti_vec(simplicial_homology(*p.space, Q, 1), 1) == IV{2, 1});
}

TEST_CASE("pushout rejects a non-cofibration first leg") {
  auto a = standard_model("interval");
  auto pt = standard_model("point");
  SimplicialMap collapse;
  collapse.src = a;
  collapse.dst = pt;
  collapse.img = {{nondeg(0, 0), nondeg(0, 0)},
                  {Simplex{{0}, 0, 0}}};  // edge to degenerate point
  collapse.validate_or_throw();
  CHECK_THROWS_AS(pushout(collapse, SimplicialMap::identity(a)), EqhhError);
}

TEST_CASE("cocycle mismatch on glued edges is rejected") {
  auto a = standard_model("interval");
  SimplicialMap f = SimplicialMap::identity(a);
  PushoutResult p = pushout(f, f);
  auto z2 = find_group("Z2");
  BundleCocycle cx = BundleCocycle::trivial(a, z2);
  cx.lambda = {1};
  BundleCocycle cy = BundleCocycle::trivial(a, z2);
  try {
    glue_cocycles(p, f, f, cx, cy);
    CHECK(false);
  } catch (const EqhhError& e) {
    CHECK(e.kind() == ErrKind::CocycleMismatch);
  }
}

TEST_CASE("nerve of small groups") {
  auto z2 = FiniteGroup::cyclic(2);
  SSPtr b = nerve(z2, 4);
  for (int n = 0; n <= 4; ++n) CHECK(b->count(n) == 1);
  CHECK(betti_vec(simplicial_homology(*b, Q, 3), 3) == IV{1, 0, 0, 0});
  CHECK(betti_vec(simplicial_homology(*b, F2, 3), 3) == IV{1, 1, 1, 1});

  SSPtr b1 = nerve(FiniteGroup::cyclic(1), 3);
  CHECK(b1->complete);
  CHECK(b1->count(0) == 1);
  CHECK(b1->count(1) == 0);

  SSPtr b3 = nerve(FiniteGroup::cyclic(3), 3);
  CHECK(b3->count(1) == 2);
  CHECK(b3->count(2) == 4);
  CHECK(b3->count(3) == 8);
  CHECK(betti_vec(simplicial_homology(*b3, Q, 2), 2) == IV{1, 0, 0});
}

TEST_CASE("action groupoid nerve for the identity map is contractible") {
  auto z2 = find_group("Z2");
  GSimplicialSet eg = action_groupoid_nerve(z2, z2, {0, 1}, 4);
  CHECK(eg.is_free());
  for (int n = 0; n <= 4; ++n) CHECK(eg.space->count(n) == 2);
  CHECK(betti_vec(simplicial_homology(*eg.space, F2, 3), 3) == IV{1, 0, 0, 0});
  CHECK(betti_vec(simplicial_homology(*eg.space, Q, 3), 3) == IV{1, 0, 0, 0});

  // trivial homomorphism Z2 -> Z2 gives two disjoint copies of BZ2
  GSimplicialSet tr = action_groupoid_nerve(z2, z2, {0, 0}, 3);
  CHECK(betti_vec(simplicial_homology(*tr.space, F2, 2), 2) == IV{2, 2, 2});

  CHECK_THROWS_AS(action_groupoid_nerve(find_group("Z3"), z2, {0, 1}, 2),
                  EqhhError);
}

TEST_CASE("homotopy quotient of a point is the classifying space") {
  auto z2 = find_group("Z2");
  GSimplicialSet fixed{standard_model("point"), z2, {{{0, 0}}}};
  fixed.validate_or_throw();
  SSPtr bz2 = homotopy_quotient(fixed, 4);
  for (int n = 0; n <= 4; ++n) CHECK(bz2->count(n) == 1);
  CHECK(betti_vec(simplicial_homology(*bz2, F2, 3), 3) == IV{1, 1, 1, 1});
  CHECK(betti_vec(simplicial_homology(*bz2, Q, 3), 3) == IV{1, 0, 0, 0});
}

TEST_CASE("homotopy quotient of a free action is the strict quotient") {
  auto z2 = find_group("Z2");
  // G acting on itself: total space of the trivial bundle over a point
  GSimplicialSet eg =
      total_space(BundleCocycle::trivial(standard_model("point"), z2));
  SSPtr c = homotopy_quotient(eg, 4);
  CHECK(betti_vec(simplicial_homology(*c, F2, 3), 3) == IV{1, 0, 0, 0});
  CHECK(betti_vec(simplicial_homology(*c, Q, 3), 3) == IV{1, 0, 0, 0});

  // Borel construction on the twisted double cover recovers the circle
  auto circle = standard_model("circle");
  BundleCocycle tw = BundleCocycle::trivial(circle, z2);
  tw.lambda = {1};
  SSPtr borel = homotopy_quotient(total_space(tw), 4);
  CHECK(betti_vec(simplicial_homology(*borel, Q, 3), 3) == IV{1, 1, 0, 0});
  CHECK(betti_vec(simplicial_homology(*borel, F2, 3), 3) == IV{1, 1, 0, 0});
}

TEST_CASE("homotopy quotient by the trivial group is the space itself") {
  auto z1 = find_group("Z1");
  auto s = standard_model("boundary-delta2");
  GSimplicialSet y{s, z1, {{{0}, {1}, {2}}, {{0}, {1}, {2}}}};
  y.validate_or_throw();
  SSPtr q = homotopy_quotient(y, 2);
  CHECK(betti_vec(simplicial_homology(*q, Q, 1), 1) ==
        betti_vec(simplicial_homology(*s, Q, 1), 1));
}

TEST_CASE("coboundary and pullback of cocycles") {
  auto z4 = find_group("Z4");
  auto circle = standard_model("circle");
  BundleCocycle c = BundleCocycle::trivial(circle, z4);
  c.lambda = {1};
  // conjugating at the unique vertex: g -> k g k^{-1} = g for abelian G
  BundleCocycle cb = coboundary(c, {3});
  CHECK(cb.lambda == c.lambda);

  // on the two-interval circle a coboundary moves holonomy between edges
  auto tic = standard_model("two-intervals-circle");
  BundleCocycle d = BundleCocycle::trivial(tic, z4);
  d.lambda = {1, 0};
  BundleCocycle db = coboundary(d, {1, 0});
  int before = z4->times(d.lambda[0], d.lambda[1]);
  int after = z4->times(db.lambda[0], db.lambda[1]);
  CHECK(before == after);
  CHECK(db.lambda != d.lambda);

  BundleCocycle back = pullback_cocycle(SimplicialMap::identity(tic), db);
  CHECK(back.lambda == db.lambda);

  // pullback along a non-isomorphism is rejected
  SimplicialMap collapse;
  collapse.src = standard_model("interval");
  collapse.dst = standard_model("point");
  collapse.img = {{nondeg(0, 0), nondeg(0, 0)}, {Simplex{{0}, 0, 0}}};
  BundleCocycle pc = BundleCocycle::trivial(standard_model("point"), z4);
  CHECK_THROWS_AS(pullback_cocycle(collapse, pc), EqhhError);
}

TEST_CASE("transport between coboundary-related total spaces") {
  auto z2 = find_group("Z2");
  auto tic = standard_model("two-intervals-circle");
  BundleCocycle c = BundleCocycle::trivial(tic, z2);
  c.lambda = {1, 0};
  std::vector<int> kappa = {1, 0};
  SimplicialMap phi = transport_total_map(c, kappa);
  CHECK(phi.is_isomorphism());

  // the bijection is equivariant for the right action
  GSimplicialSet y = total_space(c);
  GSimplicialSet y2 = total_space(coboundary(c, kappa));
  for (int n = 0; n <= 1; ++n)
    for (Index i = 0; i < y.space->count(n); ++i)
      for (int g = 0; g < 2; ++g) {
        Index lhs = phi.img[static_cast<size_t>(n)]
                           [static_cast<size_t>(y.act_cell(n, i, g))].core_id;
        Index rhs = y2.act_cell(
            n, phi.img[static_cast<size_t>(n)][static_cast<size_t>(i)].core_id,
            g);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("G-object validation rejects a corrupted action table") {
  auto z2 = find_group("Z2");
  GSimplicialSet y =
      total_space(BundleCocycle::trivial(standard_model("circle"), z2));
  GSimplicialSet bad = y;
  bad.act[1][0] = {0, 0};  // not a permutation action
  CHECK_THROWS_AS(bad.validate_or_throw(), EqhhError);
}

TEST_CASE("truncation windows are honest") {
  auto z2 = FiniteGroup::cyclic(2);
  SSPtr b = nerve(z2, 2);  // truncated, not complete
  CHECK_FALSE(b->complete);
  CHECK_THROWS_AS(simplicial_homology(*b, Q, 2), EqhhError);
  CHECK(simplicial_homology(*b, Q, 1).at(0) == 1);
  CHECK_THROWS_AS(b->all_simplices(3), EqhhError);
}
