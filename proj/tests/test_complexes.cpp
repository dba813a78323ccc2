#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqhh/complex.h"

using namespace eqhh;

namespace {

const Field Q = Field::rationals();

SparseMatrix mat(const std::vector<std::vector<long long>>& a, const Field& f) {
  Index r = static_cast<Index>(a.size());
  Index c = r ? static_cast<Index>(a[0].size()) : 0;
  SparseMatrix m(r, c, f);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
        m.set(i, j, Scalar::of_int(f, a[static_cast<size_t>(i)][static_cast<size_t>(j)]));
  return m;
}

BettiTable table(std::vector<Index> dims) {
  BettiTable t;
  t.lo = 0;
  t.hi = static_cast<int>(dims.size()) - 1;
  for (size_t i = 0; i < dims.size(); ++i)
    if (dims[i] != 0) t.dims[static_cast<int>(i)] = dims[i];
  return t;
}

// simplicial chains of the boundary of a triangle: a hand-built circle
ChainComplex triangle_boundary() {
  std::map<int, Index> dims{{0, 3}, {1, 3}};
  // edges 01, 02, 12 with d(e_ij) = v_j - v_i
  std::map<int, SparseMatrix> diffs;
  diffs.emplace(1, mat({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}}, Q));
  return ChainComplex(Q, dims, std::move(diffs), 0, 1, true);
}

// chains of the interval: two vertices, one edge
ChainComplex interval_chains() {
  std::map<int, Index> dims{{0, 2}, {1, 1}};
  std::map<int, SparseMatrix> diffs;
  diffs.emplace(1, mat({{-1}, {1}}, Q));
  return ChainComplex(Q, dims, std::move(diffs), 0, 1, true);
}

}  // namespace

TEST_CASE("zero differential complex reports its dimensions") {
  std::map<int, Index> dims{{0, 1}, {1, 2}, {2, 3}};
  ChainComplex c(Q, dims, {}, 0, 2, true);
  CHECK(c.homology(2) == table({1, 2, 3}));
}

TEST_CASE("hand-built circle and interval homology") {
  CHECK(triangle_boundary().homology(1) == table({1, 1}));
  CHECK(interval_chains().homology(1) == table({1, 0}));
}

TEST_CASE("d^2 enforcement and window discipline") {
  std::map<int, Index> dims{{0, 1}, {1, 1}, {2, 1}};
  std::map<int, SparseMatrix> diffs;
  diffs.emplace(1, mat({{1}}, Q));
  diffs.emplace(2, mat({{1}}, Q));
  CHECK_THROWS_AS(ChainComplex(Q, dims, std::move(diffs), 0, 2, true),
                  EqhhError);

  ChainComplex c(Q, {{0, 2}, {1, 2}}, {}, 0, 1, false);
  try {
    c.homology(1);
    CHECK(false);
  } catch (const EqhhError& e) {
    CHECK(e.kind() == ErrKind::WindowTooSmall);
  }
  CHECK(c.homology(0) == table({2}));
}

TEST_CASE("cone of the identity is acyclic and quasi-iso detects failures") {
  CCPtr c = make_complex(triangle_boundary());
  ChainMap id = ChainMap::identity(c);
  ChainComplex cn = cone(id);
  CHECK(cn.homology(1) == table({0, 0}));
  auto cert = is_quasi_iso(id, 1);
  CHECK(cert.ok);

  ChainMap z = ChainMap::zero(c, c);
  auto zcert = is_quasi_iso(z, 1);
  CHECK(!zcert.ok);
  CHECK(zcert.cone_betti.at(0) > 0);
}

TEST_CASE("augmentation of interval chains onto the point is a quasi-iso") {
  CCPtr c = make_complex(interval_chains());
  CCPtr pt = make_complex(ChainComplex::concentrated(Q, 0, 1));
  std::map<int, SparseMatrix> blocks;
  blocks.emplace(0, mat({{1, 1}}, Q));
  ChainMap aug(c, pt, std::move(blocks));
  CHECK(is_quasi_iso(aug, 1).ok);
}

TEST_CASE("chain map commutation is enforced") {
  CCPtr c = make_complex(interval_chains());
  std::map<int, SparseMatrix> blocks;
  blocks.emplace(0, mat({{1, 0}, {0, 1}}, Q));
  blocks.emplace(1, mat({{2}}, Q));  // does not commute with d
  CHECK_THROWS_AS(ChainMap(c, c, std::move(blocks)), EqhhError);
}

TEST_CASE("tensor unit law and shifted lines") {
  ChainComplex c = triangle_boundary();
  ChainComplex unit = ChainComplex::concentrated(Q, 0, 1);
  ChainComplex t = tensor(c, unit);
  CHECK(t.homology(1) == c.homology(1));
  CHECK(t.dim(0) == c.dim(0));
  CHECK(t.dim(1) == c.dim(1));

  ChainComplex l1 = ChainComplex::concentrated(Q, 1, 1);
  ChainComplex l2 = tensor(l1, l1);
  CHECK(l2.dim(2) == 1);
  CHECK(l2.homology(2) == table({0, 0, 1}));
}

TEST_CASE("Kunneth convolution against direct homology") {
  ChainComplex circ = triangle_boundary();
  ChainComplex torus_chains = tensor(circ, circ);
  BettiTable direct = torus_chains.homology(2);
  BettiTable conv = betti_convolution(circ.homology(1), circ.homology(1), 2);
  CHECK(direct == conv);  // (1,2,1) for the torus
  CHECK(direct == table({1, 2, 1}));
}

TEST_CASE("Kunneth on random small complexes") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    // random three-term complex 0 -> C2 -> C1 -> C0 -> 0 built from a
    // random d2 and a d1 chosen as a matrix killing im(d2)
    Index n2 = 1 + static_cast<Index>(rng() % 2);
    Index n1 = 2 + static_cast<Index>(rng() % 2);
    SparseMatrix d2(n1, n2, Q);
    for (Index i = 0; i < n1; ++i)
      for (Index j = 0; j < n2; ++j) {
        long long v = static_cast<long long>(rng() % 5) - 2;
        if (v) d2.set(i, j, Scalar::of_int(Q, v));
      }
    // d1 = a random row map vanishing on columns of d2: build from kernel
    // of d2^T acting on the left
    auto left_null = kernel_basis(d2.transpose());
    Index n0 = 2;
    SparseMatrix d1(n0, n1, Q);
    for (size_t k = 0; k < left_null.size() && k < 2; ++k)
      d1.set_row(static_cast<Index>(k), left_null[k]);
    std::map<int, Index> dims{{0, n0}, {1, n1}, {2, n2}};
    std::map<int, SparseMatrix> diffs;
    if (!d1.is_zero()) diffs.emplace(1, d1);
    if (!d2.is_zero()) diffs.emplace(2, d2);
    ChainComplex c(Q, dims, std::move(diffs), 0, 2, true);
    ChainComplex cc = tensor(c, c);
    CHECK(cc.homology(4) ==
          betti_convolution(c.homology(2), c.homology(2), 4));
  }
}

TEST_CASE("multicomplex totalization: single column is the column") {
  Multicomplex mc(Q, 2);
  mc.set_dim({0, 0}, 3);
  mc.set_dim({0, 1}, 3);
  mc.set_diff(1, {0, 1}, mat({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}}, Q));
  ChainComplex t = total_complex(mc, 1, true);
  CHECK(t.homology(1) == triangle_boundary().homology(1));
}

TEST_CASE("multicomplex with identity horizontal map is acyclic") {
  Multicomplex mc(Q, 2);
  mc.set_dim({0, 0}, 1);
  mc.set_dim({1, 0}, 1);
  mc.set_diff(0, {1, 0}, mat({{1}}, Q));
  ChainComplex t = total_complex(mc, 1, true);
  CHECK(t.homology(1) == table({0, 0}));
}

TEST_CASE("multicomplex equals tensor on a product grid") {
  // grid of interval x interval with commuting differentials
  ChainComplex ic = interval_chains();
  Multicomplex mc(Q, 2);
  for (int i = 0; i <= 1; ++i)
    for (int j = 0; j <= 1; ++j)
      mc.set_dim({i, j}, ic.dim(i) * ic.dim(j));
  // axis 0: d tensor id, axis 1: id tensor d (no signs in the grid);
  // basis of a cell is row-major (first factor major)
  mc.set_diff(0, {1, 0}, mat({{-1, 0}, {0, -1}, {1, 0}, {0, 1}}, Q));
  mc.set_diff(0, {1, 1}, mat({{-1}, {1}}, Q));
  mc.set_diff(1, {0, 1}, mat({{-1, 0}, {1, 0}, {0, -1}, {0, 1}}, Q));
  mc.set_diff(1, {1, 1}, mat({{-1}, {1}}, Q));
  ChainComplex t = total_complex(mc, 2, true);
  ChainComplex tt = tensor(ic, ic);
  CHECK(t.homology(2) == tt.homology(2));
  CHECK(t.dim(1) == tt.dim(1));
  CHECK(t.homology(2) == table({1, 0, 0}));
}

TEST_CASE("non-commuting grid is rejected") {
  Multicomplex mc(Q, 2);
  mc.set_dim({0, 0}, 1);
  mc.set_dim({1, 0}, 1);
  mc.set_dim({0, 1}, 1);
  mc.set_dim({1, 1}, 1);
  mc.set_diff(0, {1, 0}, mat({{1}}, Q));
  mc.set_diff(0, {1, 1}, mat({{1}}, Q));
  mc.set_diff(1, {0, 1}, mat({{1}}, Q));
  mc.set_diff(1, {1, 1}, mat({{2}}, Q));  // breaks the square
  try {
    total_complex(mc, 2, true);
    CHECK(false);
  } catch (const EqhhError& e) {
    CHECK(e.kind() == ErrKind::SignConventionViolation);
  }
}

TEST_CASE("periodic resolution of the dual numbers has H0 = k") {
  // ... -> A -> A -> A with d = multiplication by x on A = k[x]/x^2,
  // truncated at homological degree 3; H0 = A/xA = k, higher H vanish
  SparseMatrix mx = mat({{0, 0}, {1, 0}}, Q);  // x*1 = x, x*x = 0
  std::map<int, Index> dims{{0, 2}, {1, 2}, {2, 2}, {3, 2}};
  std::map<int, SparseMatrix> diffs{{1, mx}, {2, mx}, {3, mx}};
  ChainComplex c(Q, dims, std::move(diffs), 0, 3, false);
  CHECK(c.homology(2) == table({1, 0, 0}));
}

TEST_CASE("homology basis and coordinates") {
  ChainComplex circ = triangle_boundary();
  auto h1 = circ.homology_basis(1);
  REQUIRE(h1.size() == 1);
  // the fundamental cycle e01 + e12 - e02 (up to scale)
  SparseVec cyc;
  cyc.set(0, Scalar::one(Q));
  cyc.set(1, Scalar::of_int(Q, -1));
  cyc.set(2, Scalar::one(Q));
  CHECK(circ.diff(1).apply(cyc).is_zero());
  auto coords = circ.express_in_homology(1, cyc);
  REQUIRE(coords.nnz() == 1);
  // doubling the cycle doubles the coordinate
  SparseVec cyc2 = cyc;
  scale_vec(cyc2, Scalar::of_int(Q, 2));
  auto coords2 = circ.express_in_homology(1, cyc2);
  CHECK(coords2.get(coords.e[0].first, Q) ==
        coords.e[0].second * Scalar::of_int(Q, 2));
  // boundaries express as zero
  ChainComplex ic = interval_chains();
  SparseVec bd = ic.diff(1).apply(SparseVec{{{0, Scalar::one(Q)}}});
  CHECK(ic.express_in_homology(0, bd).is_zero());
  CHECK(ic.reduce_mod_boundaries(0, bd).is_zero());
}

TEST_CASE("euler characteristic equals alternating betti sum") {
  ChainComplex c = triangle_boundary();
  BettiTable b = c.homology(1);
  Index euler_chain = c.dim(0) - c.dim(1);
  Index euler_betti = b.at(0) - b.at(1);
  CHECK(euler_chain == euler_betti);
}
