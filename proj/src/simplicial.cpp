#include "eqhh/simplicial.h"

#include <algorithm>
#include <functional>
#include <sstream>

namespace eqhh {

std::vector<int> word_insert(std::vector<int> w, int j) {
  // normalize s_j s_{w0} s_{w1} ... : s_j s_i = s_{i+1} s_j for j <= i
  for (size_t t = 0; t < w.size(); ++t) {
    if (j <= w[t]) {
      ++w[t];
    } else {
      w.insert(w.begin() + static_cast<long>(t), j);
      return w;
    }
  }
  w.push_back(j);
  return w;
}

Index SimplicialSet::total_nondeg() const {
  Index t = 0;
  for (int n = 0; n <= top; ++n) t += count(n);
  return t;
}

Simplex SimplicialSet::face_of(const Simplex& s, int i) const {
  int n = s.dim();
  require(n >= 1 && i >= 0 && i <= n, ErrKind::InvalidInput,
          "face index out of range");
  // push d_i through the degeneracy word
  std::vector<int> processed;
  int cur = i;
  for (size_t t = 0; t < s.word.size(); ++t) {
    int j = s.word[t];
    if (cur == j || cur == j + 1) {
      // d_i s_j = id; reapply the processed prefix to the remaining word
      Simplex out{std::vector<int>(s.word.begin() + static_cast<long>(t) + 1,
                                   s.word.end()),
                  s.core_dim, s.core_id};
      for (size_t r = processed.size(); r-- > 0;)
        out.word = word_insert(std::move(out.word), processed[r]);
      return out;
    }
    if (cur < j) {
      processed.push_back(j - 1);  // d_i s_j = s_{j-1} d_i
    } else {
      processed.push_back(j);  // d_i s_j = s_j d_{i-1}
      --cur;
    }
  }
  require(s.core_dim >= 1, ErrKind::InvalidInput,
          "face reached a vertex core");
  Simplex out = face[static_cast<size_t>(s.core_dim)]
                    [static_cast<size_t>(s.core_id)][static_cast<size_t>(cur)];
  for (size_t r = processed.size(); r-- > 0;)
    out.word = word_insert(std::move(out.word), processed[r]);
  return out;
}

Simplex SimplicialSet::degeneracy_of(const Simplex& s, int j) const {
  require(j >= 0 && j <= s.dim(), ErrKind::InvalidInput,
          "degeneracy index out of range");
  Simplex out = s;
  out.word = word_insert(std::move(out.word), j);
  return out;
}

Simplex SimplicialSet::vertex_of(const Simplex& s, int k) const {
  require(k >= 0 && k <= s.dim(), ErrKind::InvalidInput,
          "vertex index out of range");
  Simplex v = s;
  for (int j = s.dim(); j > k; --j) v = face_of(v, j);
  for (int t = 0; t < k; ++t) v = face_of(v, 0);
  return v;
}

Simplex SimplicialSet::leading_edge(const Simplex& s) const {
  require(s.dim() >= 1, ErrKind::InvalidInput, "leading edge of a vertex");
  Simplex e = s;
  for (int j = s.dim(); j >= 2; --j) e = face_of(e, j);
  return e;
}

std::vector<Simplex> SimplicialSet::all_simplices(int n) const {
  require(n >= 0, ErrKind::InvalidInput, "negative dimension");
  require(complete || n <= top, ErrKind::WindowTooSmall,
          name + ": simplices of dimension " + std::to_string(n) +
              " beyond truncation " + std::to_string(top));
  require(n < 31, ErrKind::BudgetExceeded, "dimension too large to enumerate");
  std::vector<Simplex> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    int m = n - k;
    if (m > top) continue;  // complete: nothing up there
    std::vector<int> w;
    for (int b = n - 1; b >= 0; --b)
      if (mask & (1u << b)) w.push_back(b);
    for (Index id = 0; id < count(m); ++id)
      out.push_back(Simplex{w, m, id});
  }
  return out;
}

void SimplicialSet::validate_or_throw() const {
  require(top >= 0, ErrKind::InvalidInput, "negative truncation");
  require(static_cast<int>(labels.size()) == top + 1, ErrKind::InvalidInput,
          name + ": label table depth");
  require(static_cast<int>(face.size()) == top + 1, ErrKind::InvalidInput,
          name + ": face table depth");
  auto check_simplex = [&](const Simplex& f, int want_dim,
                           const std::string& where) {
    require(f.dim() == want_dim, ErrKind::InvalidInput,
            name + ": face dimension at " + where);
    require(f.core_dim >= 0 && f.core_dim <= top &&
                f.core_id >= 0 && f.core_id < count(f.core_dim),
            ErrKind::InvalidInput, name + ": dangling face reference at " + where);
    for (size_t t = 0; t + 1 < f.word.size(); ++t)
      require(f.word[t] > f.word[t + 1], ErrKind::InvalidInput,
              name + ": degeneracy word not strictly decreasing at " + where);
    if (!f.word.empty())
      require(f.word.back() >= 0 && f.word.front() < want_dim,
              ErrKind::InvalidInput, name + ": degeneracy word range at " + where);
  };
  for (int n = 1; n <= top; ++n) {
    require(static_cast<Index>(face[static_cast<size_t>(n)].size()) ==
                count(n),
            ErrKind::InvalidInput, name + ": face table width");
    for (Index i = 0; i < count(n); ++i) {
      const auto& fs = face[static_cast<size_t>(n)][static_cast<size_t>(i)];
      require(static_cast<int>(fs.size()) == n + 1, ErrKind::InvalidInput,
              name + ": face count of " + label(n, i));
      for (int k = 0; k <= n; ++k)
        check_simplex(fs[static_cast<size_t>(k)], n - 1, label(n, i));
    }
  }
  // simplicial identities
  for (int n = 2; n <= top; ++n)
    for (Index i = 0; i < count(n); ++i) {
      Simplex x = nondeg(n, i);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b <= n; ++b)
          require(face_of(face_of(x, b), a) == face_of(face_of(x, a), b - 1),
                  ErrKind::InvalidInput,
                  name + ": simplicial identity d" + std::to_string(a) + " d" +
                      std::to_string(b) + " fails on " + label(n, i));
    }
}

namespace {

SSPtr finish(SimplicialSet s) {
  s.validate_or_throw();
  return std::make_shared<const SimplicialSet>(std::move(s));
}

SimplicialSet skeleton(const std::string& name, int top, bool complete) {
  SimplicialSet s;
  s.name = name;
  s.top = top;
  s.complete = complete;
  s.labels.resize(static_cast<size_t>(top) + 1);
  s.face.resize(static_cast<size_t>(top) + 1);
  return s;
}

// the fully degenerate m-simplex on a vertex
Simplex collapsed(Index vertex_id, int m) {
  std::vector<int> w;
  for (int j = m - 1; j >= 0; --j) w.push_back(j);
  return Simplex{w, 0, vertex_id};
}

}  // namespace

SSPtr standard_model(const std::string& name) {
  if (name == "point") {
    SimplicialSet s = skeleton("point", 0, true);
    s.labels[0] = {"*"};
    return finish(std::move(s));
  }
  if (name == "interval") {
    SimplicialSet s = skeleton("interval", 1, true);
    s.labels[0] = {"v0", "v1"};
    s.labels[1] = {"e"};
    s.face[1] = {{nondeg(0, 1), nondeg(0, 0)}};
    return finish(std::move(s));
  }
  if (name == "circle") {
    SimplicialSet s = skeleton("circle", 1, true);
    s.labels[0] = {"v"};
    s.labels[1] = {"e"};
    s.face[1] = {{nondeg(0, 0), nondeg(0, 0)}};
    return finish(std::move(s));
  }
  if (name == "two-intervals-circle") {
    SimplicialSet s = skeleton("two-intervals-circle", 1, true);
    s.labels[0] = {"a", "b"};
    s.labels[1] = {"e0", "e1"};
    s.face[1] = {{nondeg(0, 1), nondeg(0, 0)}, {nondeg(0, 0), nondeg(0, 1)}};
    return finish(std::move(s));
  }
  if (name == "delta2" || name == "boundary-delta2") {
    bool full = name == "delta2";
    SimplicialSet s = skeleton(name, full ? 2 : 1, true);
    s.labels[0] = {"v0", "v1", "v2"};
    s.labels[1] = {"e01", "e02", "e12"};
    s.face[1] = {{nondeg(0, 1), nondeg(0, 0)},
                 {nondeg(0, 2), nondeg(0, 0)},
                 {nondeg(0, 2), nondeg(0, 1)}};
    if (full) {
      s.labels[2] = {"t"};
      s.face[2] = {{nondeg(1, 2), nondeg(1, 1), nondeg(1, 0)}};
    }
    return finish(std::move(s));
  }
  if (name == "sphere2" || name == "sphere3") {
    int d = name == "sphere2" ? 2 : 3;
    SimplicialSet s = skeleton(name, d, true);
    s.labels[0] = {"v"};
    s.labels[static_cast<size_t>(d)] = {"c"};
    s.face[static_cast<size_t>(d)] = {std::vector<Simplex>(
        static_cast<size_t>(d) + 1, collapsed(0, d - 1))};
    return finish(std::move(s));
  }
  fail(ErrKind::InvalidInput, "unknown standard model: " + name);
}

std::vector<std::string> standard_model_names() {
  return {"point",  "interval",       "circle",  "two-intervals-circle",
          "delta2", "boundary-delta2", "sphere2", "sphere3"};
}

Simplex SimplicialMap::apply(const Simplex& s) const {
  Simplex out = img[static_cast<size_t>(s.core_dim)]
                   [static_cast<size_t>(s.core_id)];
  for (size_t t = s.word.size(); t-- > 0;)
    out.word = word_insert(std::move(out.word), s.word[t]);
  return out;
}

void SimplicialMap::validate_or_throw() const {
  require(src && dst, ErrKind::InvalidInput, "map without endpoints");
  require(static_cast<int>(img.size()) == src->top + 1, ErrKind::InvalidInput,
          "map image table depth");
  for (int n = 0; n <= src->top; ++n) {
    require(static_cast<Index>(img[static_cast<size_t>(n)].size()) ==
                src->count(n),
            ErrKind::InvalidInput, "map image table width");
    for (Index i = 0; i < src->count(n); ++i) {
      const Simplex& y = img[static_cast<size_t>(n)][static_cast<size_t>(i)];
      require(y.dim() == n, ErrKind::InvalidInput,
              "map image dimension of " + src->label(n, i));
      require(y.core_dim <= dst->top && y.core_id >= 0 &&
                  y.core_id < dst->count(y.core_dim),
              ErrKind::InvalidInput, "map image out of range");
    }
  }
  for (int n = 1; n <= src->top; ++n)
    for (Index i = 0; i < src->count(n); ++i) {
      Simplex x = nondeg(n, i);
      for (int k = 0; k <= n; ++k)
        require(apply(src->face_of(x, k)) == dst->face_of(apply(x), k),
                ErrKind::InvalidInput,
                "map does not commute with d" + std::to_string(k) + " on " +
                    src->label(n, i));
    }
}

bool SimplicialMap::is_cofibration() const {
  for (int n = 0; n <= src->top; ++n) {
    std::vector<Index> seen;
    for (Index i = 0; i < src->count(n); ++i) {
      const Simplex& y = img[static_cast<size_t>(n)][static_cast<size_t>(i)];
      if (y.is_degenerate()) return false;
      seen.push_back(y.core_id);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      return false;
  }
  return true;
}

bool SimplicialMap::is_isomorphism() const {
  if (!is_cofibration()) return false;
  if (src->top != dst->top || src->complete != dst->complete) return false;
  for (int n = 0; n <= src->top; ++n)
    if (src->count(n) != dst->count(n)) return false;
  return true;
}

SimplicialMap SimplicialMap::identity(SSPtr x) {
  SimplicialMap m;
  m.src = x;
  m.dst = x;
  m.img.resize(static_cast<size_t>(x->top) + 1);
  for (int n = 0; n <= x->top; ++n)
    for (Index i = 0; i < x->count(n); ++i)
      m.img[static_cast<size_t>(n)].push_back(nondeg(n, i));
  return m;
}

int BundleCocycle::label_of(const Simplex& edge) const {
  require(edge.dim() == 1, ErrKind::InvalidInput, "cocycle label of a non-edge");
  if (edge.is_degenerate()) return group->id;
  return lambda[static_cast<size_t>(edge.core_id)];
}

void BundleCocycle::validate_or_throw() const {
  require(base && group, ErrKind::InvalidCocycle, "cocycle missing base or group");
  require(static_cast<Index>(lambda.size()) == base->count(1),
          ErrKind::InvalidCocycle, "cocycle label count");
  for (int v : lambda)
    require(v >= 0 && v < group->order(), ErrKind::InvalidCocycle,
            "cocycle label out of range");
  for (Index i = 0; i < base->count(2); ++i) {
    Simplex s = nondeg(2, i);
    int l0 = label_of(base->face_of(s, 0));
    int l1 = label_of(base->face_of(s, 1));
    int l2 = label_of(base->face_of(s, 2));
    require(group->times(l0, l2) == l1, ErrKind::InvalidCocycle,
            "cocycle condition fails on " + base->label(2, i));
  }
}

BundleCocycle BundleCocycle::trivial(SSPtr x, GroupPtr g) {
  BundleCocycle c;
  c.base = std::move(x);
  c.group = std::move(g);
  c.lambda.assign(static_cast<size_t>(c.base->count(1)), c.group->id);
  return c;
}

BundleCocycle coboundary(const BundleCocycle& c,
                         const std::vector<int>& kappa) {
  require(static_cast<Index>(kappa.size()) == c.base->count(0),
          ErrKind::InvalidInput, "coboundary vertex label count");
  for (int v : kappa)
    require(v >= 0 && v < c.group->order(), ErrKind::InvalidInput,
            "coboundary label out of range");
  BundleCocycle out = c;
  for (Index i = 0; i < c.base->count(1); ++i) {
    Simplex e = nondeg(1, i);
    Index target = c.base->face_of(e, 0).core_id;
    Index source = c.base->face_of(e, 1).core_id;
    int kt = kappa[static_cast<size_t>(target)];
    int ks = kappa[static_cast<size_t>(source)];
    out.lambda[static_cast<size_t>(i)] = c.group->times(
        c.group->times(kt, c.lambda[static_cast<size_t>(i)]),
        c.group->inverse(ks));
  }
  out.validate_or_throw();
  return out;
}

BundleCocycle pullback_cocycle(const SimplicialMap& phi,
                               const BundleCocycle& c) {
  phi.validate_or_throw();
  require(phi.dst.get() == c.base.get(), ErrKind::InvalidInput,
          "pullback along a map into a different base");
  require(phi.is_isomorphism(), ErrKind::NotAnIsomorphism,
          "cocycle pullback requires a simplicial isomorphism");
  BundleCocycle out;
  out.base = phi.src;
  out.group = c.group;
  for (Index i = 0; i < phi.src->count(1); ++i)
    out.lambda.push_back(c.label_of(phi.apply(nondeg(1, i))));
  out.validate_or_throw();
  return out;
}

Simplex GSimplicialSet::act_on(const Simplex& s, int g) const {
  return Simplex{s.word, s.core_dim, act_cell(s.core_dim, s.core_id, g)};
}

bool GSimplicialSet::is_free() const {
  for (int n = 0; n <= space->top; ++n)
    for (Index i = 0; i < space->count(n); ++i)
      for (int g = 0; g < group->order(); ++g)
        if (g != group->id && act_cell(n, i, g) == i) return false;
  return true;
}

void GSimplicialSet::validate_or_throw() const {
  require(space && group, ErrKind::InvalidInput, "G-object missing data");
  require(static_cast<int>(act.size()) == space->top + 1,
          ErrKind::InvalidInput, "action table depth");
  for (int n = 0; n <= space->top; ++n) {
    require(static_cast<Index>(act[static_cast<size_t>(n)].size()) ==
                space->count(n),
            ErrKind::InvalidInput, "action table width");
    for (Index i = 0; i < space->count(n); ++i) {
      require(static_cast<int>(
                  act[static_cast<size_t>(n)][static_cast<size_t>(i)].size()) ==
                  group->order(),
              ErrKind::InvalidInput, "action table entry count");
      require(act_cell(n, i, group->id) == i, ErrKind::InvalidInput,
              "identity acts nontrivially");
      for (int g = 0; g < group->order(); ++g) {
        Index j = act_cell(n, i, g);
        require(j >= 0 && j < space->count(n), ErrKind::InvalidInput,
                "action image out of range");
        for (int h = 0; h < group->order(); ++h)
          require(act_cell(n, j, h) == act_cell(n, i, group->times(g, h)),
                  ErrKind::InvalidInput, "right action axiom fails");
      }
    }
    // bijectivity per group element
    for (int g = 0; g < group->order(); ++g) {
      std::vector<char> hit(static_cast<size_t>(space->count(n)), 0);
      for (Index i = 0; i < space->count(n); ++i)
        hit[static_cast<size_t>(act_cell(n, i, g))] = 1;
      for (char h : hit)
        require(h, ErrKind::InvalidInput, "action not a permutation");
    }
  }
  for (int n = 1; n <= space->top; ++n)
    for (Index i = 0; i < space->count(n); ++i)
      for (int g = 0; g < group->order(); ++g)
        for (int k = 0; k <= n; ++k)
          require(space->face_of(act_on(nondeg(n, i), g), k) ==
                      act_on(space->face_of(nondeg(n, i), k), g),
                  ErrKind::InvalidInput,
                  "action does not commute with d" + std::to_string(k));
}

GSimplicialSet total_space(const BundleCocycle& c) {
  c.validate_or_throw();
  const SimplicialSet& x = *c.base;
  const FiniteGroup& g = *c.group;
  int ord = g.order();
  SimplicialSet y = skeleton(x.name + "x" + g.name, x.top, x.complete);
  for (int n = 0; n <= x.top; ++n) {
    for (Index i = 0; i < x.count(n); ++i)
      for (int h = 0; h < ord; ++h)
        y.labels[static_cast<size_t>(n)].push_back(
            "(" + x.label(n, i) + "," + g.elems[static_cast<size_t>(h)] + ")");
    if (n == 0) continue;
    for (Index i = 0; i < x.count(n); ++i) {
      Simplex cell = nondeg(n, i);
      int tau = c.label_of(x.leading_edge(cell));
      for (int h = 0; h < ord; ++h) {
        std::vector<Simplex> fs;
        for (int k = 0; k <= n; ++k) {
          Simplex fx = x.face_of(cell, k);
          int hh = k == 0 ? g.times(tau, h) : h;
          fs.push_back(Simplex{fx.word, fx.core_dim,
                               fx.core_id * ord + hh});
        }
        y.face[static_cast<size_t>(n)].push_back(std::move(fs));
      }
    }
  }
  GSimplicialSet out;
  out.space = finish(std::move(y));
  out.group = c.group;
  out.act.resize(static_cast<size_t>(x.top) + 1);
  for (int n = 0; n <= x.top; ++n)
    for (Index i = 0; i < x.count(n); ++i)
      for (int h = 0; h < ord; ++h) {
        std::vector<Index> row;
        for (int k = 0; k < ord; ++k)
          row.push_back(i * ord + g.times(h, k));
        out.act[static_cast<size_t>(n)].push_back(std::move(row));
      }
  out.validate_or_throw();
  return out;
}

std::optional<std::string> twisting_identities_check(const BundleCocycle& c) {
  const SimplicialSet& x = *c.base;
  const FiniteGroup& g = *c.group;
  auto tau = [&](const Simplex& s) { return c.label_of(x.leading_edge(s)); };
  for (int n = 2; n <= x.top; ++n)
    for (Index i = 0; i < x.count(n); ++i) {
      Simplex s = nondeg(n, i);
      int t = tau(s);
      int t0 = tau(x.face_of(s, 0));
      int t1 = tau(x.face_of(s, 1));
      if (t0 != g.times(t1, g.inverse(t)))
        return "tau(d0) != tau(d1) tau^{-1} on " + x.label(n, i);
      for (int k = 2; k <= n; ++k)
        if (tau(x.face_of(s, k)) != t)
          return "tau(d" + std::to_string(k) + ") != tau on " + x.label(n, i);
    }
  return std::nullopt;
}

SimplicialMap transport_total_map(const BundleCocycle& c,
                                  const std::vector<int>& kappa) {
  GSimplicialSet y = total_space(c);
  GSimplicialSet y2 = total_space(coboundary(c, kappa));
  const FiniteGroup& g = *c.group;
  int ord = g.order();
  SimplicialMap m;
  m.src = y.space;
  m.dst = y2.space;
  m.img.resize(static_cast<size_t>(y.space->top) + 1);
  for (int n = 0; n <= y.space->top; ++n)
    for (Index i = 0; i < c.base->count(n); ++i) {
      int kv = kappa[static_cast<size_t>(
          c.base->vertex_of(nondeg(n, i), 0).core_id)];
      for (int h = 0; h < ord; ++h)
        m.img[static_cast<size_t>(n)].push_back(
            nondeg(n, i * ord + g.times(kv, h)));
    }
  m.validate_or_throw();
  require(m.is_isomorphism(), ErrKind::NotAnIsomorphism,
          "transport bijection failed to certify");
  return m;
}

PushoutResult pushout(const SimplicialMap& f, const SimplicialMap& g) {
  f.validate_or_throw();
  g.validate_or_throw();
  require(f.src.get() == g.src.get(), ErrKind::InvalidInput,
          "pushout legs with different sources");
  require(f.is_cofibration(), ErrKind::NonCofibration,
          "pushout requires the first leg to be a cofibration");
  const SimplicialSet& a = *f.src;
  const SimplicialSet& x = *f.dst;
  const SimplicialSet& y = *g.dst;
  require((x.top == y.top) || (x.complete && y.complete),
          ErrKind::InvalidInput, "pushout of incompatibly truncated sets");
  int top = std::max(x.top, y.top);
  require(a.top >= top || a.complete, ErrKind::InvalidInput,
          "gluing object truncated below the pushout range");

  // image of f as a per-level lookup: x-cell -> a-cell
  std::vector<std::vector<Index>> from_a(static_cast<size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    from_a[static_cast<size_t>(n)].assign(static_cast<size_t>(x.count(n)), -1);
    for (Index i = 0; i < a.count(n); ++i)
      from_a[static_cast<size_t>(n)][static_cast<size_t>(
          f.img[static_cast<size_t>(n)][static_cast<size_t>(i)].core_id)] = i;
  }

  // cells: all of y first, then x-cells outside the image of f
  std::vector<std::vector<Index>> keep_pos(static_cast<size_t>(top) + 1);
  SimplicialSet p =
      skeleton(x.name + "+" + y.name, top, x.complete && y.complete);
  for (int n = 0; n <= top; ++n) {
    keep_pos[static_cast<size_t>(n)].assign(static_cast<size_t>(x.count(n)),
                                            -1);
    for (Index i = 0; i < y.count(n); ++i)
      p.labels[static_cast<size_t>(n)].push_back(y.label(n, i));
    for (Index i = 0; i < x.count(n); ++i)
      if (from_a[static_cast<size_t>(n)][static_cast<size_t>(i)] < 0) {
        keep_pos[static_cast<size_t>(n)][static_cast<size_t>(i)] =
            static_cast<Index>(p.labels[static_cast<size_t>(n)].size());
        p.labels[static_cast<size_t>(n)].push_back(x.label(n, i) + "'");
      }
  }

  // q_x maps x-cells into p: kept cells directly, glued cells through g
  std::function<Simplex(int, Index)> qx_core = [&](int n,
                                                   Index i) -> Simplex {
    Index ai = from_a[static_cast<size_t>(n)][static_cast<size_t>(i)];
    if (ai < 0) {
      return nondeg(n, keep_pos[static_cast<size_t>(n)][static_cast<size_t>(i)]);
    }
    // y-part ids are unchanged in p
    return g.img[static_cast<size_t>(n)][static_cast<size_t>(ai)];
  };
  auto qx = [&](const Simplex& s) {
    Simplex out = qx_core(s.core_dim, s.core_id);
    for (size_t t = s.word.size(); t-- > 0;)
      out.word = word_insert(std::move(out.word), s.word[t]);
    return out;
  };

  for (int n = 1; n <= top; ++n) {
    for (Index i = 0; i < y.count(n); ++i)
      p.face[static_cast<size_t>(n)].push_back(
          y.face[static_cast<size_t>(n)][static_cast<size_t>(i)]);
    for (Index i = 0; i < x.count(n); ++i) {
      if (from_a[static_cast<size_t>(n)][static_cast<size_t>(i)] >= 0)
        continue;
      std::vector<Simplex> fs;
      for (int k = 0; k <= n; ++k)
        fs.push_back(qx(x.face_of(nondeg(n, i), k)));
      p.face[static_cast<size_t>(n)].push_back(std::move(fs));
    }
  }

  PushoutResult out;
  out.space = finish(std::move(p));
  out.from_y.src = g.dst;
  out.from_y.dst = out.space;
  out.from_y.img.resize(static_cast<size_t>(y.top) + 1);
  for (int n = 0; n <= y.top; ++n)
    for (Index i = 0; i < y.count(n); ++i)
      out.from_y.img[static_cast<size_t>(n)].push_back(nondeg(n, i));
  out.from_x.src = f.dst;
  out.from_x.dst = out.space;
  out.from_x.img.resize(static_cast<size_t>(x.top) + 1);
  for (int n = 0; n <= x.top; ++n)
    for (Index i = 0; i < x.count(n); ++i)
      out.from_x.img[static_cast<size_t>(n)].push_back(qx_core(n, i));
  out.from_x.validate_or_throw();
  out.from_y.validate_or_throw();
  return out;
}

BundleCocycle glue_cocycles(const PushoutResult& p, const SimplicialMap& f,
                            const SimplicialMap& g, const BundleCocycle& cx,
                            const BundleCocycle& cy) {
  require(cx.base.get() == f.dst.get() && cy.base.get() == g.dst.get(),
          ErrKind::InvalidInput, "cocycles on the wrong legs");
  require(cx.group->name == cy.group->name &&
              cx.group->order() == cy.group->order(),
          ErrKind::CocycleMismatch, "cocycle groups disagree");
  const SimplicialSet& a = *f.src;
  for (Index i = 0; i < a.count(1); ++i) {
    Simplex e = nondeg(1, i);
    require(cx.label_of(f.apply(e)) == cy.label_of(g.apply(e)),
            ErrKind::CocycleMismatch,
            "cocycles disagree on glued edge " + a.label(1, i));
  }
  BundleCocycle out;
  out.base = p.space;
  out.group = cx.group;
  out.lambda.assign(static_cast<size_t>(p.space->count(1)), cx.group->id);
  for (Index i = 0; i < cy.base->count(1); ++i) {
    Simplex im = p.from_y.img[1][static_cast<size_t>(i)];
    if (!im.is_degenerate())
      out.lambda[static_cast<size_t>(im.core_id)] =
          cy.lambda[static_cast<size_t>(i)];
  }
  for (Index i = 0; i < cx.base->count(1); ++i) {
    Simplex im = p.from_x.img[1][static_cast<size_t>(i)];
    if (!im.is_degenerate())
      out.lambda[static_cast<size_t>(im.core_id)] =
          cx.lambda[static_cast<size_t>(i)];
  }
  out.validate_or_throw();
  return out;
}

namespace {

// strip identity entries from a group tuple, rightmost first; an identity
// at position p (0-based) peels off as s_p, giving a strictly decreasing
// degeneracy word
std::vector<int> strip_identities(std::vector<int>& t, int id_elem) {
  std::vector<int> word;
  while (true) {
    int p = -1;
    for (int q = static_cast<int>(t.size()) - 1; q >= 0; --q)
      if (t[static_cast<size_t>(q)] == id_elem) {
        p = q;
        break;
      }
    if (p < 0) break;
    word.push_back(p);
    t.erase(t.begin() + p);
  }
  return word;
}

std::string tuple_label(const FiniteGroup& g, const std::vector<int>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += g.elems[static_cast<size_t>(t[i])];
  }
  return s + ")";
}

}  // namespace

SSPtr nerve(const FiniteGroup& g, int d, Index cell_cap) {
  require(d >= 0, ErrKind::InvalidInput, "negative truncation");
  int ord = g.order();
  std::vector<int> nonid;
  std::vector<Index> nonid_pos(static_cast<size_t>(ord), -1);
  for (int e = 0; e < ord; ++e)
    if (e != g.id) {
      nonid_pos[static_cast<size_t>(e)] = static_cast<Index>(nonid.size());
      nonid.push_back(e);
    }
  Index m = static_cast<Index>(nonid.size());

  SimplicialSet s = skeleton("B" + g.name, d, ord == 1);
  std::vector<std::vector<std::vector<int>>> cells(static_cast<size_t>(d) + 1);
  for (int n = 0; n <= d; ++n) {
    Index cnt = 1;
    for (int t = 0; t < n; ++t) {
      cnt *= m;
      require(cnt <= cell_cap, ErrKind::BudgetExceeded,
              "nerve cell count over cap in dimension " + std::to_string(n));
    }
    if (m == 0 && n > 0) cnt = 0;
    for (Index idx = 0; idx < cnt; ++idx) {
      std::vector<int> t(static_cast<size_t>(n));
      Index c = idx;
      for (int pos = n - 1; pos >= 0; --pos) {
        t[static_cast<size_t>(pos)] = nonid[static_cast<size_t>(c % m)];
        c /= m;
      }
      s.labels[static_cast<size_t>(n)].push_back(tuple_label(g, t));
      cells[static_cast<size_t>(n)].push_back(std::move(t));
    }
  }
  auto tuple_core = [&](const std::vector<int>& t) {
    Index idx = 0;
    for (int e : t) idx = idx * m + nonid_pos[static_cast<size_t>(e)];
    return idx;
  };
  for (int n = 1; n <= d; ++n)
    for (const auto& t : cells[static_cast<size_t>(n)]) {
      std::vector<Simplex> fs;
      for (int k = 0; k <= n; ++k) {
        std::vector<int> ft;
        if (k == 0) {
          ft.assign(t.begin() + 1, t.end());
        } else if (k == n) {
          ft.assign(t.begin(), t.end() - 1);
        } else {
          ft = t;
          ft[static_cast<size_t>(k - 1)] =
              g.times(t[static_cast<size_t>(k)], t[static_cast<size_t>(k - 1)]);
          ft.erase(ft.begin() + k);
        }
        std::vector<int> w = strip_identities(ft, g.id);
        fs.push_back(Simplex{w, static_cast<int>(ft.size()), tuple_core(ft)});
      }
      s.face[static_cast<size_t>(n)].push_back(std::move(fs));
    }
  return finish(std::move(s));
}

GSimplicialSet action_groupoid_nerve(GroupPtr g, GroupPtr h,
                                     const std::vector<int>& lam, int d,
                                     Index cell_cap) {
  require(d >= 0, ErrKind::InvalidInput, "negative truncation");
  require(is_homomorphism(*g, *h, lam), ErrKind::NotAHomomorphism,
          "action groupoid needs a group homomorphism");
  int og = g->order(), oh = h->order();
  std::vector<int> nonid;
  std::vector<Index> nonid_pos(static_cast<size_t>(og), -1);
  for (int e = 0; e < og; ++e)
    if (e != g->id) {
      nonid_pos[static_cast<size_t>(e)] = static_cast<Index>(nonid.size());
      nonid.push_back(e);
    }
  Index m = static_cast<Index>(nonid.size());

  // cell id = tuple_index * |H| + h0
  SimplicialSet s = skeleton(h->name + "//" + g->name, d, og == 1 && oh == 1);
  std::vector<std::vector<std::vector<int>>> tuples(static_cast<size_t>(d) +
                                                    1);
  for (int n = 0; n <= d; ++n) {
    Index cnt = 1;
    for (int t = 0; t < n; ++t) cnt *= m;
    if (m == 0 && n > 0) cnt = 0;
    require(cnt * oh <= cell_cap, ErrKind::BudgetExceeded,
            "action groupoid cell count over cap");
    for (Index idx = 0; idx < cnt; ++idx) {
      std::vector<int> t(static_cast<size_t>(n));
      Index c = idx;
      for (int pos = n - 1; pos >= 0; --pos) {
        t[static_cast<size_t>(pos)] = nonid[static_cast<size_t>(c % m)];
        c /= m;
      }
      for (int h0 = 0; h0 < oh; ++h0)
        s.labels[static_cast<size_t>(n)].push_back(
            "(" + h->elems[static_cast<size_t>(h0)] + ";" +
            tuple_label(*g, t).substr(1));
      tuples[static_cast<size_t>(n)].push_back(std::move(t));
    }
  }
  auto tuple_core = [&](const std::vector<int>& t) {
    Index idx = 0;
    for (int e : t) idx = idx * m + nonid_pos[static_cast<size_t>(e)];
    return idx;
  };
  for (int n = 1; n <= d; ++n)
    for (const auto& t : tuples[static_cast<size_t>(n)])
      for (int h0 = 0; h0 < oh; ++h0) {
        std::vector<Simplex> fs;
        for (int k = 0; k <= n; ++k) {
          std::vector<int> ft;
          int h1 = h0;
          if (k == 0) {
            ft.assign(t.begin() + 1, t.end());
            h1 = h->times(lam[static_cast<size_t>(t[0])], h0);
          } else if (k == n) {
            ft.assign(t.begin(), t.end() - 1);
          } else {
            ft = t;
            ft[static_cast<size_t>(k - 1)] = g->times(
                t[static_cast<size_t>(k)], t[static_cast<size_t>(k - 1)]);
            ft.erase(ft.begin() + k);
          }
          std::vector<int> w = strip_identities(ft, g->id);
          fs.push_back(Simplex{w, static_cast<int>(ft.size()),
                               tuple_core(ft) * oh + h1});
        }
        s.face[static_cast<size_t>(n)].push_back(std::move(fs));
      }
  GSimplicialSet out;
  out.space = finish(std::move(s));
  out.group = h;
  out.act.resize(static_cast<size_t>(d) + 1);
  for (int n = 0; n <= d; ++n) {
    Index tcnt = static_cast<Index>(tuples[static_cast<size_t>(n)].size());
    for (Index ti = 0; ti < tcnt; ++ti)
      for (int h0 = 0; h0 < oh; ++h0) {
        std::vector<Index> row;
        for (int k = 0; k < oh; ++k)
          row.push_back(ti * oh + h->times(h0, k));
        out.act[static_cast<size_t>(n)].push_back(std::move(row));
      }
  }
  out.validate_or_throw();
  return out;
}

SSPtr homotopy_quotient(const GSimplicialSet& y, int d, Index cell_cap) {
  require(d >= 0, ErrKind::InvalidInput, "negative truncation");
  const SimplicialSet& ys = *y.space;
  const FiniteGroup& g = *y.group;
  int ord = g.order();

  using Pair = std::pair<Simplex, std::vector<int>>;
  std::vector<std::map<Pair, Index>> lookup(static_cast<size_t>(d) + 1);
  std::vector<std::vector<Pair>> cells(static_cast<size_t>(d) + 1);

  SimplicialSet s =
      skeleton(ys.name + "_hG", d, ord == 1 && ys.complete && ys.top <= d);

  // a diagonal cell (x, g1..gn) is degenerate exactly when some g_{j+1} is
  // the identity while x lies in the image of s_j
  auto in_sj = [&](const Simplex& sx, int j) {
    return ys.degeneracy_of(ys.face_of(sx, j), j) == sx;
  };
  for (int n = 0; n <= d; ++n) {
    std::vector<Simplex> level = ys.all_simplices(n);
    Index tuples = 1;
    for (int t = 0; t < n; ++t) tuples *= ord;
    require(static_cast<Index>(level.size()) * tuples <= cell_cap,
            ErrKind::BudgetExceeded,
            "homotopy quotient cell count over cap in dimension " +
                std::to_string(n));
    for (const Simplex& sx : level)
      for (Index idx = 0; idx < tuples; ++idx) {
        std::vector<int> t(static_cast<size_t>(n));
        Index c = idx;
        for (int pos = n - 1; pos >= 0; --pos) {
          t[static_cast<size_t>(pos)] = static_cast<int>(c % ord);
          c /= ord;
        }
        bool deg = false;
        for (int j = 0; j < n && !deg; ++j)
          deg = t[static_cast<size_t>(j)] == g.id && in_sj(sx, j);
        if (deg) continue;
        Index id = static_cast<Index>(cells[static_cast<size_t>(n)].size());
        lookup[static_cast<size_t>(n)].emplace(Pair{sx, t}, id);
        std::string lbl = ys.label(sx.core_dim, sx.core_id);
        if (sx.is_degenerate()) lbl += "~";
        s.labels[static_cast<size_t>(n)].push_back(lbl + tuple_label(g, t));
        cells[static_cast<size_t>(n)].emplace_back(sx, std::move(t));
      }
  }

  std::function<Simplex(Simplex, std::vector<int>)> norm =
      [&](Simplex sx, std::vector<int> t) -> Simplex {
    int n = static_cast<int>(t.size());
    for (int j = n - 1; j >= 0; --j) {
      if (t[static_cast<size_t>(j)] != g.id || !in_sj(sx, j)) continue;
      Simplex inner = ys.face_of(sx, j);
      std::vector<int> tv = t;
      tv.erase(tv.begin() + j);
      Simplex r = norm(std::move(inner), std::move(tv));
      r.word = word_insert(std::move(r.word), j);
      return r;
    }
    auto it = lookup[static_cast<size_t>(n)].find(Pair{sx, t});
    require(it != lookup[static_cast<size_t>(n)].end(), ErrKind::InvalidInput,
            "homotopy quotient lookup miss");
    return nondeg(n, it->second);
  };

  for (int n = 1; n <= d; ++n)
    for (const auto& [sx, t] : cells[static_cast<size_t>(n)]) {
      std::vector<Simplex> fs;
      for (int k = 0; k <= n; ++k) {
        Simplex fy;
        std::vector<int> ft;
        if (k == 0) {
          fy = y.act_on(ys.face_of(sx, 0), t[0]);
          ft.assign(t.begin() + 1, t.end());
        } else if (k == n) {
          fy = ys.face_of(sx, n);
          ft.assign(t.begin(), t.end() - 1);
        } else {
          fy = ys.face_of(sx, k);
          ft = t;
          ft[static_cast<size_t>(k - 1)] = g.times(
              t[static_cast<size_t>(k - 1)], t[static_cast<size_t>(k)]);
          ft.erase(ft.begin() + k);
        }
        fs.push_back(norm(std::move(fy), std::move(ft)));
      }
      s.face[static_cast<size_t>(n)].push_back(std::move(fs));
    }
  return finish(std::move(s));
}

ChainComplex normalized_chains(const SimplicialSet& x, const Field& f) {
  std::map<int, Index> dims;
  for (int n = 0; n <= x.top; ++n) dims[n] = x.count(n);
  std::map<int, SparseMatrix> diffs;
  for (int n = 1; n <= x.top; ++n) {
    SparseMatrix m(x.count(n - 1), x.count(n), f);
    bool nonzero = false;
    for (Index i = 0; i < x.count(n); ++i) {
      Scalar sign = Scalar::one(f);
      for (int k = 0; k <= n; ++k) {
        const Simplex& fc =
            x.face[static_cast<size_t>(n)][static_cast<size_t>(i)]
                  [static_cast<size_t>(k)];
        if (!fc.is_degenerate()) {
          m.add_to(fc.core_id, i, sign);
          nonzero = true;
        }
        sign = -sign;
      }
    }
    if (nonzero) diffs.emplace(n, std::move(m));
  }
  return ChainComplex(f, std::move(dims), std::move(diffs), 0, x.top,
                      x.complete);
}

BettiTable simplicial_homology(const SimplicialSet& x, const Field& f,
                               int n_max, Index budget) {
  return normalized_chains(x, f).homology(n_max, budget);
}

}  // namespace eqhh
