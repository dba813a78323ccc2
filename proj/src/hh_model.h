#pragma once
// Model-spec builders shared by the hochschild and tft translation units:
// simplex tables, the twisted space model, the equivariant bar model and its
// augmentation, and the twisted cyclic bar model.
#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqhh/errors.h"
#include "eqhh/hochschild.h"
#include "tensor_model.h"

namespace eqhh {
namespace hmodel {

inline Index ipow(Index b, int e) {
  Index r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline bool word_has(const Simplex& s, int j) {
  return std::find(s.word.begin(), s.word.end(), j) != s.word.end();
}

// memoized simplex lists (degenerates included) with position lookup
struct SimTable {
  SSPtr x;
  std::map<int, std::vector<Simplex>> sims;
  std::map<int, std::map<Simplex, Index>> where;

  explicit SimTable(SSPtr s) : x(std::move(s)) {}

  const std::vector<Simplex>& at(int q) {
    auto it = sims.find(q);
    if (it == sims.end()) {
      it = sims.emplace(q, x->all_simplices(q)).first;
      auto& w = where[q];
      for (Index i = 0; i < static_cast<Index>(it->second.size()); ++i)
        w.emplace(it->second[static_cast<size_t>(i)], i);
    }
    return it->second;
  }
  Index pos(int q, const Simplex& s) {
    at(q);
    return where.at(q).at(s);
  }
  Index count(int q) { return static_cast<Index>(at(q).size()); }
};

using TablePtr = std::shared_ptr<SimTable>;
using CoefPtr = std::shared_ptr<const Coefficient>;
using CocyPtr = std::shared_ptr<const BundleCocycle>;

inline TablePtr make_table(SSPtr x) {
  return std::make_shared<SimTable>(std::move(x));
}

inline void check_window(const SimplicialSet& x, int hi) {
  require(x.complete || x.top >= hi, ErrKind::WindowTooSmall,
          x.name + " is truncated at dimension " + std::to_string(x.top) +
              " but the window needs " + std::to_string(hi));
}

inline void check_same_group(const FiniteGroup& a, const FiniteGroup& b) {
  require(a.order() == b.order() && a.mul == b.mul, ErrKind::InvalidAction,
          "the action group and the bundle group have different tables");
}

inline CoefPtr ingest_shared(const AlgPtr& a, const GAction& act) {
  return std::make_shared<const Coefficient>(ingest_coefficient(a, act));
}

inline CoefPtr ingest_plain(const AlgPtr& a) {
  auto g = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(1));
  return ingest_shared(a, GAction::trivial(g, a));
}

// image of a total-space simplex under the fiber-preserving lift of a base
// map; valid whenever the cocycle pulls back on the nose
inline Simplex total_image(const SimplicialMap& base,
                           const SimplicialSet& dst_total, int ord,
                           const Simplex& y) {
  Index core = y.core_id / ord;
  int h = static_cast<int>(y.core_id % ord);
  const Simplex& z =
      base.img[static_cast<size_t>(y.core_dim)][static_cast<size_t>(core)];
  Simplex out{z.word, z.core_dim, z.core_id * ord + h};
  for (auto it = y.word.rbegin(); it != y.word.rend(); ++it)
    out = dst_total.degeneracy_of(out, *it);
  return out;
}

inline bool prefix_eq(const BettiTable& a, const BettiTable& b, int thru) {
  for (int n = 0; n <= thru; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

// ---- twisted Hochschild model of a space ----

inline tmodel::Slots space_slots(SimTable& t, int q) {
  const auto& ss = t.at(q);
  tmodel::Slots s;
  s.n = static_cast<Index>(ss.size());
  for (int j = 0; j < q; ++j) {
    std::vector<Index> h;
    for (Index i = 0; i < s.n; ++i)
      if (!word_has(ss[static_cast<size_t>(i)], j)) h.push_back(i);
    s.hits.push_back(std::move(h));
  }
  return s;
}

// tw == nullptr gives the plain model; otherwise d_0 twists every slot by
// the label of its leading edge
inline tmodel::ModelSpec space_spec(TablePtr t, CoefPtr c, CocyPtr tw) {
  tmodel::ModelSpec spec;
  spec.alg = c->alg;
  spec.unit = c->unit;
  spec.axes = 1;
  spec.slots = [t](const std::vector<int>& v) { return space_slots(*t, v[0]); };
  spec.faces = [t, c, tw](int, const std::vector<int>& v) {
    int q = v[0];
    const auto& ss = t->at(q);
    Index n = static_cast<Index>(ss.size());
    std::vector<tmodel::SlotMor> out;
    for (int k = 0; k <= q; ++k) {
      tmodel::SlotMor mo;
      mo.to.resize(static_cast<size_t>(n));
      for (Index i = 0; i < n; ++i)
        mo.to[static_cast<size_t>(i)] =
            t->pos(q - 1, t->x->face_of(ss[static_cast<size_t>(i)], k));
      if (k == 0 && tw != nullptr) {
        mo.twist.assign(static_cast<size_t>(n), nullptr);
        bool any = false;
        for (Index i = 0; i < n; ++i) {
          int g = tw->label_of(t->x->leading_edge(ss[static_cast<size_t>(i)]));
          if (g != tw->group->id) {
            mo.twist[static_cast<size_t>(i)] = &c->act.of(g);
            any = true;
          }
        }
        if (!any) mo.twist.clear();
      }
      out.push_back(std::move(mo));
    }
    return out;
  };
  return spec;
}

// ---- equivariant bar model over a right G-space ----

struct BarData {
  GSimplicialSet y;
  TablePtr t;
  CoefPtr c;
  int ord = 1;
};

inline std::shared_ptr<BarData> make_bar_data(GSimplicialSet y, CoefPtr c) {
  auto b = std::make_shared<BarData>();
  b->y = std::move(y);
  b->t = make_table(b->y.space);
  b->c = std::move(c);
  b->ord = b->y.group->order();
  return b;
}

// group tuples are encoded g_1-major; digit i is 1-based
inline int tuple_digit(Index code, int p, int i, int ord) {
  return static_cast<int>((code / ipow(ord, p - i)) % ord);
}

inline tmodel::ModelSpec bar_spec(std::shared_ptr<BarData> b) {
  tmodel::ModelSpec spec;
  spec.alg = b->c->alg;
  spec.unit = b->c->unit;
  spec.axes = 2;  // (p, q)
  spec.slots = [b](const std::vector<int>& v) {
    int p = v[0], q = v[1];
    Index ns = b->t->count(q);
    Index np = ipow(b->ord, p);
    const auto& ss = b->t->at(q);
    tmodel::Slots s;
    s.n = ns * np;
    for (int j = 0; j < q; ++j) {
      std::vector<Index> h;
      for (Index i = 0; i < ns; ++i)
        if (!word_has(ss[static_cast<size_t>(i)], j))
          for (Index t = 0; t < np; ++t) h.push_back(i * np + t);
      s.hits.push_back(std::move(h));
    }
    for (int i = 1; i <= p; ++i) {
      std::vector<Index> h;
      for (Index k = 0; k < s.n; ++k)
        if (tuple_digit(k % np, p, i, b->ord) != b->y.group->id)
          h.push_back(k);
      s.hits.push_back(std::move(h));
    }
    return s;
  };
  spec.faces = [b](int axis, const std::vector<int>& v) {
    int p = v[0], q = v[1], ord = b->ord;
    const auto& ss = b->t->at(q);
    Index ns = static_cast<Index>(ss.size());
    Index np = ipow(ord, p);
    std::vector<tmodel::SlotMor> out;
    if (axis == 0) {
      Index np1 = ipow(ord, p - 1);
      {
        tmodel::SlotMor mo;  // d_0 moves the cell by g_1
        mo.to.resize(static_cast<size_t>(ns * np));
        for (Index i = 0; i < ns; ++i)
          for (Index t = 0; t < np; ++t) {
            int g1 = static_cast<int>(t / np1);
            Index yi =
                b->t->pos(q, b->y.act_on(ss[static_cast<size_t>(i)], g1));
            mo.to[static_cast<size_t>(i * np + t)] = yi * np1 + t % np1;
          }
        out.push_back(std::move(mo));
      }
      for (int k = 1; k < p; ++k) {
        tmodel::SlotMor mo;  // merge g_k g_{k+1}
        mo.to.resize(static_cast<size_t>(ns * np));
        for (Index t = 0; t < np; ++t) {
          Index head = t / ipow(ord, p - k + 1);
          int gk = tuple_digit(t, p, k, ord);
          int gk1 = tuple_digit(t, p, k + 1, ord);
          Index tail = t % ipow(ord, p - k - 1);
          Index merged = (head * ord + b->y.group->times(gk, gk1)) *
                             ipow(ord, p - k - 1) +
                         tail;
          for (Index i = 0; i < ns; ++i)
            mo.to[static_cast<size_t>(i * np + t)] = i * np1 + merged;
        }
        out.push_back(std::move(mo));
      }
      {
        tmodel::SlotMor mo;  // d_p drops g_p and twists every slot by it
        mo.to.resize(static_cast<size_t>(ns * np));
        mo.twist.assign(static_cast<size_t>(ns * np), nullptr);
        for (Index t = 0; t < np; ++t) {
          int gp = static_cast<int>(t % ord);
          Index rest = t / ord;
          for (Index i = 0; i < ns; ++i) {
            mo.to[static_cast<size_t>(i * np + t)] = i * np1 + rest;
            if (gp != b->y.group->id)
              mo.twist[static_cast<size_t>(i * np + t)] = &b->c->act.of(gp);
          }
        }
        out.push_back(std::move(mo));
      }
    } else {
      for (int k = 0; k <= q; ++k) {
        tmodel::SlotMor mo;
        mo.to.resize(static_cast<size_t>(ns * np));
        for (Index i = 0; i < ns; ++i) {
          Index fi =
              b->t->pos(q - 1, b->t->x->face_of(ss[static_cast<size_t>(i)], k));
          for (Index t = 0; t < np; ++t)
            mo.to[static_cast<size_t>(i * np + t)] = fi * np + t;
        }
        out.push_back(std::move(mo));
      }
    }
    return out;
  };
  return spec;
}

// the augmentation at bar degree 0: slot (x, h) folds into slot x twisted
// by rho(h); the target is the twisted model of the base
inline ChainMap augment_map(const tmodel::BuiltModel& big,
                            std::shared_ptr<BarData> bd, TablePtr base_t,
                            const tmodel::BuiltModel& small) {
  return tmodel::model_map(
      big, small,
      [bd, base_t](
          const std::vector<int>& v) -> std::optional<tmodel::LevelMap> {
        if (v[0] != 0) return std::nullopt;
        int q = v[1], ord = bd->ord;
        const auto& ss = bd->t->at(q);
        tmodel::LevelMap lm;
        lm.dst = {q};
        lm.mor.to.resize(ss.size());
        lm.mor.twist.assign(ss.size(), nullptr);
        for (Index i = 0; i < static_cast<Index>(ss.size()); ++i) {
          const Simplex& y = ss[static_cast<size_t>(i)];
          int h = static_cast<int>(y.core_id % ord);
          Simplex x{y.word, y.core_dim, y.core_id / ord};
          lm.mor.to[static_cast<size_t>(i)] = base_t->pos(q, x);
          if (h != bd->y.group->id)
            lm.mor.twist[static_cast<size_t>(i)] = &bd->c->act.of(h);
        }
        return lm;
      });
}

// ---- twisted cyclic bar complex ----

inline tmodel::ModelSpec circle_spec(CoefPtr c, GroupPtr grp, int g) {
  tmodel::ModelSpec spec;
  spec.alg = c->alg;
  spec.unit = c->unit;
  spec.axes = 1;
  spec.slots = [](const std::vector<int>& v) {
    tmodel::Slots s;
    s.n = v[0] + 1;
    for (int j = 0; j < v[0]; ++j) s.hits.push_back({j + 1});
    return s;
  };
  spec.faces = [c, grp, g](int, const std::vector<int>& v) {
    int n = v[0];
    std::vector<tmodel::SlotMor> out;
    for (int i = 0; i < n; ++i) {
      tmodel::SlotMor mo;
      mo.to.resize(static_cast<size_t>(n) + 1);
      for (int k = 0; k <= n; ++k)
        mo.to[static_cast<size_t>(k)] = k <= i ? k : k - 1;
      out.push_back(std::move(mo));
    }
    tmodel::SlotMor mo;  // wrap face folds rho(g)(a_n) into a_0
    mo.to.resize(static_cast<size_t>(n) + 1);
    for (int k = 0; k < n; ++k) mo.to[static_cast<size_t>(k)] = k;
    mo.to[static_cast<size_t>(n)] = 0;
    if (g != grp->id) {
      mo.twist.assign(static_cast<size_t>(n) + 1, nullptr);
      mo.twist[static_cast<size_t>(n)] = &c->act.of(g);
    }
    out.push_back(std::move(mo));
    return out;
  };
  return spec;
}

}  // namespace hmodel
}  // namespace eqhh
