#include "tensor_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eqhh {
namespace tmodel {

namespace {

long double pow_ld(Index d, Index n) {
  return std::pow(static_cast<long double>(d), static_cast<long double>(n));
}

int sum(const std::vector<int>& v) {
  return std::accumulate(v.begin(), v.end(), 0);
}

// columns of a matrix, extracted once and cached by pointer
struct ColumnCache {
  std::map<const SparseMatrix*, std::vector<SparseVec>> cols;

  const SparseVec& get(const SparseMatrix* m, Index j) {
    auto it = cols.find(m);
    if (it == cols.end()) {
      std::vector<SparseVec> c(static_cast<size_t>(m->cols()));
      for (Index i = 0; i < m->rows(); ++i)
        for (const auto& [col, val] : m->row(i).e)
          c[static_cast<size_t>(col)].set(i, val);
      it = cols.emplace(m, std::move(c)).first;
    }
    return it->second[static_cast<size_t>(j)];
  }
};

// Koszul sign of the block-stable reordering induced by a slot map: count
// inversions to[s] > to[s'] for s < s' among slots holding odd-degree factors
int perm_sign(const SlotMor& mor, const std::vector<Index>& idx,
              const std::vector<int>& deg) {
  std::vector<Index> odd;
  for (size_t s = 0; s < idx.size(); ++s)
    if (deg[static_cast<size_t>(idx[s])] % 2 != 0)
      odd.push_back(static_cast<Index>(s));
  int inv = 0;
  for (size_t a = 0; a < odd.size(); ++a)
    for (size_t b = a + 1; b < odd.size(); ++b)
      if (mor.to[static_cast<size_t>(odd[a])] >
          mor.to[static_cast<size_t>(odd[b])])
        inv ^= 1;
  return inv == 0 ? 1 : -1;
}

// apply a slot morphism to one basis tensor and stream the expansion
template <typename Sink>
void expand(const DGAlgebra& a, int unit, const SlotMor& mor, Index n_dst,
            const std::vector<Index>& idx, const Scalar& base,
            ColumnCache& cc, Sink&& sink) {
  Scalar coeff = base;
  if (perm_sign(mor, idx, a.deg) < 0) coeff = -coeff;

  Index dim = a.dim();
  std::vector<SparseVec> acc(static_cast<size_t>(n_dst));
  std::vector<char> touched(static_cast<size_t>(n_dst), 0);
  bool twisted = !mor.twist.empty();
  for (size_t s = 0; s < idx.size(); ++s) {
    const SparseMatrix* tw = twisted ? mor.twist[s] : nullptr;
    SparseVec v;
    if (tw != nullptr) {
      v = cc.get(tw, idx[s]);
    } else {
      v.set(idx[s], Scalar::one(a.field));
    }
    size_t t = static_cast<size_t>(mor.to[s]);
    if (!touched[t]) {
      acc[t] = std::move(v);
      touched[t] = 1;
    } else {
      acc[t] = a.mul_vec(acc[t], v);
    }
    if (touched[t] && acc[t].is_zero()) return;
  }

  std::vector<std::pair<std::uint64_t, Scalar>> cur;
  cur.emplace_back(0, coeff);
  std::uint64_t w = 1;
  for (size_t t = 0; t < static_cast<size_t>(n_dst); ++t) {
    if (touched[t]) {
      std::vector<std::pair<std::uint64_t, Scalar>> next;
      for (const auto& [c, q] : cur)
        for (const auto& [j, val] : acc[t].e)
          next.emplace_back(c + static_cast<std::uint64_t>(j) * w, q * val);
      cur = std::move(next);
      if (cur.empty()) return;
    } else {
      for (auto& [c, q] : cur)
        c += static_cast<std::uint64_t>(unit) * w;
    }
    w *= static_cast<std::uint64_t>(dim);
  }
  for (const auto& [c, q] : cur) sink(c, q);
}

}  // namespace

std::vector<Index> decode(std::uint64_t code, Index n, Index dim) {
  std::vector<Index> idx(static_cast<size_t>(n));
  for (Index s = 0; s < n; ++s) {
    idx[static_cast<size_t>(s)] =
        static_cast<Index>(code % static_cast<std::uint64_t>(dim));
    code /= static_cast<std::uint64_t>(dim);
  }
  return idx;
}

bool level_fits(Index dim_a, const Slots& s, Index budget, Index* count) {
  if (count != nullptr) *count = 0;
  if (pow_ld(dim_a, s.n) > 64.0L * static_cast<long double>(budget))
    return false;
  size_t k = s.hits.size();
  if (k > 24) return false;
  std::vector<char> mark(static_cast<size_t>(s.n), 0);
  __int128 total = 0;
  for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
    std::fill(mark.begin(), mark.end(), 0);
    Index u = 0;
    int par = 0;
    for (size_t h = 0; h < k; ++h)
      if (mask & (1ull << h)) {
        par ^= 1;
        for (Index slot : s.hits[h])
          if (!mark[static_cast<size_t>(slot)]) {
            mark[static_cast<size_t>(slot)] = 1;
            ++u;
          }
      }
    __int128 term = 1;
    for (Index i = 0; i < s.n - u; ++i) term *= dim_a;
    total += par == 0 ? term : -term;
  }
  if (total < 0 || total > static_cast<__int128>(budget)) return false;
  if (count != nullptr) *count = static_cast<Index>(total);
  return true;
}

Index normalized_count(Index dim_a, const Slots& s, Index budget,
                       const std::string& where) {
  Index c = 0;
  require(level_fits(dim_a, s, budget, &c), ErrKind::BudgetExceeded,
          "level " + where + " exceeds the budget (slots=" +
              std::to_string(s.n) + ", dim=" + std::to_string(dim_a) + ")");
  return c;
}

Level enumerate_level(const DGAlgebra& a, int unit, Slots s, Index budget,
                      const std::string& where) {
  normalized_count(a.dim(), s, budget, where);
  Level lvl;
  Index n = s.n;
  Index dim = a.dim();

  std::vector<std::vector<int>> hits_of(static_cast<size_t>(n));
  std::vector<Index> cnt(s.hits.size(), 0);
  int fully = 0;
  for (size_t h = 0; h < s.hits.size(); ++h) {
    for (Index slot : s.hits[h])
      hits_of[static_cast<size_t>(slot)].push_back(static_cast<int>(h));
    cnt[h] = unit == 0 ? 0 : static_cast<Index>(s.hits[h].size());
    if (cnt[h] == 0) ++fully;
  }

  std::vector<Index> idx(static_cast<size_t>(n), 0);
  std::vector<std::uint64_t> w(static_cast<size_t>(n), 1);
  for (Index i = 1; i < n; ++i)
    w[static_cast<size_t>(i)] =
        w[static_cast<size_t>(i - 1)] * static_cast<std::uint64_t>(dim);
  long long r = static_cast<long long>(n) *
                (n > 0 ? a.deg[0] : 0);
  std::uint64_t code = 0;

  auto bump = [&](Index slot, Index oldv, Index newv) {
    r += a.deg[static_cast<size_t>(newv)] - a.deg[static_cast<size_t>(oldv)];
    code += (static_cast<std::uint64_t>(newv) -
             static_cast<std::uint64_t>(oldv)) *
            w[static_cast<size_t>(slot)];
    bool was_u = oldv == unit, is_u = newv == unit;
    if (was_u == is_u) return;
    for (int h : hits_of[static_cast<size_t>(slot)]) {
      if (is_u) {
        if (--cnt[static_cast<size_t>(h)] == 0) ++fully;
      } else {
        if (cnt[static_cast<size_t>(h)]++ == 0) --fully;
      }
    }
  };

  for (;;) {
    if (fully == 0) {
      if (static_cast<size_t>(r) >= lvl.codes.size())
        lvl.codes.resize(static_cast<size_t>(r) + 1);
      lvl.codes[static_cast<size_t>(r)].push_back(code);
    }
    Index sp = 0;
    while (sp < n) {
      Index old = idx[static_cast<size_t>(sp)];
      Index nw = old + 1 == dim ? 0 : old + 1;
      idx[static_cast<size_t>(sp)] = nw;
      bump(sp, old, nw);
      if (nw != 0) break;
      ++sp;
    }
    if (sp == n) break;
  }

  for (size_t rr = 0; rr < lvl.codes.size(); ++rr)
    for (size_t i = 0; i < lvl.codes[rr].size(); ++i) {
      lvl.pos.emplace(lvl.codes[rr][i],
                      std::make_pair(static_cast<int>(rr),
                                     static_cast<Index>(i)));
      ++lvl.total;
    }
  lvl.sl = std::move(s);
  return lvl;
}

namespace {

void levels_below(int axes, int top, std::vector<int>& v,
                  const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(v.size()) == axes) {
    f(v);
    return;
  }
  int used = sum(v);
  for (int c = 0; c + used <= top; ++c) {
    v.push_back(c);
    levels_below(axes, top, v, f);
    v.pop_back();
  }
}

std::string level_str(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i)
    s += (i != 0 ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace

int feasible_degree(const ModelSpec& spec, int want, Index budget) {
  Index dim = spec.alg->dim();
  for (int n = want; n >= 0; --n) {
    bool ok = true;
    std::vector<int> v;
    levels_below(spec.axes, n + 1, v, [&](const std::vector<int>& lv) {
      if (!ok) return;
      Index c = 0;
      if (!level_fits(dim, spec.slots(lv), budget, &c)) ok = false;
    });
    if (ok) return n;
  }
  return -1;
}

BuiltModel build_model(const ModelSpec& spec, int hi, Index budget,
                       const std::string& what) {
  require(spec.alg != nullptr, ErrKind::InvalidInput, "model without algebra");
  const DGAlgebra& a = *spec.alg;
  require(a.min_deg() >= 0, ErrKind::InvalidAlgebra,
          "model builders require non-negative grading");
  BuiltModel bm;
  bm.alg = spec.alg;
  bm.unit = spec.unit;
  bm.axes = spec.axes;
  bm.hi = hi;

  std::vector<int> v;
  levels_below(spec.axes, hi, v, [&](const std::vector<int>& lv) {
    bm.levels.emplace(lv, enumerate_level(a, spec.unit, spec.slots(lv), budget,
                                          what + " " + level_str(lv)));
  });

  Multicomplex mc(a.field, spec.axes + 1);
  std::vector<SparseVec> dcol(static_cast<size_t>(a.dim()));
  for (Index i = 0; i < a.d.rows(); ++i)
    for (const auto& [j, val] : a.d.row(i).e)
      dcol[static_cast<size_t>(j)].set(i, val);

  ColumnCache cc;
  for (auto& [lv, lvl] : bm.levels) {
    int base = sum(lv);
    std::vector<int> cell(lv);
    cell.push_back(0);
    for (size_t r = 0; r < lvl.codes.size(); ++r) {
      if (lvl.codes[r].empty() || base + static_cast<int>(r) > hi) continue;
      cell.back() = static_cast<int>(r);
      mc.set_dim(cell, static_cast<Index>(lvl.codes[r].size()));
    }
  }

  for (auto& [lv, lvl] : bm.levels) {
    int base = sum(lv);
    Index dim = a.dim();
    Index n_src = lvl.sl.n;

    // simplicial axes
    for (int axis = 0; axis < spec.axes; ++axis) {
      if (lv[static_cast<size_t>(axis)] == 0) continue;
      std::vector<int> wv(lv);
      --wv[static_cast<size_t>(axis)];
      const Level& dst = bm.levels.at(wv);
      auto mors = spec.faces(axis, lv);
      for (size_t r = 0; r < lvl.codes.size(); ++r) {
        if (lvl.codes[r].empty() || base + static_cast<int>(r) > hi) continue;
        if (r >= dst.codes.size() || dst.codes[r].empty()) continue;
        SparseMatrix m(static_cast<Index>(dst.codes[r].size()),
                       static_cast<Index>(lvl.codes[r].size()), a.field);
        for (size_t si = 0; si < lvl.codes[r].size(); ++si) {
          auto idx = decode(lvl.codes[r][si], n_src, dim);
          for (size_t fi = 0; fi < mors.size(); ++fi) {
            Scalar s0 = Scalar::of_int(a.field, fi % 2 == 0 ? 1 : -1);
            expand(a, spec.unit, mors[fi], dst.sl.n, idx, s0, cc,
                   [&](std::uint64_t cde, const Scalar& q) {
                     auto it = dst.pos.find(cde);
                     if (it == dst.pos.end()) return;
                     require(it->second.first == static_cast<int>(r),
                             ErrKind::SignConventionViolation,
                             "face changed internal degree");
                     m.add_to(it->second.second, static_cast<Index>(si), q);
                   });
          }
        }
        if (!m.is_zero()) {
          std::vector<int> cell(lv);
          cell.push_back(static_cast<int>(r));
          mc.set_diff(axis, cell, std::move(m));
        }
      }
    }

    // internal axis
    for (size_t r = 1; r < lvl.codes.size(); ++r) {
      if (lvl.codes[r].empty() || base + static_cast<int>(r) > hi) continue;
      if (lvl.codes[r - 1].empty()) continue;
      SparseMatrix m(static_cast<Index>(lvl.codes[r - 1].size()),
                     static_cast<Index>(lvl.codes[r].size()), a.field);
      for (size_t si = 0; si < lvl.codes[r].size(); ++si) {
        std::uint64_t code = lvl.codes[r][si];
        auto idx = decode(code, n_src, dim);
        int pre = 0;
        std::uint64_t w = 1;
        for (Index s = 0; s < n_src; ++s) {
          const SparseVec& dc = dcol[static_cast<size_t>(
              idx[static_cast<size_t>(s)])];
          if (!dc.is_zero()) {
            for (const auto& [j, val] : dc.e) {
              std::uint64_t cde =
                  code + (static_cast<std::uint64_t>(j) -
                          static_cast<std::uint64_t>(
                              idx[static_cast<size_t>(s)])) *
                             w;
              auto it = lvl.pos.find(cde);
              if (it == lvl.pos.end()) continue;
              m.add_to(it->second.second, static_cast<Index>(si),
                       pre % 2 == 0 ? val : -val);
            }
          }
          pre += a.deg[static_cast<size_t>(idx[static_cast<size_t>(s)])];
          w *= static_cast<std::uint64_t>(dim);
        }
      }
      if (!m.is_zero()) {
        std::vector<int> cell(lv);
        cell.push_back(static_cast<int>(r));
        mc.set_diff(spec.axes, cell, std::move(m));
      }
    }
  }

  mc.validate(hi);
  bm.tb = total_basis(mc, hi);
  bm.complex = make_complex(total_complex(mc, hi, false, budget));
  return bm;
}

ChainMap model_map(
    const BuiltModel& src, const BuiltModel& dst,
    const std::function<std::optional<LevelMap>(const std::vector<int>&)>&
        on) {
  require(src.alg->field == dst.alg->field, ErrKind::MixedFields,
          "model map across fields");
  const DGAlgebra& a = *dst.alg;
  std::map<int, SparseMatrix> blocks;
  ColumnCache cc;
  for (const auto& [lv, lvl] : src.levels) {
    auto lm = on(lv);
    if (!lm.has_value()) continue;
    int base = sum(lv);
    require(sum(lm->dst) == base, ErrKind::DimensionMismatch,
            "model map must preserve total degree");
    auto dit = dst.levels.find(lm->dst);
    require(dit != dst.levels.end(), ErrKind::DimensionMismatch,
            "model map target level missing");
    const Level& dl = dit->second;
    for (size_t r = 0; r < lvl.codes.size(); ++r) {
      if (lvl.codes[r].empty()) continue;
      int n = base + static_cast<int>(r);
      if (n > src.hi || n > dst.hi) continue;
      if (r >= dl.codes.size() || dl.codes[r].empty()) continue;
      std::vector<int> scell(lv), dcell(lm->dst);
      scell.push_back(static_cast<int>(r));
      dcell.push_back(static_cast<int>(r));
      Index so = src.tb.block_offset(scell);
      Index dofs = dst.tb.block_offset(dcell);
      auto bit = blocks.find(n);
      if (bit == blocks.end())
        bit = blocks
                  .emplace(n, SparseMatrix(dst.complex->dim(n),
                                           src.complex->dim(n), a.field))
                  .first;
      SparseMatrix& blk = bit->second;
      for (size_t si = 0; si < lvl.codes[r].size(); ++si) {
        auto idx = decode(lvl.codes[r][si], lvl.sl.n, src.alg->dim());
        expand(a, dst.unit, lm->mor, dl.sl.n, idx, Scalar::one(a.field), cc,
               [&](std::uint64_t cde, const Scalar& q) {
                 auto it = dl.pos.find(cde);
                 if (it == dl.pos.end()) return;
                 require(it->second.first == static_cast<int>(r),
                         ErrKind::SignConventionViolation,
                         "model map changed internal degree");
                 blk.add_to(dofs + it->second.second,
                            so + static_cast<Index>(si), q);
               });
      }
    }
  }
  return ChainMap(src.complex, dst.complex, std::move(blocks));
}

}  // namespace tmodel
}  // namespace eqhh
