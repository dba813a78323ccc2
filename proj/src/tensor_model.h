#pragma once
// Internal machinery for the normalized tensor models. A model level is the
// tensor power A^{(x)S} over an ordered slot set S; morphisms between levels
// are maps of slot sets with optional per-slot degree-0 twists. Normalization
// works by basis filtering: a basis tensor is degenerate iff some hit-set
// carries the unit on every slot, and faces simply drop degenerate targets.
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eqhh/algebra.h"
#include "eqhh/complex.h"

namespace eqhh {
namespace tmodel {

struct Slots {
  Index n = 0;
  std::vector<std::vector<Index>> hits;  // degeneracy hit-sets
};

// slot map with per-slot twists; `twist` empty means identity everywhere,
// nullptr entries mean identity on that slot. Products along fibers are
// taken in source slot order; the Koszul sign of the block-stable reordering
// is applied automatically.
struct SlotMor {
  std::vector<Index> to;
  std::vector<const SparseMatrix*> twist;
};

// model over `axes` simplicial directions; the builder appends the internal
// degree as the last multicomplex axis
struct ModelSpec {
  AlgPtr alg;  // unit-basis form, non-negatively graded
  int unit = 0;
  int axes = 1;
  std::function<Slots(const std::vector<int>&)> slots;
  // faces d_0 .. d_{v[axis]} along `axis` at level v (v[axis] >= 1), mapping
  // to v - e_axis; the builder applies the alternating signs in list order
  std::function<std::vector<SlotMor>(int, const std::vector<int>&)> faces;
};

// enumerated normalized basis of one level, bucketed by internal degree
struct Level {
  Slots sl;
  std::vector<std::vector<std::uint64_t>> codes;  // [r][dense] -> code
  std::unordered_map<std::uint64_t, std::pair<int, Index>> pos;
  Index total = 0;
};

struct BuiltModel {
  AlgPtr alg;
  int unit = 0;
  int axes = 0;  // simplicial axes; the multicomplex has axes + 1
  int hi = -1;
  std::map<std::vector<int>, Level> levels;
  TotalBasis tb;
  CCPtr complex;
};

// true iff the level passes both gates: normalized dimension <= budget and
// enumeration cost dim_a^n <= 64 * budget; the exact count lands in *count
bool level_fits(Index dim_a, const Slots& s, Index budget, Index* count);

// exact normalized dimension by inclusion-exclusion over the hit-sets;
// throws BudgetExceeded tagged with `where` when a gate fails
Index normalized_count(Index dim_a, const Slots& s, Index budget,
                       const std::string& where);

Level enumerate_level(const DGAlgebra& a, int unit, Slots s, Index budget,
                      const std::string& where);

// largest n in [0, want] such that every level with total simplicial degree
// <= n + 1 passes the gates; -1 when even n = 0 does not fit
int feasible_degree(const ModelSpec& spec, int want, Index budget);

BuiltModel build_model(const ModelSpec& spec, int hi, Index budget,
                       const std::string& what);

// degree-preserving chain map assembled from per-level slot morphisms;
// levels without an entry contribute zero blocks. Commutation with the
// differentials is asserted by the ChainMap constructor.
struct LevelMap {
  std::vector<int> dst;
  SlotMor mor;
};
ChainMap model_map(
    const BuiltModel& src, const BuiltModel& dst,
    const std::function<std::optional<LevelMap>(const std::vector<int>&)>& on);

std::vector<Index> decode(std::uint64_t code, Index n, Index dim);

}  // namespace tmodel
}  // namespace eqhh
