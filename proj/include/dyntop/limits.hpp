#pragma once

#include <cstddef>
#include <vector>

#include "dyntop/families.hpp"
#include "dyntop/hit_set.hpp"
#include "dyntop/numeric.hpp"
#include "dyntop/symbolic.hpp"

namespace dyntop {

/// Cell-level picture of an omega-limit set: the cells (L-words, or grid
/// boxes) that the orbit keeps hitting along every generator.
///
/// Nonempty cell sets at every precision imply a nonempty limit set by
/// compactness. The converse direction is not available from finite data.
template <class Cell>
struct OmegaCells {
  std::size_t precision = 0;
  std::vector<Cell> cells;
  Exactness exactness = Exactness::exact;

  bool empty() const noexcept { return cells.empty(); }
};

using OmegaApprox = OmegaCells<Word>;
using NumericOmega = OmegaCells<GridBox>;

/// { w of length L : n_T(x, C[w]) meets every generator of fam }.
/// family_exactness says whether the generators are exact or lower bounds
/// of the sets they stand for; lower-bound generators shrink the result.
OmegaApprox omega_approx(const SymbolicSystem& sys, const Point& x, const FamilySpec& fam,
                         std::size_t length, Exactness family_exactness = Exactness::exact);

/// Words whose last occurrence in x before H is at index H - tail_slack or
/// later.
OmegaApprox omega_T_approx(const SymbolicSystem& sys, const Point& x, std::size_t length,
                           std::size_t tail_slack);

/// omega_approx covers every admissible word of length L.
bool is_kF_transitive_point(const SymbolicSystem& sys, const Point& x, const FamilySpec& fam,
                            std::size_t length);

/// Grid boxes hit along every generator by the orbit of x; the grid fixes
/// the precision.
NumericOmega omega_approx(const TorusSystem& sys, const TorusPoint& x, const FamilySpec& fam,
                          Exactness family_exactness = Exactness::exact);
/// Same, for the seed orbit.
NumericOmega omega_approx(const TorusSystem& sys, const FamilySpec& fam,
                          Exactness family_exactness = Exactness::exact);

}  // namespace dyntop
