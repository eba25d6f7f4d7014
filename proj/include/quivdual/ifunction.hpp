#pragma once
#include "quivdual/families.hpp"
#include "quivdual/fixed_points.hpp"
#include "quivdual/series.hpp"

#include <cstdint>
#include <vector>

namespace qd {

// pivot: only degrees where no arrow between equal parameters forces a zero
//        factor (exactly the support of the sum at a generic point);
// effective: every degree passing the effectivity filter;
// full: every degree in the domain.
enum class EnumMode { pivot, effective, full };

// lo <= coef . (node sums) <= hi
struct LinearBound {
    std::vector<int> coef;
    long lo = 0;
    long hi = 0;
};

// Node sums range over `sums` (which is also the box of the result) and satisfy
// `extra`; every component is bounded by `cap` in absolute value.
struct DegreeDomain {
    Box sums;
    long cap = 0;
    std::vector<LinearBound> extra;
};

struct EnumStats {
    std::uint64_t leaves = 0;    // complete degree vectors visited
    std::uint64_t nonzero = 0;   // degree vectors with a nonzero term
    std::uint64_t filtered = 0;  // rejected by the effectivity filter
};

// Degree vector: per gauge node (model order) one entry per Chern root.
using DegreeVector = std::vector<std::vector<int>>;

LaurentSeries restricted_I(const FamilyModel &m, const FixedPoint &p, const EquivariantPoint &at,
                           const DegreeDomain &dom, EnumMode mode = EnumMode::pivot,
                           EnumStats *stats = nullptr);

// One summand (without the monomial), evaluated factor by factor with sfr.
Q term_value(const FamilyModel &m, const FixedPoint &p, const EquivariantPoint &at, const DegreeVector &d);

// Product of sfr over the model's Lefschetz pairs.
Q lefschetz_factor(const FamilyModel &m, const FixedPoint &p, const EquivariantPoint &at,
                   const DegreeVector &d);

// Each block, seen as a bipartite graph (source slots, target slots, edge when
// n_a - n_b >= 0), has a matching of size min(#sources, #targets).
bool effectivity_prune(const FamilyModel &m, const DegreeVector &d);

// The two matrix conditions read literally: every row and column of
// (n_a - n_b) has an entry >= 0, and the clipped matrix max(n_a - n_b, 0) has
// full row or column rank.
bool effectivity_literal(const FamilyModel &m, const DegreeVector &d);

// Closed-form building-block series; parameters are lambda_1..lambda_n, eta_1..eta_m.
LaurentSeries building_block_I(int r, int n, int m, const FixedPoint &p, const EquivariantPoint &at,
                               long radius);
LaurentSeries building_block_I_dual(int r, int n, int m, const FixedPoint &p,
                                    const EquivariantPoint &at, long radius);

} // namespace qd
