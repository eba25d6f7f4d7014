#pragma once
#include "quivdual/families.hpp"
#include "quivdual/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qd {

// A torus fixed point, given by the Chern-root assignment: for each gauge node
// (model gauge order) the sorted equivariant-parameter indices of its roots.
struct FixedPoint {
    Family family = Family::X0;
    std::vector<std::vector<int>> roots;

    bool operator==(const FixedPoint &) const = default;
    auto operator<=>(const FixedPoint &o) const { return roots <=> o.roots; }
};

// All fixed points in lexicographic order of the root lists.
std::vector<FixedPoint> enumerate_fixed_points(Family f, const std::vector<int> &ranks);

// Checks the defining subset conditions directly.
bool is_member(Family f, const std::vector<int> &ranks, const FixedPoint &p);

// Product of binomials counting the fixed points.
Z closed_form_count(Family f, const std::vector<int> &ranks);

// Pairing of the fixed points of the two sides of a step. Throws NOT_IN_FAMILY.
FixedPoint iota(Step s, const std::vector<int> &ranks, const FixedPoint &p);
FixedPoint iota_inverse(Step s, const std::vector<int> &ranks, const FixedPoint &p);

std::string format_fixed_point(const FixedPoint &p);

// Values of the equivariant parameters.
using EquivariantPoint = std::vector<Q>;

std::uint64_t splitmix64(std::uint64_t x);
// Integer part in [-50,50] plus a fractional part b/10007 with pairwise distinct b,
// so all differences are non-integral.
EquivariantPoint generic_point(std::size_t nparams, std::uint64_t seed);
EquivariantPoint negated(const EquivariantPoint &p);

} // namespace qd
