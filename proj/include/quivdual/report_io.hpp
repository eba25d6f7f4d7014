#pragma once
#include "quivdual/checker.hpp"
#include "quivdual/fixed_points.hpp"
#include "quivdual/series.hpp"

#include "quivdual/quiver_io.hpp"

namespace qd {

Json series_to_json(const LaurentSeries &s);
LaurentSeries series_from_json(const Json &j);

Json fixed_point_to_json(const FixedPoint &p);
Json point_to_json(const EquivariantPoint &p, std::uint64_t seed,
                             const std::vector<std::string> &names);

// Deterministic for a fixed seed and configuration; wall-clock time is left out.
Json report_to_json(const CheckReport &r);

// Pretty JSON text with a trailing newline.
std::string dump(const Json &j);

} // namespace qd
