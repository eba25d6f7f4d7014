#pragma once
#include "quivdual/families.hpp"
#include "quivdual/fixed_points.hpp"
#include "quivdual/ifunction.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qd {

struct CheckSpec {
    long box = 3;
    int trials = 3;
    std::uint64_t seed = 1;
    // < 0: every fixed point; otherwise the distinguished point plus this many
    // points drawn from the rest.
    int sample = -1;
    int jobs = 1;
    bool audit = true;           // boundary-slack audit on trial 0
    bool guard = true;           // prefactor-necessity guard on the first point
    bool force_unit_prefactor = false;
    EnumMode mode = EnumMode::pivot;
};

struct TrialResult {
    int trial = 0;
    std::uint64_t seed = 0;
    bool pass = false;
    std::size_t terms = 0;                 // nonzero coefficients of the left side in the box
    std::optional<Exponent> mismatch;
    std::string left, right;               // coefficients at the mismatch
};

struct PairResult {
    std::size_t index = 0;                 // position in the source enumeration
    std::string source, target;
    std::vector<TrialResult> trials;
    bool audit_run = false;
    bool audit_pass = true;
    std::string error;
    bool pass = false;
};

struct CheckReport {
    std::string identity;
    std::vector<int> ranks;
    std::string kahler_case;
    long box = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> map;          // images of the target family's variables
    std::string prefactor;
    std::size_t fixed_points = 0;          // size of the source enumeration
    std::vector<PairResult> pairs;
    bool guard_run = false;
    bool guard_failed = false;             // forcing the prefactor to 1 broke the identity
    std::string guard_detail;
    std::vector<std::string> table;        // symbolic rows (cycle only)
    bool table_pass = true;
    bool composition_identity = true;
    std::vector<CheckReport> steps;        // per-step reports (cycle only)
    std::string error;
    bool pass = false;
    double seconds = 0;                    // wall clock; never serialized
};

FixedPoint distinguished_point(Family f, const std::vector<int> &ranks);

CheckReport check_building_block(int r, int n, int m, const CheckSpec &spec);
CheckReport check_star(const std::vector<int> &ranks, const CheckSpec &spec);
CheckReport check_d3_step(Step s, const std::vector<int> &ranks, const CheckSpec &spec);
// Table rows, composition to the identity, then every chain step.
CheckReport check_cycle(const std::vector<int> &ranks, const CheckSpec &spec, bool run_steps = true);

} // namespace qd
