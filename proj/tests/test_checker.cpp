#include "quivdual/checker.hpp"
#include "quivdual/report_io.hpp"

#include <gtest/gtest.h>

using namespace qd;

namespace {

CheckSpec small(long box, int trials, int sample = -1) {
    CheckSpec s;
    s.box = box;
    s.trials = trials;
    s.sample = sample;
    return s;
}

} // namespace

TEST(Checker, BuildingBlockPasses) {
    auto r = check_building_block(1, 2, 0, small(4, 2));
    EXPECT_TRUE(r.pass) << r.error;
    EXPECT_EQ(r.pairs.size(), 2u);
    for (auto &p : r.pairs) {
        EXPECT_TRUE(p.pass);
        EXPECT_TRUE(p.audit_pass);
    }
}

TEST(Checker, CaseTwoGuardFires) {
    auto r = check_building_block(1, 2, 1, small(3, 1));
    EXPECT_TRUE(r.pass) << r.error;
    EXPECT_TRUE(r.guard_run);
    EXPECT_TRUE(r.guard_failed) << r.guard_detail;
}

TEST(Checker, ForcedUnitPrefactorFails) {
    auto spec = small(3, 1);
    spec.force_unit_prefactor = true;
    spec.guard = false;
    EXPECT_FALSE(check_building_block(2, 4, 4, spec).pass);
    EXPECT_FALSE(check_d3_step(Step::X0_Z1, {2, 2, 3, 4}, CheckSpec{2, 1, 1, 2, 1, false, false, true}).pass);
}

TEST(Checker, D3StepSampled) {
    auto r = check_d3_step(Step::X0_Z1, {2, 2, 3, 4}, small(2, 1, 3));
    EXPECT_TRUE(r.pass) << r.error;
    EXPECT_EQ(r.pairs.size(), 4u);
    EXPECT_EQ(r.fixed_points, 36u);
    EXPECT_TRUE(r.guard_failed);
}

TEST(Checker, CycleSymbolicPart) {
    auto r = check_cycle({2, 2, 3, 4}, small(1, 1), false);
    EXPECT_TRUE(r.table_pass);
    EXPECT_TRUE(r.composition_identity);
    EXPECT_EQ(r.table.size(), 10u);
    EXPECT_TRUE(r.steps.empty());
}

TEST(Checker, ReportsAreDeterministic) {
    auto spec = small(2, 2);
    spec.seed = 9;
    auto a = dump(report_to_json(check_building_block(1, 3, 1, spec)));
    auto b = dump(report_to_json(check_building_block(1, 3, 1, spec)));
    EXPECT_EQ(a, b);
    spec.seed = 10;
    EXPECT_NE(a, dump(report_to_json(check_building_block(1, 3, 1, spec))));
}
