#include "quivdual/errors.hpp"
#include "quivdual/families.hpp"
#include "quivdual/fixed_points.hpp"
#include "quivdual/ifunction.hpp"

#include <gtest/gtest.h>

using namespace qd;

namespace {

bool in_cone(const Cone &c, const Exponent &e) {
    for (auto &h : c) {
        long s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) s += long(h.coef[i]) * e[i];
        if (s < 0) return false;
    }
    return true;
}

std::vector<std::string> names(const FamilyModel &m) { return m.param_names; }

} // namespace

TEST(Families, NamesRoundTrip) {
    for (auto f : {Family::X0, Family::Z3, Family::X9, Family::Xs, Family::Zs, Family::GrBlock, Family::GrBlockDual})
        EXPECT_EQ(family_from_name(family_name(f)), f);
    EXPECT_FALSE(family_from_name("X10"));
    for (Step s : d3_steps()) EXPECT_EQ(step_from_name(step_name(s)), s);
}

TEST(Families, RankConstraints) {
    EXPECT_NO_THROW(validate_ranks(Family::X0, {2, 2, 3, 4}));
    for (auto bad : std::vector<std::vector<int>>{{1, 1, 1, 2}, {2, 2, 4, 4}, {2, 2, 3, 5}, {2, 2, 3}}) {
        try {
            validate_ranks(Family::X0, bad);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), Errc::rank_constraint);
        }
    }
    EXPECT_THROW(validate_ranks(Family::GrBlock, {2, 2, 0}), Error);
    EXPECT_THROW(validate_ranks(Family::Xs, {1, 1, 2, 2, 5, 2, 2, 3, 3}), Error);
    EXPECT_NO_THROW(validate_ranks(Family::Xs, {1, 1, 2, 2, 3, 2, 2, 3, 3}));
}

TEST(Families, StarCases) {
    EXPECT_EQ(star_case({1, 1, 2, 2, 2, 3, 3, 4, 4}), StarCase::a);
    EXPECT_EQ(star_case({1, 1, 2, 2, 2, 3, 2, 3, 3}), StarCase::b);
    EXPECT_EQ(star_case({1, 1, 2, 2, 3, 2, 2, 3, 3}), StarCase::c);
    EXPECT_EQ(building_block_case(1, 2, 0), 1);
    EXPECT_EQ(building_block_case(1, 2, 1), 2);
    EXPECT_EQ(building_block_case(2, 4, 4), 3);
}

TEST(Families, ChainQuiversCarryPhase) {
    auto seq = d3_mutation_sequence({2, 2, 3, 4});
    ASSERT_EQ(seq.size(), 10u);
    auto chain = d3_chain();
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(seq[i].meta.family, family_name(chain[i]));
        EXPECT_FALSE(seq[i].meta.phase.empty());
        auto m = family_model(chain[i], {2, 2, 3, 4});
        for (int id : m.gauge) EXPECT_EQ(seq[i].rank(id), m.size.at(id)) << i;
        // Every model arrow is an arrow of the quiver.
        for (auto [s, d] : m.arrows) EXPECT_GT(seq[i].mult(s, d), 0) << i << ": " << s << "->" << d;
    }
}

TEST(Families, ZsQuiverIsMutatedStar) {
    std::vector<int> N{1, 1, 2, 2, 3, 2, 2, 3, 3};
    Quiver z = family_quiver(Family::Zs, N);
    EXPECT_EQ(z.rank(5), 1);
    auto m = family_model(Family::Zs, N);
    for (auto [s, d] : m.arrows) EXPECT_GT(z.mult(s, d), 0) << s << "->" << d;
    // Each Lefschetz pair (a, b) is the reverse of a dual arrow b -> a.
    for (auto [s, d] : m.lefschetz) EXPECT_GT(z.mult(d, s), 0) << d << "->" << s;
}

TEST(Prefactors, CaseTwoAndThree) {
    auto p2 = step_prefactor(Step::Gr, {1, 2, 1}, {{0}});
    ASSERT_EQ(p2.exps.size(), 1u);
    EXPECT_EQ(p2.exps[0].c, -1);
    auto p3 = step_prefactor(Step::Gr, {2, 4, 4}, {{0, 1}});
    ASSERT_EQ(p3.units.size(), 1u);
    auto m = family_model(Family::GrBlock, {2, 4, 4});
    EXPECT_EQ(p3.units[0].exponent.str(names(m)), "-lambda1-lambda2-lambda3-lambda4+eta1+eta2+eta3+eta4+2");
    EXPECT_EQ(p3.units[0].unit.sign, 1);
    EXPECT_TRUE(step_prefactor(Step::Gr, {1, 2, 0}, {{0}}).is_one());
}

TEST(Prefactors, UnitExponent) {
    // x = roots of node 1, y = roots of node 2, minus every frame parameter, plus N3'.
    auto p = step_prefactor(Step::X0_Z1, {2, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 1, 2}});
    ASSERT_EQ(p.units.size(), 1u);
    auto &E = p.units[0].exponent;
    EXPECT_EQ(E.constant, 1);
    EXPECT_EQ(E.coef.at(0), 1);
    EXPECT_FALSE(E.coef.count(1));
    EXPECT_FALSE(E.coef.count(2));
    EXPECT_EQ(E.coef.at(3), -1);
    EXPECT_EQ(p.units[0].unit.sign, -1);
    EXPECT_TRUE(step_prefactor(Step::Z1_Z2, {2, 2, 3, 4}, {{0, 1}, {0, 1}, {0}}).is_one());
}

TEST(StepMaps, ShapesAreInvertible) {
    for (Step s : d3_steps()) EXPECT_NO_THROW(step_map(s, {2, 2, 3, 4}).validate()) << step_name(s);
    EXPECT_NO_THROW(step_map(Step::Star, {1, 1, 2, 2, 3, 2, 2, 3, 3}).validate());
}

// The declared support cones are not assumed here: each series is computed
// over a full box without pivot constraints and every nonzero term is tested.
TEST(Cones, D3FamiliesSupportLiesInCone) {
    std::vector<int> N{2, 2, 3, 4};
    for (Family f : d3_chain()) {
        auto m = family_model(f, N);
        auto pts = enumerate_fixed_points(f, N);
        auto at = generic_point(m.nparams(), 99);
        for (std::size_t i = 0; i < pts.size(); i += 5) {
            auto s = restricted_I(m, pts[i], at, DegreeDomain{uniform_box(3, 2), 6, {}}, EnumMode::full);
            for (auto &[e, c] : s.terms())
                EXPECT_TRUE(in_cone(m.cone, e)) << family_name(f) << " " << format_exponent(e);
        }
    }
}

TEST(Cones, BuildingBlocksSupportLiesInCone) {
    for (auto f : {Family::GrBlock, Family::GrBlockDual}) {
        auto m = family_model(f, {2, 4, 3});
        auto at = generic_point(m.nparams(), 5);
        for (auto &p : enumerate_fixed_points(f, {2, 4, 3})) {
            auto s = restricted_I(m, p, at, DegreeDomain{uniform_box(1, 4), 10, {}}, EnumMode::full);
            for (auto &[e, c] : s.terms()) EXPECT_TRUE(in_cone(m.cone, e)) << format_exponent(e);
        }
    }
}

TEST(Cones, StarFamiliesSupportLiesInCone) {
    std::vector<int> N{1, 1, 2, 2, 3, 2, 2, 3, 3};
    for (auto f : {Family::Xs, Family::Zs}) {
        auto m = family_model(f, N);
        auto at = generic_point(m.nparams(), 3);
        auto s = restricted_I(m, enumerate_fixed_points(f, N).front(), at,
                              DegreeDomain{uniform_box(7, 1), 4, {}}, EnumMode::full);
        EXPECT_GT(s.size(), 1u);
        for (auto &[e, c] : s.terms()) EXPECT_TRUE(in_cone(m.cone, e)) << family_name(f) << format_exponent(e);
    }
}
