#include "quivdual/errors.hpp"
#include "quivdual/families.hpp"
#include "quivdual/kahler.hpp"

#include <gtest/gtest.h>

using namespace qd;

namespace {

const std::vector<std::string> kNames{"q1", "q2", "q3"};

std::string img(const KahlerMap &m, std::size_t j) { return format(image(m, j), kNames); }

} // namespace

TEST(KahlerMap, IdentityAndRelabel) {
    EXPECT_TRUE(is_identity(KahlerMap::identity(3)));
    auto r = KahlerMap::relabel({1, 0, 2});
    EXPECT_FALSE(is_identity(r));
    EXPECT_EQ(img(r, 0), "q2");
    EXPECT_TRUE(is_identity(compose(r, r)));
}

TEST(KahlerMap, ValidateRejectsSingular) {
    KahlerMap m{{1, 1}, {{1, 1}, {2, 2}}, {}, {{}, {}}};
    EXPECT_THROW(m.validate(), Error);
    KahlerMap ok{{1, -1}, {{1, 1}, {0, 1}}, {}, {{}, {}}};
    EXPECT_NO_THROW(ok.validate());
}

TEST(KahlerMap, ImagesRoundTrip) {
    KahlerMap m{{-1, 1}, {{1, 1}, {0, -1}}, {Unit{1, -1}}, {{-1}, {0}}};
    std::vector<KExpr> imgs{image(m, 0), image(m, 1)};
    auto back = from_images(imgs, 2);
    EXPECT_EQ(image(back, 0), imgs[0]);
    EXPECT_EQ(image(back, 1), imgs[1]);
    EXPECT_EQ(format(imgs[0], {"a", "b"}), "-(1-b)^-1*a*b");
}

// A unit in an inverted variable is rewritten: 1 + s/q = s q^-1 (1 + s q).
TEST(KahlerMap, ComposeThroughInvertedUnit) {
    KahlerMap inv{{1}, {{-1}}, {}, {{}}};
    KahlerMap unit{{1}, {{1}}, {Unit{0, 1}}, {{1}}};
    // then = q (1+q) with q = first's image 1/q
    auto c = compose(inv, unit);
    EXPECT_EQ(format(image(c, 0), {"q"}), "(1+q)*q^-2");
}

TEST(CycleTable, CumulativeRowsMatch) {
    std::vector<int> N{2, 2, 3, 4};
    auto rows = cycle_table_rows(N);
    ASSERT_EQ(rows.size(), 10u);
    KahlerMap cum = KahlerMap::identity(3);
    auto steps = d3_steps();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) cum = compose(cum, step_map(steps[i - 1], N));
        for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(image(cum, j), rows[i][j]) << "row " << i << " var " << j;
    }
    EXPECT_TRUE(is_identity(compose(cum, step_map(Step::X9_X0, N))));
}

// Row for X7 read off the printed table: (q2^-1, q1^-1, q1 q2 q3).
TEST(CycleTable, RowX7) {
    auto rows = cycle_table_rows({2, 2, 3, 4});
    EXPECT_EQ(format(rows[7][0], kNames), "q2^-1");
    EXPECT_EQ(format(rows[7][1], kNames), "q1^-1");
    EXPECT_EQ(format(rows[7][2], kNames), "q1*q2*q3");
}

TEST(CycleTable, CompositionIsIdentityForOtherRanks) {
    for (auto N : std::vector<std::vector<int>>{{2, 2, 3, 4}, {2, 3, 4, 5}, {3, 3, 4, 6}, {3, 3, 5, 6}, {2, 4, 5, 6}}) {
        KahlerMap cum = KahlerMap::identity(3);
        for (Step s : d3_steps()) cum = compose(cum, step_map(s, N));
        EXPECT_TRUE(is_identity(cum)) << N[0] << N[1] << N[2] << N[3];
    }
}

TEST(CycleTable, MonomialFixed) {
    KahlerMap cum = KahlerMap::identity(3);
    for (Step s : d3_steps()) cum = compose(cum, step_map(s, {2, 2, 3, 4}));
    KExpr m = image(cum, 0) * image(cum, 1) * image(cum, 2);
    EXPECT_EQ(format(m, kNames), "q1*q2*q3");
}
