#include "quivdual/errors.hpp"
#include "quivdual/families.hpp"
#include "quivdual/quiver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qd;

namespace {

Quiver d3(int N1 = 2, int N2 = 2, int N3 = 3, int N4 = 4) { return family_quiver(Family::X0, {N1, N2, N3, N4}); }

Quiver star_center(int n3, int n4, int n5, int n6, int n7) {
    Quiver q;
    q.add_node(3, n3, false);
    q.add_node(4, n4, false);
    q.add_node(5, n5, false);
    q.add_node(6, n6, false);
    q.add_node(7, n7, false);
    q.add_arrow(3, 5);
    q.add_arrow(4, 5);
    q.add_arrow(5, 6);
    q.add_arrow(5, 7);
    return q;
}

Potential words(std::vector<std::vector<Edge>> paths) {
    Potential w;
    for (auto &p : paths) w.push_back({Q(1), p});
    return canonical_potential(w);
}

int pos(int x) { return x > 0 ? x : 0; }

// Random cluster quiver: a few framed nodes, no arrows between framed nodes,
// at most one direction per pair, ranks large enough for every mutation.
Quiver random_quiver(std::mt19937_64 &rng) {
    int n = 2 + int(rng() % 5);
    Quiver q;
    std::vector<bool> framed(std::size_t(n) + 1, false);
    for (int i = 1; i <= n; ++i) {
        framed[std::size_t(i)] = i > 1 && rng() % 4 == 0;
        q.add_node(i, 1 + int(rng() % 4), framed[std::size_t(i)]);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            if (framed[std::size_t(i)] && framed[std::size_t(j)]) continue;
            int r = int(rng() % 5);
            if (r == 1) q.add_arrow(i, j, 1 + int(rng() % 2));
            if (r == 2) q.add_arrow(j, i, 1 + int(rng() % 2));
        }
    for (int k : q.gauge_ids()) {
        int cap = std::max(outgoing(q, k), incoming(q, k));
        if (q.rank(k) > cap) q.set_rank(k, cap);
    }
    return q;
}

} // namespace

TEST(Counts, OutgoingIncoming) {
    Quiver q = d3();
    EXPECT_EQ(outgoing(q, 3), 4);
    EXPECT_EQ(incoming(q, 3), 4);
    Quiver iso;
    iso.add_node(1, 3, false);
    EXPECT_EQ(outgoing(iso, 1), 0);
    EXPECT_EQ(incoming(iso, 1), 0);
    Quiver s = star_center(2, 2, 3, 2, 2);
    EXPECT_EQ(outgoing(s, 5), 4);
    EXPECT_EQ(incoming(s, 5), 4);
    EXPECT_THROW(outgoing(q, 9), Error);
}

TEST(Mutate, D3AtNode3) {
    auto r = mutate(d3(), 3);
    const Quiver &q = r.quiver;
    EXPECT_EQ(q.rank(1), 2);
    EXPECT_EQ(q.rank(2), 2);
    EXPECT_EQ(q.rank(3), 1);
    EXPECT_EQ(q.rank(4), 4);
    std::map<Edge, int> want{{{1, 4}, 1}, {{2, 4}, 1}, {{4, 3}, 1}, {{3, 1}, 1}, {{3, 2}, 1}};
    EXPECT_EQ(q.arrows(), want);
    EXPECT_EQ(q.potential, words({{{3, 1}, {1, 4}, {4, 3}}, {{3, 2}, {2, 4}, {4, 3}}}));
    EXPECT_EQ(r.kahler_case, KahlerCase::OUT_EQ_IN);
    EXPECT_TRUE(r.annihilated.empty());
}

TEST(Mutate, StarCenterRank) {
    auto r = mutate(star_center(2, 2, 3, 2, 2), 5);
    EXPECT_EQ(r.quiver.rank(5), 1);
}

TEST(Mutate, Errors) {
    Quiver q = d3();
    try {
        mutate(q, 4);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::framed_node);
    }
    try {
        mutate(q, 7);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::unknown_node);
    }
    Quiver bad = d3();
    bad.set_rank(3, 9);
    try {
        mutate(bad, 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::negative_rank);
    }
}

TEST(Mutate, ValidateRejectsTwoCycle) {
    Quiver q;
    q.add_node(1, 1, false);
    q.add_node(2, 1, false);
    q.add_arrow(1, 2);
    q.add_arrow(2, 1);
    EXPECT_THROW(q.validate(), Error);
}

TEST(Potential, ChainReproducesExamples) {
    auto seq = d3_mutation_sequence({2, 2, 3, 4});
    // mu3: W1 = tr(B1 A3 A1) + tr(B2 A3 A2)
    EXPECT_EQ(seq[1].potential, words({{{1, 4}, {4, 3}, {3, 1}}, {{2, 4}, {4, 3}, {3, 2}}}));
    // mu1: W2 = tr(B1 A1 A2 B2), up to the overall sign
    EXPECT_EQ(seq[2].potential, words({{{4, 1}, {1, 3}, {3, 2}, {2, 4}}}));
    // mu2: W3 = tr(B1 A1 A3) + tr(B2 A2 A3)
    EXPECT_EQ(seq[3].potential, words({{{4, 1}, {1, 3}, {3, 4}}, {{4, 2}, {2, 3}, {3, 4}}}));
}

TEST(Potential, Mu1CancelsOnePair) {
    // The new arrow 3->4 cancels against A3 : 4->3; the quadratic term is
    // integrated out and a single quartic word remains.
    Quiver z1 = d3_mutation_sequence({2, 2, 3, 4})[1];
    auto r = mutate(z1, 1);
    EXPECT_TRUE(r.potential_tracked);
    EXPECT_EQ(r.a(3, 4), 1);
    ASSERT_EQ(r.quiver.potential.size(), 1u);
    EXPECT_EQ(r.quiver.potential[0].path.size(), 4u);
}

TEST(Potential, EmptyStaysEmpty) {
    Quiver q;
    q.add_node(1, 1, false);
    q.add_node(2, 2, true);
    q.add_arrow(1, 2);
    auto r = mutate(q, 1);
    EXPECT_TRUE(r.quiver.potential.empty());
}

TEST(Potential, CanonicalRotationAndSign) {
    Potential w{{Q(-1), {{3, 1}, {1, 2}, {2, 3}}}, {Q(-1), {{2, 3}, {3, 1}, {1, 2}}}};
    bool flipped = false;
    auto c = canonical_potential(w, true, &flipped);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].coeff, 2);
    EXPECT_TRUE(flipped);
    EXPECT_EQ(c[0].path, (std::vector<Edge>{{1, 2}, {2, 3}, {3, 1}}));
}

TEST(Mutate, InvolutionOn1000RandomQuivers) {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 1000; ++t) {
        Quiver q = random_quiver(rng);
        for (int k : q.gauge_ids()) {
            auto once = mutate(q, k, false);
            auto twice = mutate(once.quiver, k, false);
            ASSERT_TRUE(twice.quiver.same_shape(q)) << "trial " << t << " node " << k;
        }
    }
}

// Fomin-Zelevinsky exchange rule and annihilation counts as an oracle.
TEST(Mutate, ExchangeRuleAndAnnihilation) {
    std::mt19937_64 rng(123);
    for (int t = 0; t < 300; ++t) {
        Quiver q = random_quiver(rng);
        for (int k : q.gauge_ids()) {
            auto r = mutate(q, k, false);
            const Quiver &nq = r.quiver;
            EXPECT_EQ(nq.rank(k), std::max(outgoing(q, k), incoming(q, k)) - q.rank(k));
            for (auto &[i, ni] : q.nodes())
                for (auto &[j, nj] : q.nodes()) {
                    if (i >= j) continue;
                    if (ni.framed && nj.framed) continue;
                    int b = q.b(i, j), want;
                    if (i == k || j == k) want = -b;
                    else want = b + pos(q.b(i, k)) * pos(q.b(k, j)) - pos(-q.b(i, k)) * pos(-q.b(k, j));
                    EXPECT_EQ(nq.b(i, j), want);
                    if (i == k || j == k) continue;
                    int fwd = q.mult(i, j) + pos(q.b(i, k)) * pos(q.b(k, j));
                    int bwd = q.mult(j, i) + pos(q.b(j, k)) * pos(q.b(k, i));
                    EXPECT_EQ(r.a(i, j), std::min(fwd, bwd));
                }
            EXPECT_NO_THROW(nq.validate());
        }
    }
}

TEST(Mutate, KahlerCaseConsistent) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        Quiver q = random_quiver(rng);
        for (int k : q.gauge_ids())
            EXPECT_EQ(mutate(q, k, false).kahler_case, classify(outgoing(q, k), incoming(q, k)));
    }
}

TEST(Mutate, NineStepSequenceReturnsRelabelledD3) {
    auto seq = d3_mutation_sequence({2, 2, 3, 4});
    Quiver last = seq.back();
    Quiver relabelled;
    for (auto &[id, n] : last.nodes()) relabelled.add_node(id == 1 ? 2 : id == 2 ? 1 : id, n.rank, n.framed);
    for (auto &[e, m] : last.arrows()) {
        auto sw = [](int x) { return x == 1 ? 2 : x == 2 ? 1 : x; };
        relabelled.add_arrow(sw(e.first), sw(e.second), m);
    }
    EXPECT_TRUE(relabelled.same_shape(seq.front()));
}
