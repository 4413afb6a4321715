#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dualheap;

TEST(MonotoneTree, StarAndPath) {
    const PointSet P = point_set_of(Permutation{2, 3, 1});
    const MonotoneTree s = MonotoneTree::star(P), p = MonotoneTree::path(P);
    EXPECT_EQ(s.children(0), (std::vector<int>{3, 1, 2}));  // ordered by x
    EXPECT_TRUE(s.check_invariants());
    EXPECT_TRUE(p.check_invariants());
    EXPECT_TRUE(p.is_path());
    EXPECT_FALSE(s.is_path());
    EXPECT_EQ(p.edge_y_span(), 3u);
    EXPECT_EQ(s.edge_y_span(), 6u);
    EXPECT_THROW(MonotoneTree::star(PointSet{{1, 1}, {1, 2}}), std::invalid_argument);
}

TEST(MonotoneTree, LinkRules) {
    MonotoneTree t = MonotoneTree::star(point_set_of(Permutation{2, 3, 1}));
    EXPECT_THROW(t.link(3, 2), std::invalid_argument);  // not neighbors
    EXPECT_EQ(t.link(1, 2), 2);                         // row 2 moves under row 1, to its right
    EXPECT_EQ(t.parent(2), 1);
    EXPECT_EQ(t.children(0), (std::vector<int>{3, 1}));
    EXPECT_THROW(t.link(2, 3), std::invalid_argument);  // not siblings
    EXPECT_EQ(t.link(3, 1), 3);
    EXPECT_EQ(t.children(1), (std::vector<int>{3, 2}));
    EXPECT_TRUE(t.check_invariants());
}

TEST(Bijection, RoundTripAndReachesPath) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Permutation X = gen_random(1 + seed % 30, seed);
        const Strategy s = all_strategies()[seed % all_strategies().size()];
        const SortRun run = sort_mode_run(X, s);
        const PointSet P = point_set_of(inverse(X));
        const GeoLinkTrace g = heap_to_geo(X, run.trace);
        EXPECT_EQ(g.size(), run.trace.size());
        EXPECT_EQ(geo_to_heap(P, g), run.trace);
        EXPECT_TRUE(replay_geo(P, g, true).is_path());
        EXPECT_EQ(parse_geo_trace(format_geo_trace(g)), g);
    }
}

TEST(Bijection, HeapReplayRejectsIllegalEvents) {
    const Permutation X{3, 1, 2};
    auto trace = sort_mode_run(X, Strategy::smooth).trace;
    EXPECT_EQ(replay_heap(X, trace), (std::vector<int>{1, 2, 3}));
    auto bad = trace;
    std::swap(bad.front().child, bad.front().parent);
    EXPECT_THROW(replay_heap(X, bad), std::invalid_argument);
    EXPECT_THROW(replay_heap(X, {}), std::invalid_argument);
}

TEST(Bijection, GeoReplayRejectsWrongChild) {
    const PointSet P = point_set_of(Permutation{1, 2});
    EXPECT_THROW(replay_geo(P, {{{1, 1}, {2, 2}}}), std::invalid_argument);
    EXPECT_NO_THROW(replay_geo(P, {{{2, 2}, {1, 1}}}));
    EXPECT_THROW(parse_geo_trace("1,1;2\n"), std::invalid_argument);
}

TEST(OptStable, TinyCases) {
    EXPECT_EQ(brute_force_opt_stable(PointSet{}), 0u);
    EXPECT_EQ(brute_force_opt_stable(point_set_of(Permutation{1})), 0u);
    EXPECT_EQ(brute_force_opt_stable(point_set_of(Permutation{2, 1})), 1u);
    // every schedule needs n-1 links at least, identity reaches it
    EXPECT_EQ(brute_force_opt_stable(point_set_of(gen_identity(6))), 5u);
    EXPECT_THROW(brute_force_opt_stable(point_set_of(gen_identity(9))), std::invalid_argument);
}

TEST(OptStable, LowerBoundsEveryStrategy) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const Permutation X = gen_random(1 + seed % 6, seed);
        const std::size_t opt = brute_force_opt_stable(point_set_of(inverse(X)));
        EXPECT_GE(opt + 1, X.size());
        for (Strategy s : all_strategies()) EXPECT_LE(opt, sort_mode_run(X, s).cost);
    }
}

TEST(OptStable, CounterexampleInstance) {
    const Permutation X{4, 1, 7, 2, 6, 3, 5};
    EXPECT_EQ(sort_mode_run(X, Strategy::smooth).cost, 13u);
    EXPECT_EQ(brute_force_opt_stable(point_set_of(inverse(X))), 12u);
}
