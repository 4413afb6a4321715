#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"

using namespace dualheap;

namespace {

std::vector<int> iota_vec(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

// Touch every inserted key at every later time: satisfied and compatible.
PointSet touch_all(const Permutation& X) {
    PointSet Q;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t t = i + 1; t <= X.size(); ++t) Q.insert({X[i], static_cast<int>(t)});
    return Q;
}

}  // namespace

TEST(Replay, HandExamples) {
    const PointSet Q{{1, 1}, {2, 2}, {1, 2}};
    const BstExecution ex = replay_insert_mode(Q);
    EXPECT_EQ(ex.touched, (std::vector<std::vector<int>>{{1}, {1, 2}}));
    EXPECT_EQ(ex.cost, 3u);
    EXPECT_EQ(replay_insert_mode(point_set_of(Permutation{1})).cost, 1u);
    EXPECT_EQ(format_execution(ex), "1: 1\n2: 1 2\ncost: 3\n");
}

TEST(Replay, RejectsBadSupersets) {
    EXPECT_THROW(replay_insert_mode(PointSet{{1, 1}, {2, 2}}), ReplayError);
    // two keys whose lowest point is in row 1
    EXPECT_THROW(replay_insert_mode(PointSet{{1, 1}, {2, 1}, {2, 2}, {1, 3}, {3, 3}, {2, 3}}), ReplayError);
    EXPECT_THROW(replay_insert_mode(PointSet{{1, 1}, {2, 1}}), ReplayError);
    EXPECT_THROW(replay_insert_mode(PointSet{{1, 1}, {1, 2}}), ReplayError);
    const PointSet P = point_set_of(Permutation{1, 2});
    EXPECT_THROW(replay_insert_mode(P, PointSet{{1, 1}, {2, 1}, {2, 2}}), ReplayError);
    EXPECT_THROW(replay_insert_mode(P, PointSet{{1, 1}}), ReplayError);
    EXPECT_EQ(replay_insert_mode(P, greedy_sweep(P)).cost, 3u);
}

TEST(Replay, GreedyOutputsExact) {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const Permutation X = gen_random(1 + seed % 64, seed);
        const PointSet Q = greedy_sweep(point_set_of(X));
        const BstExecution ex = replay_insert_mode(Q, true, true);
        EXPECT_TRUE(touches_match(ex, Q));
        EXPECT_EQ(ex.inorder, iota_vec(X.size()));
        EXPECT_EQ(ex.snapshots.size(), X.size());
        const BstExecution back = parse_execution(format_execution(ex));
        EXPECT_EQ(back.touched, ex.touched);
        EXPECT_EQ(back.cost, ex.cost);
    }
}

TEST(Replay, TouchAllSupersets) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Permutation X = gen_random(1 + seed % 20, seed);
        const PointSet Q = touch_all(X);
        ASSERT_TRUE(oracle::satisfied(Q));
        const BstExecution ex = replay_insert_mode(Q);
        EXPECT_TRUE(touches_match(ex, Q));
        EXPECT_EQ(ex.inorder, iota_vec(X.size()));
    }
}

TEST(Replay, SnapshotsAreSearchTrees) {
    const Permutation X = gen_random(30, 4);
    const BstExecution ex = replay_insert_mode(greedy_sweep(point_set_of(X)), true, true);
    for (std::size_t t = 0; t < ex.snapshots.size(); ++t) {
        const auto& par = ex.snapshots[t];
        // keys inserted so far: X[0..t]
        int roots = 0;
        for (std::size_t i = 0; i <= t; ++i) {
            const int k = X[i];
            if (par[k] == 0) ++roots;
            // k lies on the side of each ancestor that the path leaves it by
            for (int c = k, a = par[k]; a; c = a, a = par[a])
                ASSERT_EQ(k < a, c < a) << "search order broken at time " << t + 1;
        }
        EXPECT_EQ(roots, 1);
    }
}

TEST(GreedyFuture, Costs) {
    EXPECT_EQ(greedy_future(Permutation{1, 2, 3}).cost, 5u);
    EXPECT_EQ(greedy_future(Permutation{1}).cost, 1u);
    const Permutation X = inverse(Permutation{4, 1, 7, 2, 6, 3, 5});
    const std::size_t c = greedy_future(X).cost, n = X.size();
    EXPECT_LE(c, 3 * 13 + 6 * n + 2);
    EXPECT_GE(c + 2 * n, 13u);
}

TEST(ExecutionFormat, Errors) {
    EXPECT_THROW(parse_execution("1: 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_execution("2: 1\ncost: 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_execution("cost: 1\n1: 1\n"), std::invalid_argument);
}
