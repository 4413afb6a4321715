#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace dualheap;

TEST(HeapForest, StableLinkSides) {
    HeapForest<int> H;
    const auto a = H.insert(5), b = H.insert(3), c = H.insert(8);
    EXPECT_EQ(H.link(a), b);  // 5 was left of 3: leftmost child
    EXPECT_EQ(H.trace().back(), (LinkEvent<int>{5, 3, Side::leftmost}));
    EXPECT_EQ(H.link(b), b);  // 8 right of 3: rightmost child
    EXPECT_EQ(H.trace().back(), (LinkEvent<int>{8, 3, Side::rightmost}));
    EXPECT_EQ(H.children(b), (std::vector<HeapForest<int>::Id>{a, c}));
    EXPECT_EQ(H.comparisons(), 2u);
    EXPECT_TRUE(H.audit());
}

TEST(HeapForest, LinkKnownCostsNoComparison) {
    HeapForest<int> H;
    const auto a = H.insert(1);
    H.insert(2);
    H.link_known(a, true);
    EXPECT_EQ(H.comparisons(), 0u);
    EXPECT_EQ(H.links(), 1u);
}

TEST(HeapForest, Errors) {
    HeapForest<int> H;
    const auto a = H.insert(1);
    EXPECT_THROW(H.insert(1), std::invalid_argument);
    EXPECT_THROW(H.link(a), std::logic_error);
    H.insert(2);
    EXPECT_THROW(H.remove_root(), std::logic_error);
    const auto b = H.find(2);
    H.link(a);
    EXPECT_THROW(H.link(b), std::logic_error);
    EXPECT_THROW(H.decrease_key(b, 3), std::invalid_argument);
    EXPECT_THROW(H.decrease_key(b, 1), std::invalid_argument);
}

TEST(HeapForest, RemoveRootExposesChildrenInOrder) {
    HeapForest<int> H;
    for (int k : {4, 1, 3, 2}) H.insert(k);
    ltr_accumulate_round(H);
    EXPECT_EQ(H.remove_root(), 1);
    EXPECT_EQ(H.top_keys(), (std::vector<int>{4, 3, 2}));
    EXPECT_TRUE(H.audit());
}

TEST(HeapForest, Meld) {
    HeapForest<int> A, B;
    for (int k : {3, 1}) A.insert(k);
    for (int k : {5, 2}) B.insert(k);
    B.link(B.top_leftmost());
    A.meld(std::move(B));
    EXPECT_TRUE(B.empty());
    EXPECT_EQ(A.top_keys(), (std::vector<int>{3, 1, 2}));
    EXPECT_EQ(A.size(), 4u);
    EXPECT_TRUE(A.audit());
    HeapForest<int> C;
    C.insert(1);
    EXPECT_THROW(A.meld(std::move(C)), std::invalid_argument);
}

TEST(HeapForest, DecreaseKeyPolicies) {
    for (auto policy : {DecreaseKeyPolicy::append_right, DecreaseKeyPolicy::by_insertion_time}) {
        HeapForest<int> H;
        H.set_decrease_key_policy(policy);
        const auto a = H.insert(10);
        H.insert(20);
        const auto c = H.insert(30);
        H.insert(40);
        H.link(a);  // 20 under 10
        H.link(c);  // 40 under 30
        const auto twenty = H.find(20);
        H.decrease_key(twenty, 5);
        EXPECT_EQ(H.parent(twenty), H.none);
        if (policy == DecreaseKeyPolicy::append_right) EXPECT_EQ(H.top_keys(), (std::vector<int>{10, 30, 5}));
        else EXPECT_EQ(H.top_keys(), (std::vector<int>{10, 5, 30}));
        EXPECT_TRUE(H.audit(nullptr, policy == DecreaseKeyPolicy::by_insertion_time));
        H.decrease_key(a, 7);  // a root stays in place
        EXPECT_EQ(H.key(H.top_leftmost()), 7);
    }
}

TEST(HeapForest, UnstableLinksPutLargerLeftmost) {
    HeapForest<int> H;
    H.set_unstable_links(true);
    const auto a = H.insert(1);
    H.insert(2);
    H.link(a);
    EXPECT_EQ(H.trace().back().side, Side::leftmost);
}

TEST(Strategy, Names) {
    for (Strategy s : all_strategies()) EXPECT_EQ(parse_strategy(to_string(s)), s);
    EXPECT_THROW(parse_strategy("fibonacci"), std::invalid_argument);
}

TEST(SortMode, TracesMatchReferenceSimulation) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Permutation X = gen_random(1 + seed % 40, seed);
        for (Strategy s : all_strategies()) {
            const SortRun run = sort_mode_run(X, s);
            auto expect = oracle::sort_trace(X, s);
            if (s == Strategy::smooth) {
                EXPECT_EQ(sorted_links(run.trace), sorted_links(expect)) << to_string(s);
            } else {
                EXPECT_EQ(run.trace, expect) << to_string(s);
            }
            EXPECT_EQ(run.cost, run.trace.size());
            EXPECT_EQ(run.extraction.size(), X.size());
        }
    }
}

TEST(SortMode, LinkBoundsAndStability) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Permutation X = gen_random(2 + seed % 50, seed);
        for (Strategy s : all_strategies()) {
            const SortRun run = sort_mode_run(X, s);
            EXPECT_GE(run.cost, X.size() - 1);
            EXPECT_EQ(replay_heap(X, run.trace), run.extraction);
        }
    }
}

TEST(SortMode, SmoothGoldens) {
    EXPECT_EQ(sort_mode_run(Permutation{4, 1, 7, 2, 6, 3, 5}, Strategy::smooth).cost, 13u);
    EXPECT_EQ(sort_mode_run(gen_identity(100), Strategy::smooth).cost, 99u);
    EXPECT_EQ(sort_mode_run(gen_decreasing(100), Strategy::smooth).cost, 99u);
    EXPECT_EQ(sort_mode_run(Permutation{}, Strategy::smooth).cost, 0u);
}

TEST(SortMode, SimpleOnIdentityIsQuadratic) {
    // every extraction leaves all remaining keys as roots
    EXPECT_EQ(sort_mode_run(gen_identity(20), Strategy::simple).cost, 190u);
}

TEST(TraceFormat, RoundTrip) {
    const SortRun run = sort_mode_run(gen_random(30, 2), Strategy::pairing_standard);
    EXPECT_EQ(parse_link_trace(format_link_trace(run.trace)), run.trace);
    EXPECT_THROW(parse_link_trace("1,2,up\n"), std::invalid_argument);
    EXPECT_EQ(format_sort_summary(sort_mode_run(Permutation{2, 1}, Strategy::smooth)),
              "n=2,strategy=smooth,cost=1,comparisons=1");
}
