#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"

using namespace dualheap;

TEST(Treap, SmallShape) {
    const Treap t = treapify({3, 1, 2});
    EXPECT_EQ(t.nodes[t.root].priority, 1);
    EXPECT_EQ(t.nodes[t.root].left, 0);
    EXPECT_EQ(t.nodes[t.root].right, 2);
    EXPECT_EQ(t, treapify_reference({3, 1, 2}));
    EXPECT_THROW(treapify({}), std::invalid_argument);
}

TEST(Treap, LinearAndReferenceAgree) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto keys = gen_random(1 + s % 200, s).values();
        EXPECT_EQ(treapify(keys), treapify_reference(keys));
    }
}

TEST(SmoothViews, KnownSequence) {
    const std::vector<int> keys{1, 3, 7, 4, 6, 2, 5, 9, 8};
    std::string why;
    EXPECT_TRUE(check_equivalence(keys, &why)) << why;
    const auto r = restructure_twopass(keys);
    EXPECT_EQ(r.root, 1);
    EXPECT_EQ(r.links.size(), keys.size() - 1);
}

TEST(SmoothViews, SurvivorsAreSuffixMinima) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const auto keys = gen_random(1 + s % 100, s).values();
        std::vector<int> minima;
        for (std::size_t i = keys.size(); i-- > 0;)
            if (minima.empty() || keys[i] < minima.back()) minima.push_back(keys[i]);
        std::reverse(minima.begin(), minima.end());
        EXPECT_EQ(smoothing_survivors(keys), minima);
    }
}

TEST(SmoothViews, ExhaustiveUpToSix) {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        do {
            std::string why;
            ASSERT_TRUE(check_equivalence(v, &why, 2, n)) << why;
        } while (std::next_permutation(v.begin(), v.end()));
    }
}

TEST(SmoothViews, ScriptedSelectorsCoverAllChoices) {
    const std::vector<int> keys{2, 5, 1, 6, 3, 7, 4};
    const auto ref = sorted_links(treap_edges(treapify(keys)));
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            const auto r = restructure_nondet(keys, LocalMaxSelector::scripted({a, b, a + b}));
            EXPECT_EQ(sorted_links(r.links), ref);
        }
}

TEST(SmoothViews, NondetMatchesTwoPassOnNonPermutationKeys) {
    const std::vector<int> keys{40, 10, 90, 30, 70, 20};
    std::string why;
    EXPECT_TRUE(check_equivalence(keys, &why)) << why;
}
