#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"

using namespace dualheap;

TEST(Permutation, RejectsInvalid) {
    EXPECT_THROW(Permutation({1, 1}), std::invalid_argument);
    EXPECT_THROW(Permutation({0, 1}), std::invalid_argument);
    EXPECT_THROW(Permutation({1, 3}), std::invalid_argument);
    EXPECT_NO_THROW(Permutation(std::vector<int>{}));
}

TEST(PointSetOf, SmallCases) {
    EXPECT_EQ(point_set_of(Permutation{2, 1}), (PointSet{{2, 1}, {1, 2}}));
    EXPECT_TRUE(point_set_of(Permutation{}).empty());
    const PointSet P = point_set_of(Permutation{2, 6, 5, 3, 1, 7, 4});
    EXPECT_TRUE(P.is_permutation());
    EXPECT_EQ(P.row(2), (std::vector<Point>{{6, 2}}));
    EXPECT_EQ(P.col(6), (std::vector<Point>{{6, 2}}));
    EXPECT_EQ(permutation_of(P), (Permutation{2, 6, 5, 3, 1, 7, 4}));
}

TEST(PointSet, IsPermutationDetectsDefects) {
    EXPECT_FALSE((PointSet{{1, 1}, {1, 2}}).is_permutation());
    EXPECT_FALSE((PointSet{{1, 1}, {3, 2}}).is_permutation());
    EXPECT_FALSE((PointSet{{0, 1}}).is_permutation());
    EXPECT_TRUE((PointSet{}).is_permutation());
    EXPECT_THROW(permutation_of(PointSet{{1, 1}, {1, 2}}), std::invalid_argument);
}

TEST(Inverse, FigurePair) {
    EXPECT_EQ(inverse(Permutation{2, 6, 5, 3, 1, 7, 4}), (Permutation{5, 1, 4, 7, 3, 2, 6}));
    EXPECT_EQ(inverse(Permutation{2, 1}), (Permutation{2, 1}));
    EXPECT_EQ(inverse(gen_identity(9)), gen_identity(9));
}

TEST(Reverse, Examples) {
    EXPECT_EQ(reverse(Permutation{1, 2, 3}), (Permutation{3, 2, 1}));
    EXPECT_EQ(reverse(Permutation{5, 1, 4, 7, 3, 2, 6}), (Permutation{6, 2, 3, 7, 4, 1, 5}));
    EXPECT_EQ(reverse(Permutation{}), Permutation{});
}

TEST(Transpose, MatchesInverse) {
    EXPECT_EQ(transpose(PointSet{{2, 1}, {1, 2}}), (PointSet{{1, 2}, {2, 1}}));
    const Permutation X{2, 6, 5, 3, 1, 7, 4};
    EXPECT_EQ(transpose(point_set_of(X)), point_set_of(inverse(X)));
    EXPECT_THROW(transpose(PointSet{{1, 1}, {1, 2}}), std::invalid_argument);
}

TEST(ReverseRows, MatchesReverse) {
    EXPECT_EQ(reverse_rows(point_set_of(Permutation{1, 2})), point_set_of(Permutation{2, 1}));
    EXPECT_THROW(reverse_rows(PointSet{{1, 1}, {1, 2}}), std::invalid_argument);
}

TEST(PermCoreProperty, InvolutionsAndIdentities) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Permutation X = gen_random(seed % 40, seed);
        EXPECT_EQ(inverse(inverse(X)), X);
        EXPECT_EQ(reverse(reverse(X)), X);
        EXPECT_EQ(transpose(point_set_of(X)), point_set_of(inverse(X)));
        EXPECT_EQ(reverse_rows(point_set_of(X)), point_set_of(reverse(X)));
        const Permutation Y = inverse(X);
        for (std::size_t j = 0; j < X.size(); ++j) EXPECT_EQ(Y[X[j] - 1], static_cast<int>(j + 1));
    }
}

TEST(GenRandom, FixedOutputs) {
    EXPECT_TRUE(gen_random(0, 5).empty());
    EXPECT_EQ(gen_random(1, 99), (Permutation{1}));
    EXPECT_EQ(gen_random(7, 1), (Permutation{4, 2, 5, 7, 6, 1, 3}));
    EXPECT_EQ(gen_random(50, 3), gen_random(50, 3));
    EXPECT_NE(gen_random(50, 3), gen_random(50, 4));
}

TEST(GenRandom, RoughlyUniformOnThree) {
    std::map<std::vector<int>, int> seen;
    for (std::uint64_t s = 0; s < 6000; ++s) ++seen[gen_random(3, s).values()];
    ASSERT_EQ(seen.size(), 6u);
    for (const auto& kv : seen) {
        EXPECT_GT(kv.second, 850);
        EXPECT_LT(kv.second, 1150);
    }
}

TEST(GenTiltedGrid, SmallCases) {
    EXPECT_EQ(gen_tilted_grid(1), (Permutation{1}));
    EXPECT_EQ(gen_tilted_grid(2), (Permutation{1, 3, 2, 4}));
    const Permutation X3 = gen_tilted_grid(3);
    EXPECT_EQ(X3.size(), 9u);
    EXPECT_GE(measure_osc(X3), 9u);
    for (std::size_t t = 1; t <= 20; ++t) EXPECT_EQ(gen_tilted_grid(t).size(), t * t);
    EXPECT_THROW(gen_tilted_grid(0), std::invalid_argument);
}

TEST(Measures, MonotoneGoldens) {
    for (std::size_t n : {1u, 2u, 5u, 64u}) {
        const Permutation id = gen_identity(n), dec = gen_decreasing(n);
        EXPECT_EQ(measure_inv(id), 0u);
        EXPECT_EQ(measure_inv(dec), n * (n - 1) / 2);
        EXPECT_EQ(measure_run(id), 0u);
        EXPECT_EQ(measure_run(dec), n - 1);
        EXPECT_EQ(measure_osc(id), 0u);
        EXPECT_EQ(measure_osc(dec), 0u);
        EXPECT_DOUBLE_EQ(measure_df(id), static_cast<double>(n - 1));
    }
}

TEST(Measures, AgreeWithDefinitions) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const Permutation X = gen_random(1 + seed % 60, seed);
        const std::uint64_t n = X.size();
        EXPECT_EQ(measure_inv(X), oracle::inv(X));
        EXPECT_EQ(measure_osc(X), oracle::osc(X));
        EXPECT_LE(measure_osc(X), 4 * measure_inv(X));
        EXPECT_LE(measure_osc(X), 2 * n * measure_run(X) + n);
    }
}

TEST(IncreasingCover, Examples) {
    EXPECT_EQ(sms_increasing_cover(gen_identity(6)), 1u);
    EXPECT_EQ(sms_increasing_cover(gen_decreasing(6)), 6u);
    EXPECT_EQ(sms_increasing_cover(Permutation{2, 1, 4, 3}), 2u);
    EXPECT_EQ(increasing_cover_brute_force(Permutation{2, 1, 4, 3}), 2u);
    EXPECT_EQ(sms_increasing_cover(Permutation{}), 0u);
}

TEST(IncreasingCover, ExhaustiveUpToSeven) {
    for (std::size_t n = 0; n <= 7; ++n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        do {
            const Permutation X(v);
            ASSERT_EQ(sms_increasing_cover(X), increasing_cover_brute_force(X));
            ASSERT_EQ(sms_increasing_cover(X), oracle::lds(X));
        } while (std::next_permutation(v.begin(), v.end()));
    }
}

TEST(MonotoneCover, BruteForce) {
    EXPECT_EQ(sms_brute_force(gen_decreasing(8)), 1u);
    EXPECT_EQ(sms_brute_force(Permutation{2, 1, 4, 3}), 2u);
    EXPECT_THROW(sms_brute_force(gen_identity(11)), std::invalid_argument);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Permutation X = gen_random(8, s);
        EXPECT_LE(sms_brute_force(X), sms_increasing_cover(X));
        EXPECT_LE(sms_brute_force(X), sms_increasing_cover(reverse(X)));
    }
}

TEST(TextFormats, RoundTrip) {
    const Permutation X{3, 1, 2};
    EXPECT_EQ(format_permutation(X), "3,1,2");
    EXPECT_EQ(parse_permutation(format_permutation(X)), X);
    EXPECT_EQ(parse_permutation(""), Permutation{});
    EXPECT_THROW(parse_permutation("1,1"), std::invalid_argument);
    EXPECT_THROW(parse_permutation("1,x"), std::invalid_argument);
    const PointSet P{{1, 2}, {3, 1}, {0, 0}};
    EXPECT_EQ(parse_point_set(format_point_set(P)), P);
}
