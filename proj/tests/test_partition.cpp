#include <random>
#include <set>

#include "common.hpp"

using namespace unrefinable;
using testing_util::P;
using testing_util::throws_kind;

TEST(DistinctPartition, SortsAndValidates)
{
    const auto p = P({5, 1, 3});
    EXPECT_EQ(p.values(), (std::vector<Int>{1, 3, 5}));
    EXPECT_EQ(p.sum(), 9);
    EXPECT_EQ(p.largest(), 5);
    EXPECT_EQ(p.smallest(), 1);
    EXPECT_TRUE(p.contains(3));
    EXPECT_FALSE(p.contains(2));
    EXPECT_TRUE(throws_kind([] { P({1, 2, 2}); }, ErrorKind::DuplicatePart));
    EXPECT_TRUE(throws_kind([] { P({0, 2}); }, ErrorKind::NonPositivePart));
    EXPECT_TRUE(throws_kind([] { P({-3}); }, ErrorKind::NonPositivePart));
    EXPECT_TRUE(throws_kind([] { P({}); }, ErrorKind::EmptyPartition));
}

TEST(DistinctPartition, OrderingIsLexicographic)
{
    EXPECT_LT(P({1, 2, 4}), P({1, 3}));
    EXPECT_LT(P({1, 2}), P({1, 2, 3}));
    EXPECT_EQ(P({2, 1}), P({1, 2}));
}

TEST(DistinctPartition, SingletonIsNotTwoPartDistinct)
{
    EXPECT_FALSE(P({7}).has_two_or_more_parts());
    EXPECT_TRUE(P({3, 4}).has_two_or_more_parts());
}

TEST(DistinctPartition, SumOverflowIsReported)
{
    const Int big = std::numeric_limits<Int>::max() / 2 + 1;
    EXPECT_TRUE(throws_kind([&] { P({big, big + 1}); }, ErrorKind::DomainError));
}

TEST(Missing, AnalysisMatchesDefinition)
{
    const auto a = analyze_missing(P({1, 2, 4, 5, 8, 11, 14}));
    EXPECT_EQ(a.missing, (std::vector<Int>{3, 6, 7, 9, 10, 12, 13}));
    EXPECT_EQ(a.m, 7U);
    EXPECT_EQ(a.mex, 3);
    EXPECT_EQ(mex(P({1, 2, 3})), 0);
    EXPECT_EQ(mex(P({2, 3})), 1);
}

TEST(Unrefinable, SmallExamples)
{
    EXPECT_TRUE(is_unrefinable(P({1, 2, 3, 7, 8})));
    EXPECT_TRUE(is_unrefinable(P({1, 2, 4, 5, 8, 11, 14})));
    EXPECT_TRUE(is_unrefinable(complete_partition(9)));
    // 1 and 2 are missing and 3 is a part
    const auto w = refinability_witness(P({3, 4}));
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->smaller, 1);
    EXPECT_EQ(w->larger, 2);
    EXPECT_EQ(w->part, 3);
}

TEST(Unrefinable, ExhaustiveAgreementWithOracleUpTo30)
{
    for (Int n = 1; n <= 30; ++n)
        for (const auto& parts : oracle::distinct_partitions(n)) {
            const auto p = DistinctPartition::from_ascending(parts);
            ASSERT_EQ(is_unrefinable(p), oracle::is_unrefinable(parts)) << to_text(p);
            ASSERT_EQ(mex(p), oracle::mex(parts)) << to_text(p);
        }
}

TEST(Unrefinable, RandomWideSetsAgreeWithOracle)
{
    // Sets reaching past 64 and 128 exercise the multi-word bit paths.
    std::mt19937_64 rng(20261016);
    for (int trial = 0; trial < 4000; ++trial) {
        const Int top = std::uniform_int_distribution<Int>(2, 400)(rng);
        const double keep = std::uniform_real_distribution<double>(0.3, 0.98)(rng);
        std::vector<Int> parts;
        for (Int v = 1; v < top; ++v)
            if (std::bernoulli_distribution(keep)(rng))
                parts.push_back(v);
        parts.push_back(top);
        const auto p = DistinctPartition::from_ascending(parts);
        const bool expected = oracle::is_unrefinable(parts);
        ASSERT_EQ(is_unrefinable(p), expected) << to_text(p);
        if (const auto w = refinability_witness(p)) {
            EXPECT_LT(w->smaller, w->larger);
            EXPECT_FALSE(p.contains(w->smaller));
            EXPECT_FALSE(p.contains(w->larger));
            EXPECT_TRUE(p.contains(w->part));
        }
    }
}

TEST(Unrefinable, WitnessIsLexicographicallyLeast)
{
    for (Int n = 1; n <= 22; ++n)
        for (const auto& parts : oracle::distinct_partitions(n)) {
            const auto p = DistinctPartition::from_ascending(parts);
            const auto w = refinability_witness(p);
            if (!w)
                continue;
            const auto miss = oracle::missing_parts(parts);
            const std::set<Int> have(parts.begin(), parts.end());
            bool found = false;
            for (std::size_t i = 0; i < miss.size() && !found; ++i)
                for (std::size_t j = i + 1; j < miss.size() && !found; ++j)
                    if (have.count(miss[i] + miss[j])) {
                        EXPECT_EQ(w->smaller, miss[i]) << to_text(p);
                        EXPECT_EQ(w->larger, miss[j]) << to_text(p);
                        found = true;
                    }
        }
}

TEST(Unrefinable, MissingBoundHoldsOnEveryUnrefinable)
{
    for (Int n = 1; n <= 40; ++n)
        for (const auto& parts : oracle::unrefinable_partitions(n)) {
            const auto m = static_cast<Int>(oracle::missing_parts(parts).size());
            ASSERT_LE(m, parts.back() / 2);
            ASSERT_TRUE(missing_bound_holds(DistinctPartition::from_ascending(parts)));
        }
}

TEST(Constructions, CompleteNearCompleteAndPiTilde)
{
    EXPECT_EQ(complete_partition(4).values(), (std::vector<Int>{1, 2, 3, 4}));
    EXPECT_EQ(near_complete(5, 2).values(), (std::vector<Int>{1, 3, 4, 5}));
    EXPECT_EQ(near_complete(5, 2).sum(), triangular(5) - 2);
    EXPECT_EQ(pi_tilde(6).values(), (std::vector<Int>{1, 2, 3, 7, 8}));
    EXPECT_EQ(pi_tilde(13).values(), (std::vector<Int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 14, 22}));
    for (Int n = 6; n <= 60; ++n) {
        const auto p = pi_tilde(n);
        EXPECT_EQ(p.sum(), triangular(n));
        EXPECT_TRUE(is_unrefinable(p));
    }
    EXPECT_TRUE(throws_kind([] { complete_partition(0); }, ErrorKind::DomainError));
    EXPECT_TRUE(throws_kind([] { near_complete(5, 5); }, ErrorKind::DomainError));
    EXPECT_TRUE(throws_kind([] { near_complete(5, 0); }, ErrorKind::DomainError));
    EXPECT_TRUE(throws_kind([] { pi_tilde(5); }, ErrorKind::DomainError));
}

TEST(Triangular, ContextBracketsN)
{
    EXPECT_EQ(triangular(9), 45);
    for (Int N = 1; N <= 2000; ++N) {
        const auto c = triangular_context(N);
        ASSERT_LT(triangular(c.n - 1), N);
        ASSERT_LE(N, c.tn);
        ASSERT_EQ(c.d, c.tn - N);
        ASSERT_EQ(triangular_index(N).has_value(), c.d == 0);
    }
    EXPECT_EQ(triangular_index(378), 27);
    EXPECT_FALSE(triangular_index(377).has_value());
    EXPECT_TRUE(throws_kind([] { triangular_context(0); }, ErrorKind::DomainError));
}

TEST(Triangular, LargeArgumentsStayExact)
{
    const Int n = 65535;
    EXPECT_EQ(triangular_index(triangular(n)), n);
    EXPECT_EQ(triangular_context(triangular(n) + 1).n, n + 1);
}

TEST(PartBounds, SmallTableMatchesOracleExtremes)
{
    for (Int N = 1; N <= 20; ++N) {
        Int lo = std::numeric_limits<Int>::max(), hi = 0;
        for (const auto& p : oracle::unrefinable_partitions(N)) {
            lo = std::min(lo, p.back());
            hi = std::max(hi, p.back());
        }
        const auto b = max_part_bounds(N);
        EXPECT_EQ(b.lower, lo) << N;
        EXPECT_EQ(b.upper, hi) << N;
    }
}

TEST(PartBounds, ClosedFormsAboveTable)
{
    EXPECT_EQ(max_part_bounds(45), (PartBounds{9, 14}));
    EXPECT_EQ(max_part_bounds(44), (PartBounds{9, 16}));
    EXPECT_EQ(max_part_bounds(378), (PartBounds{27, 50}));
}
