#include "depclust/error.hpp"
#include "depclust/validation.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace depclust;
using depclust::testing::builtin;

namespace {

DissimilarityMatrix matrix(std::size_t m, double fill) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("v" + std::to_string(i));
    DissimilarityMatrix d(labels);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) d.set(i, j, fill);
    return d;
}

Partition singletons(std::size_t m) {
    Partition p;
    for (std::size_t i = 0; i < m; ++i) p.blocks.push_back(VariableSet{i});
    return p;
}

ValidityCurve curve(std::vector<ValidityPoint> points) { return ValidityCurve{std::move(points)}; }

}  // namespace

TEST(Adiam, Examples) {
    auto d = matrix(3, 0.5);
    EXPECT_DOUBLE_EQ(adiam(singletons(3), d), 1.0);
    d.set(0, 1, 0.2);
    EXPECT_DOUBLE_EQ(adiam(Partition{{VariableSet{0, 1}, VariableSet{2}}}, d), 0.9);
    d.set(0, 1, 0.1);
    d.set(0, 2, 0.3);
    d.set(1, 2, 0.2);
    EXPECT_DOUBLE_EQ(adiam(Partition{{VariableSet{0, 1, 2}}}, d), 0.7);
}

TEST(Msplit, Examples) {
    auto d = matrix(4, 0.0);
    for (std::size_t i : {0, 1})
        for (std::size_t j : {2, 3}) d.set(i, j, 1.0);
    EXPECT_DOUBLE_EQ(msplit(Partition{{VariableSet{0, 1}, VariableSet{2, 3}}}, d), 0.0);

    auto e = matrix(3, 0.5);
    e.set(0, 2, 0.6);
    e.set(1, 2, 0.9);
    EXPECT_DOUBLE_EQ(msplit(Partition{{VariableSet{0, 1}, VariableSet{2}}}, e), 0.4);

    auto f = matrix(3, 0.8);
    f.set(1, 2, 0.3);
    EXPECT_DOUBLE_EQ(msplit(singletons(3), f), 0.7);
    EXPECT_THROW(msplit(Partition{{VariableSet{0, 1, 2}}}, f), InputError);
}

TEST(Silhouette, Examples) {
    auto d = matrix(4, 1.0);
    d.set(0, 1, 0.0);
    d.set(2, 3, 0.0);
    const Partition two{{VariableSet{0, 1}, VariableSet{2, 3}}};
    EXPECT_DOUBLE_EQ(silhouette(two, d), 1.0);
    EXPECT_DOUBLE_EQ(silhouette(singletons(4), d), 0.0);

    auto e = matrix(4, 0.4);
    e.set(0, 1, 0.2);
    e.set(2, 3, 0.2);
    EXPECT_DOUBLE_EQ(silhouette(two, e), 0.5);
    EXPECT_THROW(silhouette(Partition{{VariableSet{0, 1, 2, 3}}}, e), InputError);
}

TEST(ChooseK, Examples) {
    const auto c = curve({{2, 0.9, 0.2, 0.3}, {3, 0.7, 0.1, 0.3}});
    EXPECT_EQ(choose_k(c, SelectionRule::tradeoff), 2u);
    EXPECT_EQ(choose_k(c, SelectionRule::silhouette), 2u);
    EXPECT_EQ(choose_k(curve({{2, 0.5, 0.5, 0.1}, {3, 0.5, 0.5, 0.8}}), SelectionRule::silhouette), 3u);
    EXPECT_THROW(choose_k(ValidityCurve{}, SelectionRule::tradeoff), InputError);
    EXPECT_EQ(parse_selection_rule("silhouette"), SelectionRule::silhouette);
    EXPECT_THROW(parse_selection_rule("elbow"), SpecError);
}

TEST(PairCounting, HandExample) {
    const Partition a{{VariableSet{0, 1}, VariableSet{2, 3}}};
    const Partition b{{VariableSet{0, 1, 2}, VariableSet{3}}};
    const auto c = pair_counts(a, b, 4);
    EXPECT_EQ(c.tp, 1u);
    EXPECT_EQ(c.fp, 1u);
    EXPECT_EQ(c.fn, 2u);
    EXPECT_EQ(c.tn, 2u);
    EXPECT_DOUBLE_EQ(rand_index(a, b, 4), 0.5);
    EXPECT_NEAR(fowlkes_mallows(a, b, 4), std::sqrt(1.0 / 6.0), 1e-15);
}

TEST(PairCounting, IdenticalAndDegenerate) {
    const Partition a{{VariableSet{0, 3}, VariableSet{1, 2}, VariableSet{4}}};
    EXPECT_DOUBLE_EQ(rand_index(a, a, 5), 1.0);
    EXPECT_DOUBLE_EQ(fowlkes_mallows(a, a, 5), 1.0);
    EXPECT_DOUBLE_EQ(rand_index(singletons(4), singletons(4), 4), 1.0);
    EXPECT_DOUBLE_EQ(fowlkes_mallows(singletons(4), singletons(4), 4), 0.0);
    EXPECT_THROW(rand_index(a, singletons(4), 5), InputError);
}

TEST(PairCounting, Symmetric) {
    SplitMix64 rng(3);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t m = 2 + rng.below(10);
        auto random_partition = [&] {
            std::vector<std::vector<std::size_t>> groups(3);
            for (std::size_t i = 0; i < m; ++i) groups[rng.below(3)].push_back(i);
            Partition p;
            for (auto& g : groups)
                if (!g.empty()) p.blocks.emplace_back(g);
            return p;
        };
        const auto a = random_partition();
        const auto b = random_partition();
        EXPECT_EQ(rand_index(a, b, m), rand_index(b, a, m));
        EXPECT_EQ(fowlkes_mallows(a, b, m), fowlkes_mallows(b, a, m));
        const auto c = pair_counts(a, b, m);
        EXPECT_EQ(c.tp + c.fp + c.fn + c.tn, m * (m - 1) / 2);
    }
}

TEST(MultiCriteria, SingletonsReduceToPairwise) {
    const auto sc = builtin("noise", 400, 2, 1.0);
    const auto spec = AggregatorSpec::average();
    const auto pairwise = pairwise_matrix(sc.data, spec, 2);
    const MultiCriterionOptions opts{.seed = 2};
    EXPECT_DOUBLE_EQ(adiam_multi(singletons(6), sc.data, spec, opts), 1.0);
    Partition p{{VariableSet{0}, VariableSet{1}, VariableSet{2}}};
    const auto data3 = sc.data.select(std::vector<std::size_t>{0, 1, 2});
    const auto pw3 = pairwise_matrix(data3, spec, 2);
    EXPECT_DOUBLE_EQ(msplit_multi(p, data3, spec, opts), msplit(p, pw3));
    const Partition two{{VariableSet{0, 1}, VariableSet{2}}};
    EXPECT_DOUBLE_EQ(adiam_multi(two, data3, spec, opts), adiam(two, pw3));
}

TEST(MultiCriteria, BlockOfThreeMatchesEnumeration) {
    const auto sc = builtin("noise", 1000, 3, 1.0);
    const auto spec = AggregatorSpec::copula(CopulaFamily::independence);
    const MultiCriterionOptions opts{.seed = 3};
    auto d = [&](VariableSet s, VariableSet t) { return pair_dissimilarity(s, t, sc.data, spec, 3); };
    const double worst = std::max({d({2}, {3}), d({2}, {4}), d({3}, {4}), d({2}, {3, 4}), d({3}, {2, 4}),
                                   d({4}, {2, 3})});
    const Partition p{{VariableSet{0}, VariableSet{1}, VariableSet{2, 3, 4}, VariableSet{5}}};
    EXPECT_DOUBLE_EQ(adiam_multi(p, sc.data, spec, opts), (3.0 + (1.0 - worst)) / 4.0);

    const auto data4 = sc.data.select(std::vector<std::size_t>{0, 1, 2, 3});
    auto e = [&](VariableSet s, VariableSet t) { return pair_dissimilarity(s, t, data4, spec, 3); };
    const Partition q{{VariableSet{0, 1}, VariableSet{2, 3}}};
    double best = 1.0;
    for (const VariableSet& s : {VariableSet{0}, VariableSet{1}, VariableSet{0, 1}})
        for (const VariableSet& t : {VariableSet{2}, VariableSet{3}, VariableSet{2, 3}}) best = std::min(best, e(s, t));
    EXPECT_DOUBLE_EQ(msplit_multi(q, data4, spec, opts), 1.0 - best);
}

TEST(MultiCriteria, BoundsAgainstPairwise) {
    const auto sc = builtin("noise", 500, 4, 1.0);
    const auto spec = AggregatorSpec::average();
    TermCache cache(sc.data, 4);
    const auto pairwise = pairwise_matrix(sc.data, spec, 4, &cache);
    const MultiCriterionOptions opts{.seed = 4};
    for (const auto& p : {*sc.benchmark, Partition{{VariableSet{0, 1, 2}, VariableSet{3, 4, 5}}}}) {
        EXPECT_LE(adiam_multi(p, sc.data, spec, opts, &cache), adiam(p, pairwise) + 1e-12);
        EXPECT_GE(msplit_multi(p, sc.data, spec, opts, &cache), msplit(p, pairwise) - 1e-12);
    }
}

TEST(MultiCriteria, OversizedBlocksRejected) {
    const auto sc = builtin("noise", 200, 5, 1.0);
    const MultiCriterionOptions opts{.seed = 5, .max_block = 2};
    const Partition p{{VariableSet{0, 1, 2}, VariableSet{3}, VariableSet{4}, VariableSet{5}}};
    EXPECT_THROW(adiam_multi(p, sc.data, AggregatorSpec::average(), opts), ResourceError);
    EXPECT_THROW(msplit_multi(p, sc.data, AggregatorSpec::average(), opts), ResourceError);
}

TEST(ValidityCurve, CoversInteriorCutsAndStaysInRange) {
    const auto sc = builtin("noise", 600, 6, 1.0);
    const auto spec = AggregatorSpec::average();
    const auto pairwise = pairwise_matrix(sc.data, spec, 6);
    const auto d = agglomerate(sc.data, spec, Backend::multivariate(), {.seed = 6});
    const auto c = validity_curve(d, pairwise);
    ASSERT_EQ(c.points.size(), 4u);
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& p = c.points[i];
        EXPECT_EQ(p.k, i + 2);
        EXPECT_GE(p.adiam, 0.0);
        EXPECT_LE(p.adiam, 1.0);
        EXPECT_GE(p.msplit, 0.0);
        EXPECT_LE(p.msplit, 1.0);
        EXPECT_GE(p.silhouette, -1.0);
        EXPECT_LE(p.silhouette, 1.0);
        const auto part = cut(d, p.k);
        EXPECT_EQ(p.adiam, adiam(part, pairwise));
        EXPECT_EQ(p.silhouette, silhouette(part, pairwise));
        if (i > 0) EXPECT_GE(p.msplit, c.points[i - 1].msplit);
    }
    const std::size_t k = choose_k(c, SelectionRule::tradeoff);
    EXPECT_GE(k, 2u);
    EXPECT_LE(k, 5u);
}
