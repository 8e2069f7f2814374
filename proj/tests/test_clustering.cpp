#include "depclust/clustering.hpp"
#include "depclust/error.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace depclust;
using depclust::testing::builtin;
using depclust::testing::uniform_matrix;

namespace {

Merge make_merge(VariableSet left, VariableSet right, double height) {
    std::vector<std::size_t> all(left.indices().begin(), left.indices().end());
    all.insert(all.end(), right.indices().begin(), right.indices().end());
    return {std::move(left), std::move(right), height, VariableSet(all)};
}

Dendrogram five_leaf_tree() {
    Dendrogram d;
    d.labels = {"a", "b", "c", "d", "e"};
    d.merges.push_back(make_merge(VariableSet{0}, VariableSet{1}, 0.1));
    d.merges.push_back(make_merge(VariableSet{3}, VariableSet{4}, 0.2));
    d.merges.push_back(make_merge(VariableSet{2}, VariableSet{3, 4}, 0.3));
    d.merges.push_back(make_merge(VariableSet{0, 1}, VariableSet{2, 3, 4}, 0.4));
    return d;
}

std::set<std::string> label_set(const VariableSet& key, const std::vector<std::string>& labels) {
    std::set<std::string> out;
    for (std::size_t i : key.indices()) out.insert(labels[i]);
    return out;
}

}  // namespace

TEST(Cut, UnrollsMergeList) {
    const auto d = five_leaf_tree();
    EXPECT_EQ(cut(d, 3), (Partition{{VariableSet{0, 1}, VariableSet{2}, VariableSet{3, 4}}}));
    EXPECT_EQ(cut(d, 2), (Partition{{VariableSet{0, 1}, VariableSet{2, 3, 4}}}));
}

TEST(Cut, TrivialPartitions) {
    const auto d = five_leaf_tree();
    const auto all = cut(d, 5);
    ASSERT_EQ(all.blocks.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(all.blocks[i], VariableSet{i});
    EXPECT_EQ(cut(d, 1), (Partition{{VariableSet{0, 1, 2, 3, 4}}}));
}

TEST(Cut, RejectsOutOfRange) {
    auto d = five_leaf_tree();
    EXPECT_THROW(cut(d, 0), InputError);
    EXPECT_THROW(cut(d, 6), InputError);
    d.merges.resize(2);
    EXPECT_NO_THROW(cut(d, 3));
    EXPECT_THROW(cut(d, 2), InputError);
}

TEST(Partition, ValidationAndAssignment) {
    const Partition p{{VariableSet{2, 0}, VariableSet{1}}};
    EXPECT_NO_THROW(p.validate(3));
    EXPECT_THROW(p.validate(4), InputError);
    EXPECT_THROW((Partition{{VariableSet{0, 1}, VariableSet{1, 2}}}).validate(3), InputError);
    EXPECT_THROW((Partition{{VariableSet{0, 1, 2}, VariableSet{}}}).validate(3), InputError);
    EXPECT_EQ(p.assignment(3), (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_EQ((Partition{{VariableSet{3}, VariableSet{2, 0}, VariableSet{1}}}).canonical(),
              (Partition{{VariableSet{0, 2}, VariableSet{1}, VariableSet{3}}}));
}

TEST(Dendrogram, DetectsInversions) {
    auto d = five_leaf_tree();
    EXPECT_FALSE(d.has_inversions());
    d.merges[2].height = 0.05;
    EXPECT_TRUE(d.has_inversions());
}

TEST(BackendParse, Forms) {
    EXPECT_EQ(Backend::parse("multivariate"), Backend::multivariate());
    EXPECT_EQ(Backend::parse("linkage:single"), Backend::linkage(LinkageMethod::single));
    EXPECT_EQ(Backend::parse(Backend::linkage(LinkageMethod::complete).to_string()),
              Backend::linkage(LinkageMethod::complete));
    for (const char* bad : {"linkage", "linkage:ward", "multi", ""}) EXPECT_THROW(Backend::parse(bad), SpecError);
}

TEST(Agglomerate, LinkageSumMultivariateEndsNearZero) {
    const auto sc = builtin("linkage-sum", 2000, 4);
    const auto pi = AggregatorSpec::copula(CopulaFamily::independence);
    const auto multi = agglomerate(sc.data, pi, Backend::multivariate(), {.seed = 4});
    ASSERT_EQ(multi.merges.size(), 2u);
    EXPECT_EQ(multi.merges[0].key.size(), 2u);
    EXPECT_LE(multi.merges.back().height, 0.15);
    for (auto method : {LinkageMethod::single, LinkageMethod::average, LinkageMethod::complete}) {
        const auto lk = agglomerate(sc.data, pi, Backend::linkage(method), {.seed = 4});
        EXPECT_GE(lk.merges.back().height, 0.3) << linkage_name(method);
    }
}

TEST(Agglomerate, IndependentVariablesMergeNearOne) {
    const auto data = uniform_matrix(3000, 3, 5);
    const auto d = agglomerate(data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 5});
    for (const auto& m : d.merges) EXPECT_GE(m.height, 0.9);
}

TEST(Agglomerate, MergeKeysAreConsistent) {
    const auto sc = builtin("noise", 500, 6, 1.0);
    const auto d = agglomerate(sc.data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 6});
    ASSERT_EQ(d.merges.size(), 5u);
    EXPECT_EQ(d.labels, sc.data.labels());
    for (const auto& m : d.merges) {
        EXPECT_TRUE(m.left.disjoint_with(m.right));
        EXPECT_LT(m.left.indices(), m.right.indices());
        EXPECT_EQ(m.key.size(), m.left.size() + m.right.size());
        EXPECT_GE(m.height, 0.0);
        EXPECT_LE(m.height, 1.0);
    }
    EXPECT_EQ(d.merges.back().key.size(), 6u);
}

TEST(Agglomerate, Deterministic) {
    const auto sc = builtin("noise", 400, 7, 2.0);
    const auto spec = AggregatorSpec::copula(CopulaFamily::independence);
    const auto a = agglomerate(sc.data, spec, Backend::multivariate(), {.seed = 7});
    const auto b = agglomerate(sc.data, spec, Backend::multivariate(), {.seed = 7});
    ASSERT_EQ(a.merges.size(), b.merges.size());
    for (std::size_t i = 0; i < a.merges.size(); ++i) {
        EXPECT_EQ(a.merges[i].key, b.merges[i].key);
        EXPECT_EQ(a.merges[i].height, b.merges[i].height);
    }
}

TEST(Agglomerate, ColumnPermutationRelabelsOnly) {
    const auto sc = builtin("noise", 400, 8, 1.0);
    const std::vector<std::size_t> order{4, 0, 5, 2, 1, 3};
    const auto shuffled = sc.data.select(order);
    for (const auto& backend : {Backend::multivariate(), Backend::linkage(LinkageMethod::average)}) {
        const auto a = agglomerate(sc.data, AggregatorSpec::average(), backend, {.seed = 8});
        const auto b = agglomerate(shuffled, AggregatorSpec::average(), backend, {.seed = 8});
        ASSERT_EQ(a.merges.size(), b.merges.size());
        for (std::size_t i = 0; i < a.merges.size(); ++i) {
            EXPECT_EQ(label_set(a.merges[i].key, a.labels), label_set(b.merges[i].key, b.labels));
            EXPECT_EQ(a.merges[i].height, b.merges[i].height);
        }
    }
}

TEST(Agglomerate, EarlyStopMatchesFullPrefix) {
    const auto sc = builtin("noise", 300, 9, 1.0);
    const auto full = agglomerate(sc.data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 9});
    const auto part =
        agglomerate(sc.data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 9, .stop_at = 3});
    ASSERT_EQ(part.merges.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(part.merges[i].key, full.merges[i].key);
        EXPECT_EQ(part.merges[i].height, full.merges[i].height);
    }
    EXPECT_EQ(cut(part, 3), cut(full, 3));
}

TEST(Agglomerate, SharedCacheGivesIdenticalTree) {
    const auto sc = builtin("noise", 300, 10, 1.0);
    TermCache cache(sc.data, 10);
    const auto a = agglomerate(sc.data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 10}, &cache);
    const auto b = agglomerate(sc.data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 10});
    for (std::size_t i = 0; i < a.merges.size(); ++i) EXPECT_EQ(a.merges[i].height, b.merges[i].height);
}

TEST(Agglomerate, TwoVariablesSingleMerge) {
    const auto data = uniform_matrix(100, 2, 11);
    const auto d = agglomerate(data, AggregatorSpec::average(), Backend::multivariate(), {.seed = 1});
    ASSERT_EQ(d.merges.size(), 1u);
    EXPECT_EQ(d.merges[0].key, (VariableSet{0, 1}));
}
