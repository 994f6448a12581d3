#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "citecascade/cascade.hpp"
#include "citecascade/curve_cluster.hpp"
#include "citecascade/errors.hpp"
#include "citecascade/synthetic.hpp"
#include "test_util.hpp"

using namespace citecascade;

namespace {

// Same partition up to renaming of cluster indices.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::map<std::size_t, std::size_t> forward, backward;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [f, fnew] = forward.emplace(a[i], b[i]);
        auto [r, rnew] = backward.emplace(b[i], a[i]);
        if (f->second != b[i] || r->second != a[i]) return false;
    }
    return true;
}

}  // namespace

TEST(ZNormalize, Examples) {
    const std::vector<double> up{1, 2, 3};
    auto z = z_normalize(up);
    EXPECT_NEAR(z[0] + z[1] + z[2], 0.0, 1e-15);
    EXPECT_LT(z[0], z[1]);
    EXPECT_LT(z[1], z[2]);
    EXPECT_NEAR(z[2], std::sqrt(1.5), 1e-15);

    const std::vector<double> flat{5, 5, 5};
    EXPECT_EQ(z_normalize(flat), (std::vector<double>{0, 0, 0}));
    EXPECT_THROW(z_normalize(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(ZNormalize, RandomVectorsHaveUnitMoments) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> value(-100, 100);
    std::uniform_int_distribution<std::size_t> length(2, 60);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(length(rng));
        for (auto& x : v) x = value(rng);
        auto z = z_normalize(v);
        const double n = static_cast<double>(z.size());
        double mean = 0, ss = 0;
        for (double x : z) mean += x;
        mean /= n;
        for (double x : z) ss += (x - mean) * (x - mean);
        EXPECT_NEAR(mean, 0.0, 1e-12);
        EXPECT_NEAR(std::sqrt(ss / n), 1.0, 1e-12);
    }
}

TEST(ImputeMissing, InterpolatesAndCarriesEnds) {
    std::vector<std::optional<double>> v{std::nullopt, 0.8, std::nullopt, std::nullopt, 0.2, std::nullopt};
    std::size_t imputed = 0;
    auto out = impute_missing(v, &imputed).value();
    ASSERT_EQ(out.size(), 6u);
    EXPECT_DOUBLE_EQ(out[0], 0.8);
    EXPECT_DOUBLE_EQ(out[1], 0.8);
    EXPECT_NEAR(out[2], 0.6, 1e-15);
    EXPECT_NEAR(out[3], 0.4, 1e-15);
    EXPECT_DOUBLE_EQ(out[4], 0.2);
    EXPECT_DOUBLE_EQ(out[5], 0.2);
    EXPECT_EQ(imputed, 4u);

    std::vector<std::optional<double>> none(3);
    EXPECT_FALSE(impute_missing(none).has_value());
}

TEST(CollectCohort, SingleDeepRoot) {
    auto g = testutil::GraphBuilder().chain({"R", "a", "b", "c"}).edge("x", "y").build();
    auto set = collect_cohort(g, 3);
    ASSERT_EQ(set.series.size(), 1u);
    EXPECT_EQ(set.ids[0], "R");
    EXPECT_EQ(set.series[0], (std::vector<double>{1, 1, 1}));
    EXPECT_EQ(collect_cohort(g, 2).ids, std::vector<std::string>{"a"});
}

TEST(CollectCohort, EmptyAndInvalid) {
    auto g = testutil::GraphBuilder().edge("R", "a").edge("R", "b").build();
    EXPECT_THROW(collect_cohort(g, 10), EmptyCohort);
    EXPECT_THROW(collect_cohort(g, 1), std::invalid_argument);
}

TEST(CollectCohort, MatchesSummaryFilter) {
    auto g = synthetic::random_temporal_dag(500, 900, 14);
    const auto summaries = summarize_all(g, {.threads = 1});
    std::map<std::size_t, std::vector<std::string>> by_depth;
    for (NodeIndex v = 0; v < g.node_count(); ++v) by_depth[summaries[v].depth].push_back(g.id(v));
    for (const auto& [depth, ids] : by_depth) {
        if (depth < 2) continue;
        auto set = collect_cohort(g, depth, {.threads = 3});
        EXPECT_EQ(set.ids, ids) << "depth " << depth;
        for (std::size_t i = 0; i < set.ids.size(); ++i) {
            const auto widths = width_profile(build_cascade(g, set.ids[i]));
            EXPECT_EQ(set.series[i], std::vector<double>(widths.begin(), widths.end()));
        }
    }
}

TEST(CollectCohort, RelevanceSeriesImputeGaps) {
    auto g = testutil::GraphBuilder()
                 .node("R", 2000, {"01.10.Aa"})
                 .node("a", 2001, {"01.10.Aa"})
                 .node("b", 2002, {})
                 .node("c", 2003, {"01.10.Aa", "01.11.Aa"})
                 .chain({"R", "a", "b", "c"})
                 .build();
    auto set = collect_cohort(g, 3, {.kind = SeriesKind::relevance});
    ASSERT_EQ(set.ids, std::vector<std::string>{"R"});
    EXPECT_EQ(set.series[0], (std::vector<double>{1.0, 0.75, 0.5}));
    EXPECT_EQ(set.imputed_values, 1u);
}

TEST(KMeans, SingleClusterIsTheMean) {
    auto [set, labels] = testutil::planted_shapes(1);
    auto model = kmeans(set, {.k = 1, .seed = 4, .restarts = 2});
    std::vector<double> mean(set.depth, 0.0);
    double inertia = 0;
    std::vector<std::vector<double>> z;
    for (const auto& s : set.series) z.push_back(z_normalize(s));
    for (const auto& s : z) {
        for (std::size_t t = 0; t < s.size(); ++t) mean[t] += s[t] / static_cast<double>(z.size());
    }
    for (const auto& s : z) {
        for (std::size_t t = 0; t < s.size(); ++t) inertia += (s[t] - mean[t]) * (s[t] - mean[t]);
    }
    ASSERT_EQ(model.centroids.size(), 1u);
    for (std::size_t t = 0; t < mean.size(); ++t) EXPECT_NEAR(model.centroids[0][t], mean[t], 1e-12);
    EXPECT_NEAR(model.inertia, inertia, 1e-9);
}

TEST(KMeans, SeparableGroupsHaveZeroInertia) {
    std::vector<std::vector<double>> series;
    for (int i = 0; i < 10; ++i) series.push_back({1, 2, 3, 4});
    for (int i = 0; i < 10; ++i) series.push_back({4, 1, 3, 1});
    auto set = testutil::make_series_set(series);
    auto model = kmeans(set, {.k = 2, .seed = 0});
    EXPECT_NEAR(model.inertia, 0.0, 1e-20);
    std::vector<std::size_t> truth(20, 0);
    std::fill(truth.begin() + 10, truth.end(), 1);
    EXPECT_DOUBLE_EQ(testutil::label_agreement(model.assignments, truth, 2), 1.0);
}

TEST(KMeans, RecoversPlantedShapes) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto [set, labels] = testutil::planted_shapes(100 + seed);
        auto model = kmeans(set, {.k = 3, .seed = seed});
        EXPECT_GE(testutil::label_agreement(model.assignments, labels, 3), 0.95) << "seed " << seed;
    }
}

TEST(KMeans, InertiaNeverIncreases) {
    auto [set, labels] = testutil::planted_shapes(7);
    auto model = kmeans(set, {.k = 5, .seed = 11, .restarts = 8});
    ASSERT_EQ(model.inertia_history.size(), 8u);
    for (const auto& trace : model.inertia_history) {
        for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] * (1 + 1e-12) + 1e-12);
    }
    for (std::size_t c : model.assignments) EXPECT_LT(c, 5u);
    EXPECT_GE(model.inertia, 0.0);
}

TEST(KMeans, InvariantUnderSeriesPermutation) {
    auto [set, labels] = testutil::planted_shapes(21);
    auto base = kmeans(set, {.k = 3, .seed = 5});
    std::vector<std::size_t> order(set.series.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), std::mt19937_64(9));
    SeriesSet permuted = set;
    for (std::size_t i = 0; i < order.size(); ++i) {
        permuted.series[i] = set.series[order[i]];
        permuted.ids[i] = set.ids[order[i]];
    }
    auto model = kmeans(permuted, {.k = 3, .seed = 5});
    std::vector<std::size_t> unpermuted(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) unpermuted[order[i]] = model.assignments[i];
    EXPECT_TRUE(same_partition(unpermuted, base.assignments));
    EXPECT_NEAR(model.inertia, base.inertia, 1e-9);
}

TEST(KMeans, InvariantUnderPerSeriesAffineMaps) {
    auto [set, labels] = testutil::planted_shapes(33);
    auto base = kmeans(set, {.k = 3, .seed = 2});
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> a(0.1, 20), b(-50, 50);
    SeriesSet mapped = set;
    for (auto& s : mapped.series) {
        const double scale = a(rng), offset = b(rng);
        for (auto& x : s) x = scale * x + offset;
    }
    auto model = kmeans(mapped, {.k = 3, .seed = 2});
    EXPECT_TRUE(same_partition(model.assignments, base.assignments));
}

TEST(KMeans, DeterministicAcrossThreadCounts) {
    auto [set, labels] = testutil::planted_shapes(44);
    auto a = kmeans(set, {.k = 4, .seed = 8, .threads = 1});
    auto b = kmeans(set, {.k = 4, .seed = 8, .threads = 4});
    EXPECT_EQ(a.assignments, b.assignments);
    EXPECT_EQ(a.centroids, b.centroids);
    EXPECT_EQ(a.inertia, b.inertia);
    EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(KMeans, TooFewSeries) {
    auto set = testutil::make_series_set({{1, 2}, {2, 1}});
    EXPECT_THROW(kmeans(set, {.k = 3}), TooFewSeries);
    EXPECT_THROW(kmeans(set, {.k = 0}), std::invalid_argument);
}

TEST(KMeans, DefaultClusterCount) {
    EXPECT_EQ(default_cluster_count(3), 3u);
    EXPECT_EQ(default_cluster_count(999), 5u);
    EXPECT_EQ(default_cluster_count(1000), 10u);
}
