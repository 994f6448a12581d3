#include <gtest/gtest.h>

#include <map>
#include <random>

#include "citecascade/cascade.hpp"
#include "citecascade/errors.hpp"
#include "citecascade/synthetic.hpp"
#include "test_util.hpp"

using namespace citecascade;

namespace {

std::vector<std::string> ids_of(const CitationGraph& g, const std::vector<NodeIndex>& layer) {
    std::vector<std::string> out;
    for (auto v : layer) out.push_back(g.id(v));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> all_ids(const CitationGraph& g) {
    std::vector<std::string> out;
    for (NodeIndex v = 0; v < g.node_count(); ++v) out.push_back(g.id(v));
    return out;
}

}  // namespace

TEST(BuildCascade, UncitedRoot) {
    auto g = testutil::GraphBuilder().node("P").node("Q").edge("Q", "P").build();
    auto c = build_cascade(g, "P");
    EXPECT_TRUE(c.layers.empty());
    auto s = summarize(c);
    EXPECT_EQ(s.depth, 0u);
    EXPECT_EQ(s.width, 0u);
    EXPECT_EQ(s.size, 1u);
    EXPECT_FALSE(s.virality.has_value());
}

TEST(BuildCascade, StarAndChain) {
    auto star = testutil::GraphBuilder().edge("R", "a").edge("R", "b").edge("R", "c").build();
    auto c = build_cascade(star, "R");
    ASSERT_EQ(c.depth(), 1u);
    EXPECT_EQ(ids_of(star, c.layers[0]), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(summarize(c), (CascadeSummary{1, 3, 4, 1.0}));

    auto chain = testutil::GraphBuilder().chain({"R", "a", "b", "c"}).build();
    auto cc = build_cascade(chain, "R");
    EXPECT_EQ(width_profile(cc), (std::vector<std::size_t>{1, 1, 1}));
    EXPECT_EQ(summarize(cc), (CascadeSummary{3, 1, 4, 2.0}));
}

TEST(BuildCascade, ShortcutPlacesNodeAtShortestDistance) {
    // R -> a -> b and R -> b: b sits in generation 1.
    auto g = testutil::GraphBuilder().chain({"R", "a", "b"}).edge("R", "b").build();
    auto c = build_cascade(g, "R");
    ASSERT_EQ(c.depth(), 1u);
    EXPECT_EQ(ids_of(g, c.layers[0]), (std::vector<std::string>{"a", "b"}));
}

TEST(BuildCascade, UnknownRoot) {
    auto g = testutil::GraphBuilder().node("P").build();
    EXPECT_THROW(build_cascade(g, "nope"), UnknownRootError);
}

TEST(BuildCascade, MaxDepthTruncates) {
    auto g = testutil::GraphBuilder().chain({"R", "a", "b", "c", "d"}).build();
    EXPECT_EQ(build_cascade(g, "R", 2).depth(), 2u);
    EXPECT_EQ(build_cascade(g, "R", 0).depth(), 0u);
}

TEST(BuildCascade, MatchesRelaxationOracle) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto g = synthetic::random_temporal_dag(200, 600, seed);
        const auto raw = testutil::edge_list(g);
        CascadeWalker walker(g);
        for (NodeIndex root = 0; root < g.node_count(); root += 7) {
            const auto expect = oracle::layers_from(oracle::shortest_distances(g.node_count(), raw, root));
            EXPECT_EQ(build_cascade(g, root).layers, expect) << "root " << root;
            EXPECT_EQ(walker.cascade(root).layers, expect) << "root " << root;
        }
    }
}

TEST(Summary, WidthAndViralityExamples) {
    // Widths [2, 3, 1].
    auto g = testutil::GraphBuilder()
                 .edge("R", "a1").edge("R", "a2")
                 .edge("a1", "b1").edge("a1", "b2").edge("a2", "b3")
                 .edge("b1", "c1")
                 .build();
    auto c = build_cascade(g, "R");
    EXPECT_EQ(width_profile(c), (std::vector<std::size_t>{2, 3, 1}));
    EXPECT_EQ(cascade_width(c), 3u);
    // (2*1 + 3*2 + 1*3) / 6
    EXPECT_NEAR(structural_virality(c).value(), 11.0 / 6.0, 1e-12);
}

TEST(Summary, ViralityMatchesOracleDistances) {
    auto g = synthetic::random_temporal_dag(200, 700, 11);
    const auto raw = testutil::edge_list(g);
    for (NodeIndex root = 0; root < 60; ++root) {
        const auto dist = oracle::shortest_distances(g.node_count(), raw, root);
        double sum = 0;
        std::size_t n = 0;
        for (long d : dist) {
            if (d > 0) {
                sum += static_cast<double>(d);
                ++n;
            }
        }
        auto v = structural_virality(build_cascade(g, root));
        if (n == 0) {
            EXPECT_FALSE(v.has_value());
        } else {
            EXPECT_NEAR(v.value(), sum / static_cast<double>(n), 1e-12);
        }
    }
}

TEST(CountWalks, DiamondAndChain) {
    auto diamond = testutil::GraphBuilder().edge("R", "a").edge("R", "b").edge("a", "c").edge("b", "c").build();
    EXPECT_EQ(count_walks(diamond, *diamond.find("R"), 5).walk_counts, (std::vector<std::uint64_t>{2, 2}));

    auto chain = testutil::GraphBuilder().chain({"R", "a", "b", "c"}).build();
    auto p = count_walks(chain, *chain.find("R"), 10);
    EXPECT_EQ(p.walk_counts, (std::vector<std::uint64_t>{1, 1, 1}));
    EXPECT_FALSE(p.saturated);
}

TEST(CountWalks, MatchesEnumeration) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = synthetic::random_temporal_dag(30, 80, seed);
        const auto raw = testutil::edge_list(g);
        for (NodeIndex root = 0; root < g.node_count(); ++root) {
            EXPECT_EQ(count_walks(g, root, 6).walk_counts, oracle::walk_counts(g.node_count(), raw, root, 6));
        }
    }
}

TEST(CountWalks, DepthLimits) {
    auto g = testutil::GraphBuilder().chain({"R", "a"}).build();
    EXPECT_THROW(count_walks(g, 0, kWalkDepthCap + 1), DepthCapExceeded);
    EXPECT_THROW(count_walks(g, 0, 0), std::invalid_argument);
    EXPECT_NO_THROW(count_walks(g, 0, 20, 20));
}

TEST(CountWalks, SaturatesInsteadOfOverflowing) {
    // Layered graph with 64 nodes per layer, fully connected between layers:
    // walks of length k number 64^k, which overflows at k = 11.
    testutil::GraphBuilder b;
    b.node("R");
    const int width = 64, depth = 12;
    auto name = [](int layer, int i) { return "n" + std::to_string(layer) + "_" + std::to_string(i); };
    for (int i = 0; i < width; ++i) b.edge("R", name(0, i));
    for (int l = 0; l + 1 < depth; ++l) {
        for (int i = 0; i < width; ++i) {
            for (int j = 0; j < width; ++j) b.edge(name(l, i), name(l + 1, j));
        }
    }
    auto g = b.build();
    auto p = count_walks(g, *g.find("R"), depth);
    EXPECT_TRUE(p.saturated);
    EXPECT_EQ(p.walk_counts[0], 64u);
    EXPECT_EQ(p.walk_counts.back(), std::numeric_limits<std::uint64_t>::max());
}

TEST(Batch, EqualsSingleRootResults) {
    auto g = synthetic::random_temporal_dag(300, 900, 3);
    const auto roots = all_ids(g);
    for (unsigned threads : {1u, 4u}) {
        BatchOptions opts;
        opts.threads = threads;
        opts.block_size = 37;
        opts.keep_layers = true;
        auto items = batch_cascades(g, roots, opts);
        ASSERT_EQ(items.size(), roots.size());
        for (std::size_t i = 0; i < roots.size(); ++i) {
            EXPECT_EQ(items[i].root, roots[i]);
            auto single = build_cascade(g, roots[i]);
            EXPECT_EQ(items[i].cascade->layers, single.layers);
            EXPECT_EQ(*items[i].summary, summarize(single));
        }
    }
}

TEST(Batch, EmptyAndUnknownRoots) {
    auto g = testutil::GraphBuilder().chain({"R", "a"}).build();
    EXPECT_TRUE(batch_cascades(g, std::vector<std::string>{}).empty());

    const std::vector<std::string> roots{"R", "ghost", "a"};
    auto items = batch_cascades(g, roots);
    ASSERT_EQ(items.size(), 3u);
    EXPECT_TRUE(items[0].error.empty());
    EXPECT_FALSE(items[1].error.empty());
    EXPECT_FALSE(items[1].summary.has_value());
    EXPECT_EQ(items[2].summary->size, 1u);
}

TEST(Batch, DepthHistogramMatchesOracle) {
    auto g = synthetic::random_temporal_dag(1000, 2500, 8);
    const auto raw = testutil::edge_list(g);
    std::map<std::size_t, std::size_t> expect, got;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        ++expect[oracle::layers_from(oracle::shortest_distances(g.node_count(), raw, v)).size()];
    }
    for (const auto& s : summarize_all(g, {.threads = 3})) ++got[s.depth];
    EXPECT_EQ(got, expect);
}

TEST(CascadeProperties, StructuralInvariants) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto g = synthetic::random_temporal_dag(150, 500, seed);
        for (NodeIndex root = 0; root < g.node_count(); ++root) {
            const auto c = build_cascade(g, root);
            const auto s = summarize(c);
            std::size_t total = 1;
            for (auto w : width_profile(c)) total += w;
            EXPECT_EQ(s.size, total);
            if (s.virality) {
                EXPECT_GE(*s.virality, 1.0);
                EXPECT_LE(*s.virality, static_cast<double>(s.depth));
            }
            // Every node in generation g > 1 has a predecessor in generation g - 1.
            for (std::size_t gen = 1; gen < c.layers.size(); ++gen) {
                for (auto v : c.layers[gen]) {
                    bool found = false;
                    for (auto p : g.cited_by(v)) {
                        found = found || std::binary_search(c.layers[gen - 1].begin(), c.layers[gen - 1].end(), p);
                    }
                    EXPECT_TRUE(found);
                }
            }
            if (s.depth > 0) {
                auto walks = count_walks(g, root, std::min<std::size_t>(s.depth, kWalkDepthCap)).walk_counts;
                std::uint64_t sum = 0;
                for (auto w : walks) sum += w;
                EXPECT_GE(sum, s.size - 1);
            }
        }
    }
}

TEST(CascadeProperties, AddingEdgesNeverShrinksSize) {
    std::mt19937_64 rng(4);
    auto g = synthetic::random_temporal_dag(120, 300, 21);
    auto edges = g.edges();
    std::set<Edge> present(edges.begin(), edges.end());
    std::uniform_int_distribution<NodeIndex> pick(0, 119);
    auto extended = edges;
    while (extended.size() < edges.size() + 60) {
        NodeIndex a = pick(rng), b = pick(rng);
        if (a < b && present.insert({a, b}).second) extended.push_back({a, b});
    }
    CitationGraph bigger(g.shared_publications(), extended);
    for (NodeIndex root = 0; root < g.node_count(); ++root) {
        EXPECT_GE(summarize(build_cascade(bigger, root)).size, summarize(build_cascade(g, root)).size);
    }
}

TEST(CascadeProperties, Deterministic) {
    auto g = synthetic::random_temporal_dag(400, 1200, 2);
    const auto roots = all_ids(g);
    auto first = batch_cascades(g, roots, {.threads = 1});
    auto second = batch_cascades(g, roots, {.threads = 6});
    ASSERT_EQ(first.size(), second.size());
    for (std::size_t i = 0; i < first.size(); ++i) EXPECT_EQ(first[i].summary, second[i].summary);
}
