#include "citecascade/nullmodel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "citecascade/errors.hpp"
#include "parallel.hpp"

namespace citecascade {

namespace {

std::uint64_t pack(NodeIndex cited, NodeIndex citing) {
    return (static_cast<std::uint64_t>(cited) << 32) | citing;
}

}  // namespace

bool temporal_rule_holds(const CitationGraph& graph, TemporalRule rule, const Edge& proposed,
                         const Edge& replaced) {
    switch (rule) {
        case TemporalRule::ordered:
            return graph.year(proposed.cited) <= graph.year(proposed.citing);
        case TemporalRule::strict_year_match:
            return graph.year(proposed.cited) == graph.year(replaced.cited) &&
                   graph.year(proposed.citing) == graph.year(replaced.citing);
    }
    return false;
}

CitationGraph rewire(const CitationGraph& graph, const RewireConfig& config, RewireStats* stats) {
    if (graph.edge_count() < 2) throw InsufficientEdges("rewiring needs at least 2 edges");
    if (!(config.swap_factor > 0)) throw std::invalid_argument("swap_factor must be positive");

    std::vector<Edge> edges = graph.edges();
    std::unordered_set<std::uint64_t> present;
    present.reserve(edges.size() * 2);
    for (const auto& e : edges) present.insert(pack(e.cited, e.citing));

    const auto attempts =
        static_cast<std::size_t>(std::ceil(config.swap_factor * static_cast<double>(edges.size())));
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);

    std::size_t accepted = 0;
    for (std::size_t step = 0; step < attempts; ++step) {
        const std::size_t i = pick(rng);
        const std::size_t j = pick(rng);
        const Edge first = edges[i];
        const Edge second = edges[j];
        const Edge new_first{first.cited, second.citing};
        const Edge new_second{second.cited, first.citing};

        if (new_first.cited == new_first.citing || new_second.cited == new_second.citing) continue;
        if (present.count(pack(new_first.cited, new_first.citing)) ||
            present.count(pack(new_second.cited, new_second.citing))) {
            continue;
        }
        if (!temporal_rule_holds(graph, config.temporal_rule, new_first, first) ||
            !temporal_rule_holds(graph, config.temporal_rule, new_second, second)) {
            continue;
        }
        present.erase(pack(first.cited, first.citing));
        present.erase(pack(second.cited, second.citing));
        present.insert(pack(new_first.cited, new_first.citing));
        present.insert(pack(new_second.cited, new_second.citing));
        edges[i] = new_first;
        edges[j] = new_second;
        ++accepted;
    }
    if (stats) *stats = {attempts, accepted};
    return CitationGraph(graph.shared_publications(), edges);
}

std::vector<BaselinePoint> baseline_curve(const CitationGraph& graph, const RewireConfig& config,
                                          const CodeTable& codes, std::span<const NodeIndex> roots,
                                          std::size_t max_generation, const BaselineOptions& options) {
    if (options.realizations < 1) throw std::invalid_argument("need at least one realization");
    std::vector<OverallCurve> curves(options.realizations);
    detail::parallel_chunks(options.realizations, options.threads,
                            [&](unsigned, std::size_t begin, std::size_t end) {
                                for (std::size_t k = begin; k < end; ++k) {
                                    RewireConfig cfg = config;
                                    cfg.seed = config.seed + k;
                                    const CitationGraph shuffled = rewire(graph, cfg);
                                    curves[k] = overall_relevance_by_generation(
                                        shuffled, codes, roots, max_generation,
                                        {options.aggregation, 1});
                                }
                            });

    std::vector<BaselinePoint> out(max_generation);
    for (std::size_t g = 0; g < max_generation; ++g) {
        double sum = 0;
        std::size_t n = 0;
        for (const auto& c : curves) {
            if (c.values[g]) {
                sum += *c.values[g];
                ++n;
            }
        }
        auto& point = out[g];
        point.n = n;
        if (n == 0) {
            point.mean = point.std = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        point.mean = sum / static_cast<double>(n);
        double ss = 0;
        for (const auto& c : curves) {
            if (c.values[g]) ss += (*c.values[g] - point.mean) * (*c.values[g] - point.mean);
        }
        point.std = std::sqrt(ss / static_cast<double>(n));
    }
    return out;
}

}  // namespace citecascade
