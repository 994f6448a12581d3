#include "citecascade/impact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "citecascade/errors.hpp"
#include "citecascade/stats.hpp"
#include "parallel.hpp"

namespace citecascade {

std::string to_string(BinVariable variable) {
    switch (variable) {
        case BinVariable::citation_count: return "citation_count";
        case BinVariable::depth: return "depth";
        case BinVariable::virality: return "virality";
        case BinVariable::relevance: return "relevance";
    }
    return "unknown";
}

BinSpec::BinSpec(BinVariable variable, std::vector<double> edges)
    : variable_(variable), edges_(std::move(edges)) {
    if (edges_.size() < 2) throw std::invalid_argument("a bin spec needs at least two edges");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!std::isfinite(edges_[i])) throw std::invalid_argument("bin edges must be finite");
        if (i > 0 && !(edges_[i] > edges_[i - 1])) {
            throw std::invalid_argument("bin edges must be strictly increasing");
        }
    }
}

std::optional<std::size_t> BinSpec::bin_of(double value) const {
    if (std::isnan(value) || value < edges_.front() || value > edges_.back()) return std::nullopt;
    if (value == edges_.back()) return bin_count() - 1;
    auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
    return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

BinSpec citation_count_bins(double max_value) {
    std::vector<double> edges{0.0, 1.0};
    while (edges.back() < max_value) edges.push_back(edges.back() * 2);
    return BinSpec(BinVariable::citation_count, std::move(edges));
}

BinSpec equal_count_bins(BinVariable variable, std::span<const double> values, std::size_t segments) {
    if (values.empty()) throw EmptyInput("equal-count bins of an empty sample");
    if (segments < 1) throw std::invalid_argument("segments must be at least 1");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    for (std::size_t s = 0; s <= segments; ++s) {
        const double e = stats::quantile_sorted(sorted, static_cast<double>(s) / static_cast<double>(segments));
        if (edges.empty() || e > edges.back()) edges.push_back(e);
    }
    if (edges.size() < 2) edges.push_back(edges.front() + 1);
    return BinSpec(variable, std::move(edges));
}

BinSpec relevance_bins() {
    std::vector<double> edges;
    for (int i = 0; i <= 10; ++i) edges.push_back(i / 10.0);
    return BinSpec(BinVariable::relevance, std::move(edges));
}

std::vector<RootRecord> compute_root_records(const CitationGraph& graph, const CodeTable& codes,
                                             std::span<const NodeIndex> roots, const BatchOptions& options) {
    std::vector<RootRecord> out(roots.size());
    detail::parallel_chunks(roots.size(), options.threads, [&](unsigned, std::size_t begin, std::size_t end) {
        CascadeWalker walker(graph);
        for (std::size_t i = begin; i < end; ++i) {
            auto& rec = out[i];
            rec.root = roots[i];
            rec.direct_citations = graph.out_degree(rec.root);
            rec.first = first_generation(graph, codes, rec.root);
            rec.summary = CascadeSummary{};
            std::uint64_t distance_sum = 0;
            walker.for_each_layer(rec.root, options.max_depth, [&](std::size_t g, std::span<const NodeIndex> layer) {
                rec.summary.depth = g;
                rec.summary.width = std::max(rec.summary.width, layer.size());
                rec.summary.size += layer.size();
                distance_sum += g * layer.size();
                if (g <= rec.generation_relevance.size()) {
                    const auto s = layer_relevance(codes, rec.root, layer, g);
                    if (s.defined()) rec.generation_relevance[g - 1] = s.mean;
                }
                return true;
            });
            if (rec.summary.size > 1) {
                rec.summary.virality =
                    static_cast<double>(distance_sum) / static_cast<double>(rec.summary.size - 1);
            }
        }
    });
    return out;
}

Distribution distribution_summary(std::span<const CascadeSummary> summaries, SummaryVariable variable) {
    Distribution dist;
    std::map<double, std::size_t> counts;
    std::size_t n = 0;
    for (const auto& s : summaries) {
        double v = 0;
        switch (variable) {
            case SummaryVariable::depth: v = static_cast<double>(s.depth); break;
            case SummaryVariable::size: v = static_cast<double>(s.size); break;
            case SummaryVariable::width: v = static_cast<double>(s.width); break;
            case SummaryVariable::virality:
                if (!s.virality) {
                    ++dist.excluded;
                    continue;
                }
                v = *s.virality;
                break;
        }
        ++counts[v];
        ++n;
    }
    if (n == 0) throw EmptyInput("distribution of an empty sample");
    std::size_t running = 0;
    for (const auto& [value, count] : counts) {
        running += count;
        dist.points.push_back({value, static_cast<double>(running) / static_cast<double>(n)});
    }
    dist.points.back().cumulative = 1.0;
    return dist;
}

namespace {

struct Observation {
    std::optional<double> x;
    std::optional<double> y;
};

BinnedSummary summarize_bins(std::span<const Observation> observations, const BinSpec& bins) {
    if (observations.empty()) throw EmptyInput("binned summary of an empty root set");
    BinnedSummary out;
    out.variable = bins.variable();
    out.total = observations.size();
    std::vector<std::vector<double>> responses(bins.bin_count());
    for (const auto& o : observations) {
        if (!o.x || !o.y) {
            ++out.excluded_undefined;
            continue;
        }
        auto b = bins.bin_of(*o.x);
        if (!b) {
            ++out.excluded_out_of_range;
            continue;
        }
        responses[*b].push_back(*o.y);
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t b = 0; b < bins.bin_count(); ++b) {
        BinStats s{bins.edges()[b], bins.edges()[b + 1], responses[b].size(), nan, nan, nan, nan};
        if (!responses[b].empty()) {
            std::sort(responses[b].begin(), responses[b].end());
            s.median = stats::quantile_sorted(responses[b], 0.5);
            s.quartile_1 = stats::quantile_sorted(responses[b], 0.25);
            s.quartile_3 = stats::quantile_sorted(responses[b], 0.75);
            s.mean = stats::mean(responses[b]);
        }
        out.bins.push_back(s);
    }
    return out;
}

void require_variable(const BinSpec& bins, std::initializer_list<BinVariable> allowed) {
    for (auto v : allowed) {
        if (bins.variable() == v) return;
    }
    throw std::invalid_argument("bins over " + to_string(bins.variable()) + " do not fit this analysis");
}

}  // namespace

BinnedSummary relevance_vs_citations(std::span<const RootRecord> records, RelevanceMode mode, const BinSpec& bins) {
    require_variable(bins, {BinVariable::citation_count});
    std::vector<Observation> obs;
    obs.reserve(records.size());
    for (const auto& r : records) {
        const double x = static_cast<double>(r.direct_citations);
        if (mode == RelevanceMode::total) {
            obs.push_back({x, r.first.total});
        } else {
            obs.push_back({x, r.first.average()});
        }
    }
    return summarize_bins(obs, bins);
}

BinnedSummary citations_vs_structure(std::span<const RootRecord> records, const BinSpec& bins) {
    require_variable(bins, {BinVariable::depth, BinVariable::virality});
    std::vector<Observation> obs;
    obs.reserve(records.size());
    for (const auto& r : records) {
        const double y = static_cast<double>(r.direct_citations);
        if (bins.variable() == BinVariable::depth) {
            obs.push_back({static_cast<double>(r.summary.depth), y});
        } else {
            obs.push_back({r.summary.virality, y});
        }
    }
    return summarize_bins(obs, bins);
}

BinnedSummary citations_vs_generation_relevance(std::span<const RootRecord> records, std::size_t generation,
                                                const BinSpec& bins) {
    require_variable(bins, {BinVariable::relevance});
    if (generation < 1 || generation > 3) throw GenerationOutOfRange("generation must be 1, 2 or 3");
    std::vector<Observation> obs;
    obs.reserve(records.size());
    for (const auto& r : records) {
        obs.push_back({r.generation_relevance[generation - 1], static_cast<double>(r.direct_citations)});
    }
    return summarize_bins(obs, bins);
}

}  // namespace citecascade
