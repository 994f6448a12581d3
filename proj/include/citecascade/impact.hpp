#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citecascade/cascade.hpp"
#include "citecascade/graph.hpp"
#include "citecascade/relevance.hpp"

namespace citecascade {

enum class BinVariable { citation_count, depth, virality, relevance };

std::string to_string(BinVariable variable);

/*
  Half-open bins [edges[i], edges[i+1]) with the last bin closed on the right.
  Edges must be strictly increasing and there must be at least two.
*/
class BinSpec {
public:
    // Throws std::invalid_argument on invalid edges.
    BinSpec(BinVariable variable, std::vector<double> edges);

    BinVariable variable() const noexcept { return variable_; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    std::size_t bin_count() const noexcept { return edges_.size() - 1; }
    // nullopt for values outside [front, back].
    std::optional<std::size_t> bin_of(double value) const;

private:
    BinVariable variable_;
    std::vector<double> edges_;
};

// {0, 1, 2, 4, ...} up to the first power of two >= max_value.
BinSpec citation_count_bins(double max_value);
// `segments` equal-count segments from the empirical quantiles; coinciding
// edges are merged.
BinSpec equal_count_bins(BinVariable variable, std::span<const double> values, std::size_t segments = 7);
// Width-0.1 bins on [0, 1].
BinSpec relevance_bins();

struct BinStats {
    double lo = 0;
    double hi = 0;
    std::size_t count = 0;
    // NaN for an empty bin.
    double median = 0;
    double quartile_1 = 0;
    double quartile_3 = 0;
    double mean = 0;
};

struct BinnedSummary {
    BinVariable variable = BinVariable::citation_count;
    std::vector<BinStats> bins;
    // Roots whose binning or response value is undefined.
    std::size_t excluded_undefined = 0;
    // Roots whose binning value falls outside every bin.
    std::size_t excluded_out_of_range = 0;
    std::size_t total = 0;
};

// Per-root quantities the binned analyses draw on.
struct RootRecord {
    NodeIndex root = 0;
    // Out-degree in knowledge-flow orientation, i.e. first-generation width.
    std::size_t direct_citations = 0;
    CascadeSummary summary;
    FirstGeneration first;
    // Mean relevance of generations 1..3; nullopt when the generation is
    // absent or has no valid pair.
    std::array<std::optional<double>, 3> generation_relevance;
};

std::vector<RootRecord> compute_root_records(const CitationGraph& graph, const CodeTable& codes,
                                             std::span<const NodeIndex> roots, const BatchOptions& options = {});

enum class SummaryVariable { depth, virality, size, width };

struct CdfPoint {
    double value = 0;
    double cumulative = 0;

    friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

struct Distribution {
    std::vector<CdfPoint> points;
    // Summaries without a value (virality of size-1 cascades).
    std::size_t excluded = 0;
};

// Exact empirical CDF: one point per distinct value. Throws EmptyInput when no
// summary has a value.
Distribution distribution_summary(std::span<const CascadeSummary> summaries, SummaryVariable variable);

enum class RelevanceMode { total, average };

// Bins on direct citation count; response is first-generation total or average
// relevance. Zero-citation roots have total 0 and no average.
BinnedSummary relevance_vs_citations(std::span<const RootRecord> records, RelevanceMode mode, const BinSpec& bins);

// Bins on depth or virality; response is direct citation count.
BinnedSummary citations_vs_structure(std::span<const RootRecord> records, const BinSpec& bins);

// Bins on the mean relevance of generation 1, 2 or 3; response is direct citation count.
BinnedSummary citations_vs_generation_relevance(std::span<const RootRecord> records, std::size_t generation,
                                                const BinSpec& bins);

}  // namespace citecascade
