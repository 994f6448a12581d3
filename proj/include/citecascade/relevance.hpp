#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citecascade/cascade.hpp"
#include "citecascade/graph.hpp"

namespace citecascade {

inline constexpr int kDefaultCodeLevel = 2;

// First `level` dot-separated segments of a hierarchical code:
// ("03.67.Lx", 2) -> "03.67". Throws MalformedCode when the code has fewer
// segments and std::invalid_argument when level < 1.
std::string code_level(std::string_view code, int level);

// Truncated code set, sorted and unique. Codes too short for `level` are dropped.
std::vector<std::string> truncate_codes(std::span<const std::string> codes, int level);

// Jaccard similarity of the truncated code sets; nullopt when either set is empty.
std::optional<double> pair_relevance(const Publication& a, const Publication& b,
                                     int level = kDefaultCodeLevel);

/*
  Truncated code sets for every publication, interned to integer ids so that
  pairwise relevance is a merge of two short sorted arrays.
*/
class CodeTable {
public:
    CodeTable(const PublicationTable& publications, int level = kDefaultCodeLevel);

    int level() const noexcept { return level_; }
    std::size_t distinct_codes() const noexcept { return distinct_; }

    std::span<const std::uint32_t> codes(NodeIndex v) const {
        return {ids_.data() + offsets_[v], ids_.data() + offsets_[v + 1]};
    }
    bool has_codes(NodeIndex v) const { return offsets_[v + 1] != offsets_[v]; }

    std::optional<double> relevance(NodeIndex a, NodeIndex b) const;

private:
    int level_;
    std::size_t distinct_ = 0;
    std::vector<std::uint64_t> offsets_;
    std::vector<std::uint32_t> ids_;
};

/*
  Relevance of one generation's nodes to the root. Pairs with an empty code
  set on either side are skipped, not scored. Variance divides by n_pairs.
  mean/median/variance are NaN when n_pairs == 0.
*/
struct RelevanceStats {
    std::size_t generation = 0;
    double mean = 0;
    double median = 0;
    double variance = 0;
    std::size_t n_pairs = 0;
    std::size_t n_skipped = 0;

    bool defined() const noexcept { return n_pairs > 0; }
};

// Statistics over `layer` against `root`; the building block for the
// cascade-level functions below.
RelevanceStats layer_relevance(const CodeTable& codes, NodeIndex root,
                               std::span<const NodeIndex> layer, std::size_t generation);

// Throws GenerationOutOfRange unless 1 <= generation <= cascade.depth().
RelevanceStats generation_relevance(const CodeTable& codes, const Cascade& cascade,
                                    std::size_t generation);
RelevanceStats generation_relevance(const CitationGraph& graph, const Cascade& cascade,
                                    std::size_t generation, int level = kDefaultCodeLevel);

// One RelevanceStats per generation of the cascade.
std::vector<RelevanceStats> generation_profile(const CodeTable& codes, const Cascade& cascade);

struct RelevanceCurve {
    NodeIndex root = 0;
    // Mean relevance per generation; nullopt marks a generation without valid pairs.
    std::vector<std::optional<double>> values;
    std::vector<std::size_t> counts;
};

RelevanceCurve relevance_curve(const CodeTable& codes, const Cascade& cascade);
RelevanceCurve relevance_curve(const CitationGraph& graph, const Cascade& cascade,
                               int level = kDefaultCodeLevel);

struct FirstGeneration {
    // Sum of defined relevances between the root and its direct citations.
    double total = 0;
    std::size_t n_pairs = 0;
    std::size_t n_skipped = 0;

    std::optional<double> average() const {
        if (n_pairs == 0) return std::nullopt;
        return total / static_cast<double>(n_pairs);
    }
};

FirstGeneration first_generation(const CitationGraph& graph, const CodeTable& codes, NodeIndex root);
// Throws UnknownRootError.
double first_generation_total(const CitationGraph& graph, std::string_view root,
                              int level = kDefaultCodeLevel);

enum class Aggregation {
    // Mean of each root's generation mean (unweighted across roots).
    per_root,
    // Mean over all valid pairs of the generation, pooled across roots.
    pooled,
};

struct OverallCurve {
    // Entry i is generation i + 1; nullopt when nothing contributed.
    std::vector<std::optional<double>> values;
    // Contributing roots (per_root) or pairs (pooled) per generation.
    std::vector<std::size_t> contributors;
};

struct OverallOptions {
    Aggregation aggregation = Aggregation::per_root;
    unsigned threads = 0;
};

// Throws EmptyInput for an empty root set.
OverallCurve overall_relevance_by_generation(const CitationGraph& graph, const CodeTable& codes,
                                             std::span<const NodeIndex> roots, std::size_t max_generation,
                                             const OverallOptions& options = {});

}  // namespace citecascade
