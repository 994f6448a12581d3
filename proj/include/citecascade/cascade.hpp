#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citecascade/graph.hpp"

namespace citecascade {

/*
  Citation cascade of a root under shortest-path layering: layers[i] holds the
  nodes whose shortest knowledge-flow distance from the root is i + 1, sorted
  by NodeIndex. Every reachable node appears in exactly one layer and the root
  appears in none. Trailing empty layers are never stored.
*/
struct Cascade {
    NodeIndex root = 0;
    std::vector<std::vector<NodeIndex>> layers;

    std::size_t depth() const noexcept { return layers.size(); }
    // Root included.
    std::size_t size() const noexcept;
};

struct CascadeSummary {
    std::size_t depth = 0;
    std::size_t width = 0;
    std::size_t size = 1;
    // Undefined for a cascade of size 1.
    std::optional<double> virality;

    friend bool operator==(const CascadeSummary&, const CascadeSummary&) = default;
};

// Throws UnknownRootError for an id missing from the graph.
Cascade build_cascade(const CitationGraph& graph, NodeIndex root,
                      std::optional<std::size_t> max_depth = std::nullopt);
Cascade build_cascade(const CitationGraph& graph, std::string_view root,
                      std::optional<std::size_t> max_depth = std::nullopt);

// Entry i is the width of generation i + 1.
std::vector<std::size_t> width_profile(const Cascade& cascade);
std::size_t cascade_width(const Cascade& cascade);

// Mean shortest-path distance of non-root nodes from the root; nullopt when
// the cascade is just the root.
std::optional<double> structural_virality(const Cascade& cascade);

CascadeSummary summarize(const Cascade& cascade);

/*
  Reusable BFS workspace for repeated traversals over one graph. Distance
  marks are epoch-stamped so a traversal costs O(cascade) rather than
  O(nodes). Not thread-safe; use one per worker.
*/
class CascadeWalker {
public:
    explicit CascadeWalker(const CitationGraph& graph);

    Cascade cascade(NodeIndex root, std::optional<std::size_t> max_depth = std::nullopt);
    CascadeSummary summary(NodeIndex root, std::optional<std::size_t> max_depth = std::nullopt);

    // Calls visit(generation, layer) for each non-empty generation in order;
    // layers are unsorted. Stops early when visit returns false.
    void for_each_layer(NodeIndex root, std::optional<std::size_t> max_depth,
                        const std::function<bool(std::size_t, std::span<const NodeIndex>)>& visit);

private:
    const CitationGraph* graph_;
    std::vector<std::uint32_t> mark_;
    std::uint32_t epoch_ = 0;
    std::vector<NodeIndex> frontier_;
    std::vector<NodeIndex> next_;
};

// ---------------------------------------------------------------------------
// All-paths multiplicity
// ---------------------------------------------------------------------------

inline constexpr std::size_t kWalkDepthCap = 15;

struct WalkProfile {
    NodeIndex root = 0;
    // Entry i is the number of distinct directed walks of length i + 1 from the
    // root. Trailing zeros are trimmed.
    std::vector<std::uint64_t> walk_counts;
    std::size_t max_depth = 0;
    // Set when some count hit UINT64_MAX and was clamped.
    bool saturated = false;
};

// Throws DepthCapExceeded if max_depth > cap and std::invalid_argument if it is 0.
WalkProfile count_walks(const CitationGraph& graph, NodeIndex root, std::size_t max_depth,
                        std::size_t cap = kWalkDepthCap);

// ---------------------------------------------------------------------------
// Batch
// ---------------------------------------------------------------------------

struct BatchOptions {
    std::optional<std::size_t> max_depth;
    // 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
    // Roots per parallel block; bounds the number of results held in memory.
    std::size_t block_size = 4096;
    bool keep_layers = false;
};

struct BatchItem {
    std::string root;
    std::optional<CascadeSummary> summary;
    // Present only with BatchOptions::keep_layers.
    std::optional<Cascade> cascade;
    // Non-empty when the root could not be processed.
    std::string error;
};

// Streams one item per root, in input order, to `sink`.
void batch_cascades(const CitationGraph& graph, std::span<const std::string> roots,
                    const BatchOptions& options, const std::function<void(const BatchItem&)>& sink);
std::vector<BatchItem> batch_cascades(const CitationGraph& graph, std::span<const std::string> roots,
                                      const BatchOptions& options = {});

// Index-based summaries for every node, in NodeIndex order.
std::vector<CascadeSummary> summarize_all(const CitationGraph& graph, const BatchOptions& options = {});

}  // namespace citecascade
