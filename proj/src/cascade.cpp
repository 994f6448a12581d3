#include "citecascade/cascade.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "citecascade/errors.hpp"
#include "parallel.hpp"

namespace citecascade {

std::size_t Cascade::size() const noexcept {
    std::size_t n = 1;
    for (const auto& layer : layers) n += layer.size();
    return n;
}

CascadeWalker::CascadeWalker(const CitationGraph& graph)
    : graph_(&graph), mark_(graph.node_count(), 0) {}

void CascadeWalker::for_each_layer(
    NodeIndex root, std::optional<std::size_t> max_depth,
    const std::function<bool(std::size_t, std::span<const NodeIndex>)>& visit) {
    if (root >= graph_->node_count()) throw std::out_of_range("root index out of range");
    if (++epoch_ == 0) {
        std::fill(mark_.begin(), mark_.end(), 0);
        epoch_ = 1;
    }
    mark_[root] = epoch_;
    frontier_.assign(1, root);
    std::size_t generation = 0;
    while (!max_depth || generation < *max_depth) {
        next_.clear();
        for (NodeIndex u : frontier_) {
            for (NodeIndex w : graph_->citing(u)) {
                if (mark_[w] != epoch_) {
                    mark_[w] = epoch_;
                    next_.push_back(w);
                }
            }
        }
        if (next_.empty()) break;
        ++generation;
        if (!visit(generation, next_)) break;
        frontier_.swap(next_);
    }
}

Cascade CascadeWalker::cascade(NodeIndex root, std::optional<std::size_t> max_depth) {
    Cascade c;
    c.root = root;
    for_each_layer(root, max_depth, [&](std::size_t, std::span<const NodeIndex> layer) {
        auto& out = c.layers.emplace_back(layer.begin(), layer.end());
        std::sort(out.begin(), out.end());
        return true;
    });
    return c;
}

CascadeSummary CascadeWalker::summary(NodeIndex root, std::optional<std::size_t> max_depth) {
    CascadeSummary s;
    std::uint64_t distance_sum = 0;
    for_each_layer(root, max_depth, [&](std::size_t generation, std::span<const NodeIndex> layer) {
        s.depth = generation;
        s.width = std::max(s.width, layer.size());
        s.size += layer.size();
        distance_sum += generation * layer.size();
        return true;
    });
    if (s.size > 1) s.virality = static_cast<double>(distance_sum) / static_cast<double>(s.size - 1);
    return s;
}

Cascade build_cascade(const CitationGraph& graph, NodeIndex root, std::optional<std::size_t> max_depth) {
    if (root >= graph.node_count()) throw UnknownRootError(std::to_string(root));
    return CascadeWalker(graph).cascade(root, max_depth);
}

Cascade build_cascade(const CitationGraph& graph, std::string_view root,
                      std::optional<std::size_t> max_depth) {
    return build_cascade(graph, graph.require(root), max_depth);
}

std::vector<std::size_t> width_profile(const Cascade& cascade) {
    std::vector<std::size_t> out;
    out.reserve(cascade.layers.size());
    for (const auto& layer : cascade.layers) out.push_back(layer.size());
    return out;
}

std::size_t cascade_width(const Cascade& cascade) {
    std::size_t w = 0;
    for (const auto& layer : cascade.layers) w = std::max(w, layer.size());
    return w;
}

std::optional<double> structural_virality(const Cascade& cascade) {
    std::uint64_t distance_sum = 0;
    std::uint64_t nodes = 0;
    for (std::size_t i = 0; i < cascade.layers.size(); ++i) {
        distance_sum += (i + 1) * cascade.layers[i].size();
        nodes += cascade.layers[i].size();
    }
    if (nodes == 0) return std::nullopt;
    return static_cast<double>(distance_sum) / static_cast<double>(nodes);
}

CascadeSummary summarize(const Cascade& cascade) {
    return {cascade.depth(), cascade_width(cascade), cascade.size(), structural_virality(cascade)};
}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b, bool& saturated) {
    if (a > std::numeric_limits<std::uint64_t>::max() - b) {
        saturated = true;
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a + b;
}

}  // namespace

WalkProfile count_walks(const CitationGraph& graph, NodeIndex root, std::size_t max_depth,
                        std::size_t cap) {
    if (root >= graph.node_count()) throw UnknownRootError(std::to_string(root));
    if (max_depth == 0) throw std::invalid_argument("max_depth must be at least 1");
    if (max_depth > cap) {
        throw DepthCapExceeded("max_depth " + std::to_string(max_depth) + " exceeds cap " +
                               std::to_string(cap));
    }
    WalkProfile profile;
    profile.root = root;
    profile.max_depth = max_depth;

    // count(N, v) = sum over predecessors u of count(N - 1, u), kept sparse.
    std::vector<std::uint64_t> current(graph.node_count(), 0), next(graph.node_count(), 0);
    std::vector<NodeIndex> active{root}, touched;
    current[root] = 1;
    for (std::size_t n = 1; n <= max_depth; ++n) {
        touched.clear();
        for (NodeIndex u : active) {
            for (NodeIndex w : graph.citing(u)) {
                if (next[w] == 0) touched.push_back(w);
                next[w] = saturating_add(next[w], current[u], profile.saturated);
            }
        }
        if (touched.empty()) break;
        std::uint64_t total = 0;
        for (NodeIndex w : touched) total = saturating_add(total, next[w], profile.saturated);
        profile.walk_counts.push_back(total);
        for (NodeIndex u : active) current[u] = 0;
        active.swap(touched);
        current.swap(next);
    }
    return profile;
}

void batch_cascades(const CitationGraph& graph, std::span<const std::string> roots,
                    const BatchOptions& options, const std::function<void(const BatchItem&)>& sink) {
    const std::size_t block = std::max<std::size_t>(options.block_size, 1);
    const unsigned threads = detail::resolve_threads(options.threads);
    std::vector<CascadeWalker> walkers;
    walkers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) walkers.emplace_back(graph);

    std::vector<BatchItem> results;
    for (std::size_t start = 0; start < roots.size(); start += block) {
        const std::size_t count = std::min(block, roots.size() - start);
        results.assign(count, {});
        detail::parallel_chunks(count, threads, [&](unsigned worker, std::size_t begin, std::size_t end) {
            auto& walker = walkers[worker];
            for (std::size_t i = begin; i < end; ++i) {
                auto& item = results[i];
                item.root = roots[start + i];
                auto v = graph.find(item.root);
                if (!v) {
                    item.error = UnknownRootError(item.root).what();
                    continue;
                }
                if (options.keep_layers) {
                    item.cascade = walker.cascade(*v, options.max_depth);
                    item.summary = summarize(*item.cascade);
                } else {
                    item.summary = walker.summary(*v, options.max_depth);
                }
            }
        });
        for (const auto& item : results) sink(item);
    }
}

std::vector<BatchItem> batch_cascades(const CitationGraph& graph, std::span<const std::string> roots,
                                      const BatchOptions& options) {
    std::vector<BatchItem> out;
    out.reserve(roots.size());
    batch_cascades(graph, roots, options, [&](const BatchItem& item) { out.push_back(item); });
    return out;
}

std::vector<CascadeSummary> summarize_all(const CitationGraph& graph, const BatchOptions& options) {
    std::vector<CascadeSummary> out(graph.node_count());
    const unsigned threads = detail::resolve_threads(options.threads);
    detail::parallel_chunks(out.size(), threads, [&](unsigned, std::size_t begin, std::size_t end) {
        CascadeWalker walker(graph);
        for (std::size_t v = begin; v < end; ++v) {
            out[v] = walker.summary(static_cast<NodeIndex>(v), options.max_depth);
        }
    });
    return out;
}

}  // namespace citecascade
