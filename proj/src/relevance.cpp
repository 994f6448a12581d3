#include "citecascade/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "citecascade/errors.hpp"
#include "citecascade/stats.hpp"
#include "parallel.hpp"

namespace citecascade {

namespace {

// Relevances of `layer` to `root`, sorted ascending so that sums do not depend
// on traversal order. Returns the number of skipped pairs.
std::size_t collect_relevances(const CodeTable& codes, NodeIndex root, std::span<const NodeIndex> layer,
                               std::vector<double>& values) {
    values.clear();
    std::size_t skipped = 0;
    for (NodeIndex v : layer) {
        if (auto r = codes.relevance(root, v)) {
            values.push_back(*r);
        } else {
            ++skipped;
        }
    }
    std::sort(values.begin(), values.end());
    return skipped;
}

double sum_of(const std::vector<double>& values) {
    double sum = 0;
    for (double v : values) sum += v;
    return sum;
}

}  // namespace

std::string code_level(std::string_view code, int level) {
    if (level < 1) throw std::invalid_argument("code level must be at least 1");
    std::size_t pos = 0;
    for (int seg = 0; seg < level; ++seg) {
        if (pos > code.size()) throw MalformedCode("code '" + std::string(code) + "' has fewer than " +
                                                   std::to_string(level) + " segments");
        auto dot = code.find('.', pos);
        if (dot == std::string_view::npos) dot = code.size();
        if (dot == pos) throw MalformedCode("code '" + std::string(code) + "' has an empty segment");
        pos = dot + 1;
    }
    return std::string(code.substr(0, pos - 1));
}

std::vector<std::string> truncate_codes(std::span<const std::string> codes, int level) {
    std::vector<std::string> out;
    out.reserve(codes.size());
    for (const auto& code : codes) {
        try {
            out.push_back(code_level(code, level));
        } catch (const MalformedCode&) {
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

template <class T>
std::optional<double> jaccard_sorted(std::span<const T> a, std::span<const T> b) {
    if (a.empty() || b.empty()) return std::nullopt;
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

}  // namespace

std::optional<double> pair_relevance(const Publication& a, const Publication& b, int level) {
    const auto ta = truncate_codes(a.codes, level);
    const auto tb = truncate_codes(b.codes, level);
    return jaccard_sorted<std::string>(ta, tb);
}

CodeTable::CodeTable(const PublicationTable& publications, int level) : level_(level) {
    if (level < 1) throw std::invalid_argument("code level must be at least 1");
    std::unordered_map<std::string, std::uint32_t> intern;
    offsets_.reserve(publications.size() + 1);
    offsets_.push_back(0);
    std::vector<std::uint32_t> row;
    for (const auto& pub : publications) {
        row.clear();
        for (const auto& code : truncate_codes(pub.codes, level)) {
            auto [it, inserted] = intern.emplace(code, static_cast<std::uint32_t>(intern.size()));
            row.push_back(it->second);
        }
        std::sort(row.begin(), row.end());
        ids_.insert(ids_.end(), row.begin(), row.end());
        offsets_.push_back(ids_.size());
    }
    distinct_ = intern.size();
}

std::optional<double> CodeTable::relevance(NodeIndex a, NodeIndex b) const {
    return jaccard_sorted<std::uint32_t>(codes(a), codes(b));
}

RelevanceStats layer_relevance(const CodeTable& codes, NodeIndex root, std::span<const NodeIndex> layer,
                               std::size_t generation) {
    RelevanceStats s;
    s.generation = generation;
    std::vector<double> values;
    s.n_skipped = collect_relevances(codes, root, layer, values);
    s.n_pairs = values.size();
    if (values.empty()) {
        s.mean = s.median = s.variance = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = sum_of(values) / static_cast<double>(values.size());
    s.median = stats::quantile_sorted(values, 0.5);
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(values.size());
    return s;
}

RelevanceStats generation_relevance(const CodeTable& codes, const Cascade& cascade, std::size_t generation) {
    if (generation < 1 || generation > cascade.depth()) {
        throw GenerationOutOfRange("generation " + std::to_string(generation) + " outside [1, " +
                                   std::to_string(cascade.depth()) + "]");
    }
    return layer_relevance(codes, cascade.root, cascade.layers[generation - 1], generation);
}

RelevanceStats generation_relevance(const CitationGraph& graph, const Cascade& cascade,
                                    std::size_t generation, int level) {
    return generation_relevance(CodeTable(graph.publications(), level), cascade, generation);
}

std::vector<RelevanceStats> generation_profile(const CodeTable& codes, const Cascade& cascade) {
    std::vector<RelevanceStats> out;
    out.reserve(cascade.depth());
    for (std::size_t g = 1; g <= cascade.depth(); ++g) {
        out.push_back(layer_relevance(codes, cascade.root, cascade.layers[g - 1], g));
    }
    return out;
}

RelevanceCurve relevance_curve(const CodeTable& codes, const Cascade& cascade) {
    RelevanceCurve curve;
    curve.root = cascade.root;
    for (const auto& s : generation_profile(codes, cascade)) {
        curve.values.push_back(s.defined() ? std::optional<double>(s.mean) : std::nullopt);
        curve.counts.push_back(s.n_pairs);
    }
    return curve;
}

RelevanceCurve relevance_curve(const CitationGraph& graph, const Cascade& cascade, int level) {
    return relevance_curve(CodeTable(graph.publications(), level), cascade);
}

FirstGeneration first_generation(const CitationGraph& graph, const CodeTable& codes, NodeIndex root) {
    FirstGeneration fg;
    std::vector<double> values;
    fg.n_skipped = collect_relevances(codes, root, graph.citing(root), values);
    fg.n_pairs = values.size();
    fg.total = sum_of(values);
    return fg;
}

double first_generation_total(const CitationGraph& graph, std::string_view root, int level) {
    const NodeIndex v = graph.require(root);
    return first_generation(graph, CodeTable(graph.publications(), level), v).total;
}

OverallCurve overall_relevance_by_generation(const CitationGraph& graph, const CodeTable& codes,
                                             std::span<const NodeIndex> roots, std::size_t max_generation,
                                             const OverallOptions& options) {
    if (roots.empty()) throw EmptyInput("overall relevance needs at least one root");
    struct Partial {
        std::vector<double> sum;
        std::vector<std::size_t> count;
    };
    // Fixed-size blocks merged in block order keep the floating-point result
    // independent of the thread count.
    constexpr std::size_t block = 1024;
    const std::size_t blocks = (roots.size() + block - 1) / block;
    std::vector<Partial> partials(blocks, {std::vector<double>(max_generation, 0.0),
                                           std::vector<std::size_t>(max_generation, 0)});
    const bool pooled = options.aggregation == Aggregation::pooled;

    detail::parallel_chunks(blocks, options.threads, [&](unsigned, std::size_t begin, std::size_t end) {
        CascadeWalker walker(graph);
        std::vector<double> values;
        for (std::size_t b = begin; b < end; ++b) {
            auto& part = partials[b];
            const std::size_t last = std::min(roots.size(), (b + 1) * block);
            for (std::size_t i = b * block; i < last; ++i) {
                const NodeIndex root = roots[i];
                if (!codes.has_codes(root)) continue;
                walker.for_each_layer(root, max_generation, [&](std::size_t g, std::span<const NodeIndex> layer) {
                    collect_relevances(codes, root, layer, values);
                    const std::size_t n = values.size();
                    if (n == 0) return true;
                    const double sum = sum_of(values);
                    if (pooled) {
                        part.sum[g - 1] += sum;
                        part.count[g - 1] += n;
                    } else {
                        part.sum[g - 1] += sum / static_cast<double>(n);
                        part.count[g - 1] += 1;
                    }
                    return true;
                });
            }
        }
    });

    OverallCurve curve;
    curve.values.assign(max_generation, std::nullopt);
    curve.contributors.assign(max_generation, 0);
    std::vector<double> sum(max_generation, 0.0);
    for (const auto& part : partials) {
        for (std::size_t g = 0; g < max_generation; ++g) {
            sum[g] += part.sum[g];
            curve.contributors[g] += part.count[g];
        }
    }
    for (std::size_t g = 0; g < max_generation; ++g) {
        if (curve.contributors[g] > 0) curve.values[g] = sum[g] / static_cast<double>(curve.contributors[g]);
    }
    return curve;
}

}  // namespace citecascade
