#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "citecascade/graph.hpp"
#include "citecascade/relevance.hpp"

namespace citecascade {

enum class TemporalRule {
    // Every edge keeps cited.year <= citing.year.
    ordered,
    // A swap is accepted only if each edge slot keeps its (cited year, citing year) pair.
    strict_year_match,
};

struct RewireConfig {
    std::uint64_t seed = 0;
    // Attempted swaps = ceil(swap_factor * edge_count); rejected proposals count.
    double swap_factor = 10.0;
    TemporalRule temporal_rule = TemporalRule::ordered;
};

struct RewireStats {
    std::size_t attempted = 0;
    std::size_t accepted = 0;
};

/*
  Degree- and year-preserving randomization by double edge swaps. Each step
  draws two edges (a->b), (c->d) uniformly with replacement and proposes
  (a->d), (c->b); the proposal is accepted iff it creates no self-loop, no
  duplicate edge, and both new edges satisfy the temporal rule. Node table,
  years and every node's in/out degree are unchanged. Deterministic per seed.

  Throws InsufficientEdges for graphs with fewer than 2 edges and
  std::invalid_argument for a non-positive swap factor.
*/
CitationGraph rewire(const CitationGraph& graph, const RewireConfig& config, RewireStats* stats = nullptr);

bool temporal_rule_holds(const CitationGraph& graph, TemporalRule rule, const Edge& proposed,
                         const Edge& replaced);

struct BaselinePoint {
    // NaN when no realization reached the generation.
    double mean = 0;
    // Population standard deviation across realizations.
    double std = 0;
    std::size_t n = 0;
};

struct BaselineOptions {
    std::size_t realizations = 20;
    Aggregation aggregation = Aggregation::per_root;
    unsigned threads = 0;
};

// Rewires with seed config.seed + k for k in [0, realizations) and summarizes
// overall_relevance_by_generation across realizations. Entry i is generation i + 1.
std::vector<BaselinePoint> baseline_curve(const CitationGraph& graph, const RewireConfig& config,
                                          const CodeTable& codes, std::span<const NodeIndex> roots,
                                          std::size_t max_generation, const BaselineOptions& options = {});

}  // namespace citecascade
