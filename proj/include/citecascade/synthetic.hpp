#pragma once

#include <cstddef>
#include <cstdint>

#include "citecascade/graph.hpp"

// Generators for synthetic corpora used in tests, demos and benchmarks.
namespace citecascade::synthetic {

// Code string whose level-2 prefix is unique per `cell` (< 10000): "AA.BB.Lx".
std::string cell_code(std::size_t cell);

/*
  Random temporal DAG: node i has year first_year + i / nodes_per_year and
  every edge joins a lower index (cited) to a higher one (citing), so the
  graph is acyclic and temporally ordered. `edges` is clamped to the number
  of available pairs. Publications carry no codes; ids are "P<i>".
*/
CitationGraph random_temporal_dag(std::size_t nodes, std::size_t edges, std::uint64_t seed,
                                  std::size_t nodes_per_year = 10, int first_year = 1975);

struct TopicalConfig {
    std::size_t nodes = 10000;
    // References per paper (fewer for the earliest papers).
    std::size_t references = 4;
    // Papers may only cite the `window` most recent predecessors.
    std::size_t window = 2000;
    // Topic ring circumference in code cells.
    std::size_t cells = 1000;
    // Consecutive cells covered by a publication's code set.
    std::size_t codes_per_paper = 4;
    // Cells searched on either side of a publication's own cell for references.
    std::size_t reach = 2;
    std::uint64_t seed = 1;
    int first_year = 1975;
    int last_year = 2009;
};

/*
  Corpus with topical locality: each paper sits at a uniform random position
  on a ring of code cells, is coded with the cells starting at its own, and
  cites the recent papers closest to it on the ring. Each citation hop moves
  a short distance along the ring, so relevance to a root decays with
  generation while unrelated papers rarely share codes.
*/
CitationGraph topical_corpus(const TopicalConfig& config);

// Same publications with codes reassigned by a seeded random permutation.
CitationGraph shuffle_codes(const CitationGraph& graph, std::uint64_t seed);

/*
  Large sparse graph for throughput tests: nodes are split into fields of
  `field_size`, and each paper cites earlier papers of its own field within a
  sliding window. Exactly `edges` edges when the fields can hold them.
*/
CitationGraph field_partitioned_graph(std::size_t nodes, std::size_t edges, std::size_t field_size,
                                      std::uint64_t seed, std::size_t window = 64);

}  // namespace citecascade::synthetic
