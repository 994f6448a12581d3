#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "citecascade/cascade.hpp"
#include "citecascade/curve_cluster.hpp"
#include "citecascade/impact.hpp"
#include "citecascade/nullmodel.hpp"
#include "citecascade/relevance.hpp"

// CSV writers for every table the CLI emits. Undefined values (NaN or
// nullopt) are written as empty fields.
namespace citecascade::output {

// root,depth,width,size,virality
void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const BatchItem& item);

// generation,id
void write_layers(std::ostream& out, const CitationGraph& graph, const Cascade& cascade);

// generation,walks
void write_walks(std::ostream& out, const WalkProfile& profile);

// generation,mean,median,variance,n_pairs,n_skipped
void write_relevance_stats(std::ostream& out, std::span<const RelevanceStats> stats);

// root,direct_citations,total,average,n_pairs,n_skipped
void write_first_generation(std::ostream& out, const std::string& root, std::size_t direct_citations,
                            const FirstGeneration& first);

// generation,mean,n
void write_overall_curve(std::ostream& out, const OverallCurve& curve);

// generation,mean,std,n
void write_baseline(std::ostream& out, std::span<const BaselinePoint> baseline);

// root,cluster
void write_assignments(std::ostream& out, const SeriesSet& set, const ClusterModel& model);

// cluster,v1..vD
void write_centroids(std::ostream& out, const ClusterModel& model);

// value,cumulative
void write_cdf(std::ostream& out, const Distribution& dist);

// bin_lo,bin_hi,count,median,quartile_1,quartile_3,mean
void write_binned(std::ostream& out, const BinnedSummary& summary);

// Long format for plotting: figure,x_lo,x_hi,stat,value
void write_binned_long(std::ostream& out, const std::string& figure, const BinnedSummary& summary);
void write_cdf_long(std::ostream& out, const std::string& figure, const Distribution& dist);

// Exclusion counts and bin provenance as a JSON object.
std::string binned_metadata_json(const BinnedSummary& summary, const std::string& bins_source);

}  // namespace citecascade::output
