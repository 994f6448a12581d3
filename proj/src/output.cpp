#include "citecascade/output.hpp"

#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace citecascade::output {

namespace {

// Shortest round-trippable form without locale surprises.
std::string num(double v) {
    if (std::isnan(v)) return "";
    std::string text;
    for (int p = 6; p <= 17; ++p) {
        std::ostringstream s;
        s.precision(p);
        s << v;
        text = s.str();
        double back = 0;
        std::istringstream(text) >> back;
        if (back == v) break;
    }
    return text;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

void write_summary_header(std::ostream& out) { out << "root,depth,width,size,virality\n"; }

void write_summary_row(std::ostream& out, const BatchItem& item) {
    if (!item.summary) return;
    const auto& s = *item.summary;
    out << item.root << ',' << s.depth << ',' << s.width << ',' << s.size << ',' << num(s.virality) << '\n';
}

void write_layers(std::ostream& out, const CitationGraph& graph, const Cascade& cascade) {
    out << "generation,id\n";
    for (std::size_t g = 0; g < cascade.layers.size(); ++g) {
        for (NodeIndex v : cascade.layers[g]) out << g + 1 << ',' << graph.id(v) << '\n';
    }
}

void write_walks(std::ostream& out, const WalkProfile& profile) {
    out << "generation,walks\n";
    for (std::size_t g = 0; g < profile.walk_counts.size(); ++g) {
        out << g + 1 << ',' << profile.walk_counts[g] << '\n';
    }
}

void write_relevance_stats(std::ostream& out, std::span<const RelevanceStats> stats) {
    out << "generation,mean,median,variance,n_pairs,n_skipped\n";
    for (const auto& s : stats) {
        out << s.generation << ',' << num(s.mean) << ',' << num(s.median) << ',' << num(s.variance) << ','
            << s.n_pairs << ',' << s.n_skipped << '\n';
    }
}

void write_first_generation(std::ostream& out, const std::string& root, std::size_t direct_citations,
                            const FirstGeneration& first) {
    out << "root,direct_citations,total,average,n_pairs,n_skipped\n";
    out << root << ',' << direct_citations << ',' << num(first.total) << ',' << num(first.average()) << ','
        << first.n_pairs << ',' << first.n_skipped << '\n';
}

void write_overall_curve(std::ostream& out, const OverallCurve& curve) {
    out << "generation,mean,n\n";
    for (std::size_t g = 0; g < curve.values.size(); ++g) {
        out << g + 1 << ',' << num(curve.values[g]) << ',' << curve.contributors[g] << '\n';
    }
}

void write_baseline(std::ostream& out, std::span<const BaselinePoint> baseline) {
    out << "generation,mean,std,n\n";
    for (std::size_t g = 0; g < baseline.size(); ++g) {
        out << g + 1 << ',' << num(baseline[g].mean) << ',' << num(baseline[g].std) << ',' << baseline[g].n
            << '\n';
    }
}

void write_assignments(std::ostream& out, const SeriesSet& set, const ClusterModel& model) {
    out << "root,cluster\n";
    for (std::size_t i = 0; i < model.assignments.size(); ++i) {
        out << set.ids[i] << ',' << model.assignments[i] << '\n';
    }
}

void write_centroids(std::ostream& out, const ClusterModel& model) {
    out << "cluster";
    const std::size_t dim = model.centroids.empty() ? 0 : model.centroids.front().size();
    for (std::size_t d = 0; d < dim; ++d) out << ",v" << d + 1;
    out << '\n';
    for (std::size_t c = 0; c < model.centroids.size(); ++c) {
        out << c;
        for (double v : model.centroids[c]) out << ',' << num(v);
        out << '\n';
    }
}

void write_cdf(std::ostream& out, const Distribution& dist) {
    out << "value,cumulative\n";
    for (const auto& p : dist.points) out << num(p.value) << ',' << num(p.cumulative) << '\n';
}

void write_binned(std::ostream& out, const BinnedSummary& summary) {
    out << "bin_lo,bin_hi,count,median,quartile_1,quartile_3,mean\n";
    for (const auto& b : summary.bins) {
        out << num(b.lo) << ',' << num(b.hi) << ',' << b.count << ',' << num(b.median) << ','
            << num(b.quartile_1) << ',' << num(b.quartile_3) << ',' << num(b.mean) << '\n';
    }
}

void write_binned_long(std::ostream& out, const std::string& figure, const BinnedSummary& summary) {
    for (const auto& b : summary.bins) {
        const std::string prefix = figure + ',' + num(b.lo) + ',' + num(b.hi) + ',';
        out << prefix << "count," << b.count << '\n';
        out << prefix << "median," << num(b.median) << '\n';
        out << prefix << "quartile_1," << num(b.quartile_1) << '\n';
        out << prefix << "quartile_3," << num(b.quartile_3) << '\n';
        out << prefix << "mean," << num(b.mean) << '\n';
    }
}

void write_cdf_long(std::ostream& out, const std::string& figure, const Distribution& dist) {
    for (const auto& p : dist.points) {
        out << figure << ',' << num(p.value) << ',' << num(p.value) << ",cumulative," << num(p.cumulative)
            << '\n';
    }
}

std::string binned_metadata_json(const BinnedSummary& summary, const std::string& bins_source) {
    nlohmann::ordered_json j;
    j["variable"] = to_string(summary.variable);
    j["bins_source"] = bins_source;
    j["edges"] = [&] {
        std::vector<double> edges;
        for (const auto& b : summary.bins) edges.push_back(b.lo);
        if (!summary.bins.empty()) edges.push_back(summary.bins.back().hi);
        return edges;
    }();
    // Default log-spaced citation bins are a convention, not a measured choice.
    j["assumed_bins"] = bins_source == "default" && summary.variable == BinVariable::citation_count;
    j["total"] = summary.total;
    j["excluded_undefined"] = summary.excluded_undefined;
    j["excluded_out_of_range"] = summary.excluded_out_of_range;
    return j.dump(2);
}

}  // namespace citecascade::output
