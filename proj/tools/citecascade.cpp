#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "citecascade/cascade.hpp"
#include "citecascade/curve_cluster.hpp"
#include "citecascade/errors.hpp"
#include "citecascade/graph.hpp"
#include "citecascade/impact.hpp"
#include "citecascade/nullmodel.hpp"
#include "citecascade/output.hpp"
#include "citecascade/relevance.hpp"
#include "citecascade/synthetic.hpp"

using namespace citecascade;
namespace fs = std::filesystem;

namespace {

struct InputOptions {
    std::string metadata;
    std::string edges;
    bool strict = false;
    unsigned threads = 0;
    std::string out;
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("--metadata", in.metadata, "Metadata CSV (id,year,codes)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--edges", in.edges, "Edge CSV (cited_id,citing_id)")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--strict", in.strict, "Fail on the first invalid edge row");
    cmd->add_option("--threads", in.threads, "Worker threads (0 = all cores)");
}

void add_out_option(CLI::App* cmd, InputOptions& in) {
    cmd->add_option("-o,--out", in.out, "Output file (default stdout)");
}

LoadedGraph load(const InputOptions& in) {
    return load_edges(in.edges, load_metadata(in.metadata), in.strict ? LoadMode::strict : LoadMode::lenient);
}

// stdout unless a path is given.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw IoError("cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<NodeIndex> all_nodes(const CitationGraph& g) {
    std::vector<NodeIndex> out(g.node_count());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<NodeIndex>(i);
    return out;
}

// key=value predicates over id, year or any extra metadata column; all must hold.
std::vector<NodeIndex> filter_nodes(const CitationGraph& g, const std::vector<std::string>& filters) {
    std::vector<std::pair<std::string, std::string>> predicates;
    for (const auto& f : filters) {
        const auto eq = f.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("filter must be key=value: " + f);
        std::string key = f.substr(0, eq);
        const auto& names = g.publications().attribute_names();
        if (key != "id" && key != "year" && std::find(names.begin(), names.end(), key) == names.end()) {
            throw std::invalid_argument("unknown filter key: " + key);
        }
        predicates.emplace_back(std::move(key), f.substr(eq + 1));
    }
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const bool keep = std::all_of(predicates.begin(), predicates.end(), [&](const auto& p) {
            if (p.first == "id") return g.id(v) == p.second;
            if (p.first == "year") return std::to_string(g.year(v)) == p.second;
            return g.publications().attribute(v, p.first) == std::optional<std::string_view>(p.second);
        });
        if (keep) out.push_back(v);
    }
    return out;
}

// Bin edges separated by commas, whitespace or newlines; '#' starts a comment.
std::vector<double> read_bin_edges(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::vector<double> edges;
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('#'));
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::string token;
        while (fields >> token) {
            double value = 0;
            const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (ec != std::errc() || end != token.data() + token.size()) {
                throw std::invalid_argument("bad bin edge '" + token + "' in " + path);
            }
            edges.push_back(value);
        }
    }
    return edges;
}

// ---------------------------------------------------------------------------

int run_validate(const InputOptions& in) {
    const auto loaded = load(in);
    Sink sink(in.out);
    sink.stream() << to_json(loaded.report) << '\n';
    std::cerr << loaded.graph.node_count() << " publications, " << loaded.graph.edge_count() << " edges\n";
    return 0;
}

struct CascadeArgs {
    std::vector<std::string> roots;
    bool all_roots = false;
    std::optional<std::size_t> max_depth;
    std::string emit = "summary";
};

int run_cascade(const InputOptions& in, const CascadeArgs& args) {
    const auto loaded = load(in);
    const auto& g = loaded.graph;
    Sink sink(in.out);
    auto& out = sink.stream();
    if (args.emit == "layers") {
        if (args.roots.size() != 1 || args.all_roots) throw std::invalid_argument("--emit layers takes exactly one --root");
        output::write_layers(out, g, build_cascade(g, args.roots.front(), args.max_depth));
        return 0;
    }
    std::vector<std::string> roots = args.roots;
    if (args.all_roots) {
        roots.clear();
        for (const auto& p : g.publications()) roots.push_back(p.id);
    }
    std::size_t failed = 0;
    output::write_summary_header(out);
    batch_cascades(g, roots, {.max_depth = args.max_depth, .threads = in.threads}, [&](const BatchItem& item) {
        if (!item.error.empty()) {
            ++failed;
            std::cerr << item.root << ": " << item.error << '\n';
        }
        output::write_summary_row(out, item);
    });
    return failed == 0 ? 0 : 1;
}

int run_walks(const InputOptions& in, const std::string& root, std::size_t max_depth) {
    const auto loaded = load(in);
    const auto profile = count_walks(loaded.graph, loaded.graph.require(root), max_depth);
    Sink sink(in.out);
    output::write_walks(sink.stream(), profile);
    if (profile.saturated) std::cerr << "warning: walk counts saturated at 2^64-1\n";
    return 0;
}

struct RelevanceArgs {
    std::string root;
    int level = kDefaultCodeLevel;
    std::string emit = "curve";
    std::optional<std::size_t> generation;
    bool overall = false;
    std::size_t max_gen = 10;
    bool pooled = false;
};

int run_relevance(const InputOptions& in, const RelevanceArgs& args) {
    const auto loaded = load(in);
    const auto& g = loaded.graph;
    const CodeTable codes(g.publications(), args.level);
    Sink sink(in.out);
    auto& out = sink.stream();

    if (args.overall) {
        const auto roots = all_nodes(g);
        const auto curve = overall_relevance_by_generation(
            g, codes, roots, args.max_gen,
            {.aggregation = args.pooled ? Aggregation::pooled : Aggregation::per_root, .threads = in.threads});
        output::write_overall_curve(out, curve);
        return 0;
    }
    if (args.root.empty()) throw std::invalid_argument("--root is required unless --overall is given");
    const NodeIndex root = g.require(args.root);
    if (args.emit == "first-gen") {
        output::write_first_generation(out, args.root, g.out_degree(root), first_generation(g, codes, root));
        return 0;
    }
    const auto cascade = build_cascade(g, root);
    if (args.emit == "stats") {
        if (!args.generation) throw std::invalid_argument("--emit stats needs --generation");
        const std::vector<RelevanceStats> one{generation_relevance(codes, cascade, *args.generation)};
        output::write_relevance_stats(out, one);
        return 0;
    }
    output::write_relevance_stats(out, generation_profile(codes, cascade));
    return 0;
}

struct NullModelArgs {
    std::uint64_t seed = 0;
    double swap_factor = 10.0;
    std::size_t realizations = 20;
    std::string temporal_rule = "ordered";
    std::size_t max_gen = 10;
    int level = kDefaultCodeLevel;
    bool pooled = false;
    std::string rewired_edges;
};

int run_nullmodel(const InputOptions& in, const NullModelArgs& args) {
    const auto loaded = load(in);
    const auto& g = loaded.graph;
    const RewireConfig config{
        .seed = args.seed,
        .swap_factor = args.swap_factor,
        .temporal_rule = args.temporal_rule == "strict" ? TemporalRule::strict_year_match : TemporalRule::ordered};

    if (!args.rewired_edges.empty()) {
        RewireStats stats;
        const auto rewired = rewire(g, config, &stats);
        std::ofstream file(args.rewired_edges);
        if (!file) throw IoError("cannot write " + args.rewired_edges);
        write_edges(file, rewired);
        std::cerr << "rewired: " << stats.accepted << " of " << stats.attempted << " swaps accepted\n";
    }
    if (args.realizations == 0) return 0;

    const CodeTable codes(g.publications(), args.level);
    const auto roots = all_nodes(g);
    const auto baseline = baseline_curve(
        g, config, codes, roots, args.max_gen,
        {.realizations = args.realizations,
         .aggregation = args.pooled ? Aggregation::pooled : Aggregation::per_root,
         .threads = in.threads});
    Sink sink(in.out);
    output::write_baseline(sink.stream(), baseline);
    return 0;
}

struct ClusterArgs {
    std::size_t depth = 10;
    std::string kind = "width";
    std::optional<std::size_t> k;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;
    std::size_t max_iter = 300;
    int level = kDefaultCodeLevel;
    std::string out_dir = ".";
};

int run_cluster(const InputOptions& in, const ClusterArgs& args) {
    const auto loaded = load(in);
    const auto set = collect_cohort(
        loaded.graph, args.depth,
        {.kind = args.kind == "relevance" ? SeriesKind::relevance : SeriesKind::width,
         .level = args.level,
         .threads = in.threads});
    const std::size_t k = args.k.value_or(default_cluster_count(set.series.size()));
    const auto model = kmeans(set, {.k = k,
                                    .seed = args.seed,
                                    .restarts = args.restarts,
                                    .max_iter = args.max_iter,
                                    .threads = in.threads});

    fs::create_directories(args.out_dir);
    std::ofstream assignments(fs::path(args.out_dir) / "assignments.csv");
    std::ofstream centroids(fs::path(args.out_dir) / "centroids.csv");
    if (!assignments || !centroids) throw IoError("cannot write to " + args.out_dir);
    output::write_assignments(assignments, set, model);
    output::write_centroids(centroids, model);
    std::cerr << "cohort " << set.series.size() << " series (" << set.excluded << " excluded, "
              << set.imputed_values << " values imputed), k=" << k << ", inertia " << model.inertia
              << ", best restart " << model.best_restart << '\n';
    return 0;
}

struct ReportArgs {
    std::string analysis;
    std::string bins = "default";
    bool figures = false;
    std::vector<std::string> filters;
    std::string mode = "average";
    std::size_t generation = 1;
    int level = kDefaultCodeLevel;
    std::string meta;
};

int run_report(const InputOptions& in, const ReportArgs& args) {
    const auto loaded = load(in);
    const auto& g = loaded.graph;
    const auto roots = filter_nodes(g, args.filters);
    const BatchOptions batch{.threads = in.threads};
    Sink sink(in.out);
    auto& out = sink.stream();

    static const std::map<std::string, SummaryVariable> cdfs{
        {"depth-cdf", SummaryVariable::depth},
        {"virality-cdf", SummaryVariable::virality},
        {"size-cdf", SummaryVariable::size},
    };
    if (const auto it = cdfs.find(args.analysis); it != cdfs.end()) {
        std::vector<std::string> ids;
        for (auto v : roots) ids.push_back(g.id(v));
        std::vector<CascadeSummary> summaries;
        batch_cascades(g, ids, batch, [&](const BatchItem& item) { summaries.push_back(*item.summary); });
        const auto dist = distribution_summary(summaries, it->second);
        if (args.figures) {
            output::write_cdf_long(out, args.analysis, dist);
        } else {
            output::write_cdf(out, dist);
        }
        return 0;
    }

    const CodeTable codes(g.publications(), args.level);
    const auto records = compute_root_records(g, codes, roots, batch);
    auto bins_for = [&](BinVariable variable, const std::function<BinSpec()>& fallback) {
        if (args.bins == "default") return fallback();
        return BinSpec(variable, read_bin_edges(args.bins));
    };
    auto structure_values = [&](BinVariable variable) {
        std::vector<double> values;
        for (const auto& r : records) {
            if (variable == BinVariable::depth) values.push_back(static_cast<double>(r.summary.depth));
            if (variable == BinVariable::virality && r.summary.virality) values.push_back(*r.summary.virality);
        }
        if (values.empty()) throw EmptyInput("no root has a defined " + to_string(variable));
        return values;
    };

    std::optional<BinnedSummary> summary;
    if (args.analysis == "relevance-vs-citations") {
        std::size_t max_citations = 0;
        for (const auto& r : records) max_citations = std::max(max_citations, r.direct_citations);
        const auto bins = bins_for(BinVariable::citation_count,
                                   [&] { return citation_count_bins(static_cast<double>(max_citations)); });
        summary = relevance_vs_citations(records, args.mode == "total" ? RelevanceMode::total : RelevanceMode::average,
                                         bins);
    } else if (args.analysis == "citations-vs-depth" || args.analysis == "citations-vs-virality") {
        const auto variable = args.analysis == "citations-vs-depth" ? BinVariable::depth : BinVariable::virality;
        const auto bins = bins_for(variable, [&] { return equal_count_bins(variable, structure_values(variable)); });
        summary = citations_vs_structure(records, bins);
    } else {
        const auto bins = bins_for(BinVariable::relevance, [] { return relevance_bins(); });
        summary = citations_vs_generation_relevance(records, args.generation, bins);
    }

    if (args.figures) {
        output::write_binned_long(out, args.analysis, *summary);
    } else {
        output::write_binned(out, *summary);
    }
    const std::string meta = output::binned_metadata_json(*summary, args.bins);
    if (args.meta.empty()) {
        std::cerr << meta << '\n';
    } else {
        std::ofstream file(args.meta);
        if (!file) throw IoError("cannot write " + args.meta);
        file << meta << '\n';
    }
    return 0;
}

struct GenerateArgs {
    std::string kind = "topical";
    std::size_t nodes = 10000;
    std::size_t edges = 40000;
    std::uint64_t seed = 1;
    std::string metadata_out;
    std::string edges_out;
};

int run_generate(const GenerateArgs& args) {
    CitationGraph g;
    if (args.kind == "topical") {
        g = synthetic::topical_corpus({.nodes = args.nodes, .seed = args.seed});
    } else if (args.kind == "dag") {
        g = synthetic::random_temporal_dag(args.nodes, args.edges, args.seed);
    } else {
        g = synthetic::field_partitioned_graph(args.nodes, args.edges, 256, args.seed);
    }
    std::ofstream metadata(args.metadata_out), edges(args.edges_out);
    if (!metadata || !edges) throw IoError("cannot write output files");
    write_metadata(metadata, g.publications());
    write_edges(edges, g);
    std::cerr << g.node_count() << " publications, " << g.edge_count() << " edges\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Citation cascade analysis"};
    app.require_subcommand(1);

    InputOptions in;

    auto* validate = app.add_subcommand("validate", "Load the corpus and print the validation report as JSON");
    add_input_options(validate, in);
    add_out_option(validate, in);

    CascadeArgs cascade_args;
    auto* cascade = app.add_subcommand("cascade", "Cascade layers or structural summaries");
    add_input_options(cascade, in);
    add_out_option(cascade, in);
    auto* root_opt = cascade->add_option("--root", cascade_args.roots, "Root publication id (repeatable)");
    cascade->add_flag("--all-roots", cascade_args.all_roots, "Summarize every publication")->excludes(root_opt);
    cascade->add_option("--max-depth", cascade_args.max_depth, "Stop after this many generations");
    cascade->add_option("--emit", cascade_args.emit, "layers or summary")
        ->check(CLI::IsMember({"layers", "summary"}));

    std::string walks_root;
    std::size_t walks_depth = 6;
    auto* walks = app.add_subcommand("walks", "Count distinct citation walks per generation");
    add_input_options(walks, in);
    add_out_option(walks, in);
    walks->add_option("--root", walks_root, "Root publication id")->required();
    walks->add_option("--max-depth", walks_depth, "Longest walk length")->check(CLI::Range(1, 15));

    RelevanceArgs relevance_args;
    auto* relevance = app.add_subcommand("relevance", "Topic relevance of cascade generations to their root");
    add_input_options(relevance, in);
    add_out_option(relevance, in);
    relevance->add_option("--root", relevance_args.root, "Root publication id");
    relevance->add_option("--level", relevance_args.level, "Code truncation level")->check(CLI::Range(1, 3));
    relevance->add_option("--emit", relevance_args.emit, "curve, stats or first-gen")
        ->check(CLI::IsMember({"curve", "stats", "first-gen"}));
    relevance->add_option("--generation", relevance_args.generation, "Generation for --emit stats");
    relevance->add_flag("--overall", relevance_args.overall, "Average over every root in the corpus");
    relevance->add_option("--max-gen", relevance_args.max_gen, "Generations in the overall curve");
    relevance->add_flag("--pooled", relevance_args.pooled, "Pool pairs across roots instead of averaging root means");

    NullModelArgs null_args;
    auto* nullmodel = app.add_subcommand("nullmodel", "Rewired baseline for the overall relevance curve");
    add_input_options(nullmodel, in);
    add_out_option(nullmodel, in);
    nullmodel->add_option("--seed", null_args.seed, "Seed of the first realization");
    nullmodel->add_option("--swap-factor", null_args.swap_factor, "Attempted swaps per edge");
    nullmodel->add_option("--realizations", null_args.realizations, "Rewired graphs to average");
    nullmodel->add_option("--temporal-rule", null_args.temporal_rule, "ordered or strict")
        ->check(CLI::IsMember({"ordered", "strict"}));
    nullmodel->add_option("--max-gen", null_args.max_gen, "Generations in the baseline curve");
    nullmodel->add_option("--level", null_args.level, "Code truncation level")->check(CLI::Range(1, 3));
    nullmodel->add_flag("--pooled", null_args.pooled, "Pooled aggregation");
    nullmodel->add_option("--rewired-edges", null_args.rewired_edges, "Write the first realization's edges here");

    ClusterArgs cluster_args;
    auto* cluster = app.add_subcommand("cluster", "K-means over width or relevance curves of one depth cohort");
    add_input_options(cluster, in);
    cluster->add_option("--depth", cluster_args.depth, "Cohort depth")->check(CLI::PositiveNumber);
    cluster->add_option("--kind", cluster_args.kind, "width or relevance")
        ->check(CLI::IsMember({"width", "relevance"}));
    cluster->add_option("--k", cluster_args.k, "Cluster count (default 5 below 1000 series, else 10)");
    cluster->add_option("--seed", cluster_args.seed, "Seed of the first restart");
    cluster->add_option("--restarts", cluster_args.restarts, "Independent restarts");
    cluster->add_option("--max-iter", cluster_args.max_iter, "Iterations per restart");
    cluster->add_option("--level", cluster_args.level, "Code truncation level")->check(CLI::Range(1, 3));
    cluster->add_option("--out-dir", cluster_args.out_dir, "Directory for assignments.csv and centroids.csv");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "Distributions and binned impact tables");
    add_input_options(report, in);
    add_out_option(report, in);
    report->add_option("--analysis", report_args.analysis, "Table to produce")
        ->required()
        ->check(CLI::IsMember({"depth-cdf", "virality-cdf", "size-cdf", "relevance-vs-citations",
                               "citations-vs-depth", "citations-vs-virality", "citations-vs-genrel"}));
    report->add_option("--bins", report_args.bins, "Bin edge file or 'default'");
    report->add_flag("--figures", report_args.figures, "Long-format table for plotting");
    report->add_option("--filter", report_args.filters, "Keep roots with metadata key=value (repeatable)");
    report->add_option("--mode", report_args.mode, "First-generation relevance: total or average")
        ->check(CLI::IsMember({"total", "average"}));
    report->add_option("--generation", report_args.generation, "Generation for citations-vs-genrel")
        ->check(CLI::Range(1, 3));
    report->add_option("--level", report_args.level, "Code truncation level")->check(CLI::Range(1, 3));
    report->add_option("--meta", report_args.meta, "Write exclusion counts and bin source as JSON here");

    GenerateArgs generate_args;
    auto* generate = app.add_subcommand("generate", "Write a synthetic corpus");
    generate->add_option("--kind", generate_args.kind, "topical, dag or fields")
        ->check(CLI::IsMember({"topical", "dag", "fields"}));
    generate->add_option("--nodes", generate_args.nodes, "Publications");
    generate->add_option("--edge-count", generate_args.edges, "Citations (dag and fields)");
    generate->add_option("--seed", generate_args.seed, "Generator seed");
    generate->add_option("--metadata", generate_args.metadata_out, "Metadata CSV to write")->required();
    generate->add_option("--edges", generate_args.edges_out, "Edge CSV to write")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return run_validate(in);
        if (cascade->parsed()) {
            if (cascade_args.roots.empty() && !cascade_args.all_roots) {
                throw std::invalid_argument("give --root or --all-roots");
            }
            return run_cascade(in, cascade_args);
        }
        if (walks->parsed()) return run_walks(in, walks_root, walks_depth);
        if (relevance->parsed()) return run_relevance(in, relevance_args);
        if (nullmodel->parsed()) return run_nullmodel(in, null_args);
        if (cluster->parsed()) return run_cluster(in, cluster_args);
        if (report->parsed()) return run_report(in, report_args);
        if (generate->parsed()) return run_generate(generate_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
