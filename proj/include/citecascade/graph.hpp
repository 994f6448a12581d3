#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citecascade {

// Dense internal node handle. External ids are opaque strings.
using NodeIndex = std::uint32_t;

struct Publication {
    std::string id;
    int year = 0;
    // Classification codes, sorted and unique. May be empty.
    std::vector<std::string> codes;
    // Extra metadata columns, parallel to PublicationTable::attribute_names().
    std::vector<std::string> attributes;

    friend bool operator==(const Publication&, const Publication&) = default;
};

/*
  Immutable node table. The position of a publication in the table is its
  NodeIndex everywhere else in the library.
*/
class PublicationTable {
public:
    PublicationTable() = default;

    // Throws DuplicateIdError on a repeated id and std::invalid_argument on an
    // empty id or an attribute vector that does not match `attribute_names`.
    explicit PublicationTable(std::vector<Publication> publications,
                              std::vector<std::string> attribute_names = {});

    std::size_t size() const noexcept { return publications_.size(); }
    bool empty() const noexcept { return publications_.empty(); }

    const Publication& operator[](NodeIndex v) const { return publications_[v]; }
    std::optional<NodeIndex> find(std::string_view id) const;

    const std::vector<std::string>& attribute_names() const noexcept { return attribute_names_; }
    std::optional<std::string_view> attribute(NodeIndex v, std::string_view name) const;

    auto begin() const noexcept { return publications_.begin(); }
    auto end() const noexcept { return publications_.end(); }

    friend bool operator==(const PublicationTable& a, const PublicationTable& b) {
        return a.publications_ == b.publications_ && a.attribute_names_ == b.attribute_names_;
    }

private:
    std::vector<Publication> publications_;
    std::vector<std::string> attribute_names_;
    std::unordered_map<std::string, NodeIndex> index_;
};

// A citation in knowledge-flow orientation: the cited work feeds the citing one.
struct Edge {
    NodeIndex cited;
    NodeIndex citing;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/*
  Citation graph stored as two CSR adjacencies: forward (cited -> citing, the
  direction cascades are traversed) and its exact transpose. Neighbour lists
  are sorted by NodeIndex. The publication table is shared, so graphs derived
  from one another (e.g. rewired copies) do not duplicate metadata.
*/
class CitationGraph {
public:
    CitationGraph();

    // `edges` must not contain self-loops, duplicates, or out-of-range nodes;
    // violations throw std::invalid_argument.
    CitationGraph(std::shared_ptr<const PublicationTable> publications, std::span<const Edge> edges);

    std::size_t node_count() const noexcept { return publications_->size(); }
    std::size_t edge_count() const noexcept { return forward_targets_.size(); }

    const PublicationTable& publications() const noexcept { return *publications_; }
    const std::shared_ptr<const PublicationTable>& shared_publications() const noexcept {
        return publications_;
    }
    const Publication& publication(NodeIndex v) const { return (*publications_)[v]; }
    const std::string& id(NodeIndex v) const { return (*publications_)[v].id; }
    int year(NodeIndex v) const { return (*publications_)[v].year; }

    std::optional<NodeIndex> find(std::string_view id) const { return publications_->find(id); }
    // Throws UnknownRootError.
    NodeIndex require(std::string_view id) const;

    // Works citing v (knowledge flows from v to them).
    std::span<const NodeIndex> citing(NodeIndex v) const {
        return {forward_targets_.data() + forward_offsets_[v],
                forward_targets_.data() + forward_offsets_[v + 1]};
    }
    // Works cited by v.
    std::span<const NodeIndex> cited_by(NodeIndex v) const {
        return {reverse_targets_.data() + reverse_offsets_[v],
                reverse_targets_.data() + reverse_offsets_[v + 1]};
    }

    // Degrees in knowledge-flow orientation: out = times cited, in = references.
    std::size_t out_degree(NodeIndex v) const {
        return forward_offsets_[v + 1] - forward_offsets_[v];
    }
    std::size_t in_degree(NodeIndex v) const {
        return reverse_offsets_[v + 1] - reverse_offsets_[v];
    }

    bool has_edge(NodeIndex cited, NodeIndex citing) const;

    // All edges, sorted by (cited, citing).
    std::vector<Edge> edges() const;

    // Structural equality: same node table contents and the same edge set.
    friend bool operator==(const CitationGraph& a, const CitationGraph& b);

private:
    std::shared_ptr<const PublicationTable> publications_;
    std::vector<std::uint64_t> forward_offsets_;
    std::vector<NodeIndex> forward_targets_;
    std::vector<std::uint64_t> reverse_offsets_;
    std::vector<NodeIndex> reverse_targets_;
};

struct Degree {
    std::size_t in = 0;
    std::size_t out = 0;

    friend bool operator==(const Degree&, const Degree&) = default;
};

// Per-node (in, out) degree in knowledge-flow orientation, indexed by NodeIndex.
std::vector<Degree> degrees(const CitationGraph& graph);

// ---------------------------------------------------------------------------
// Loading
// ---------------------------------------------------------------------------

struct MetadataSchema {
    std::string id_column = "id";
    std::string year_column = "year";
    std::string codes_column = "codes";
    char code_separator = ';';
    int min_year = 1800;
    int max_year = 2100;
};

enum class LoadMode { strict, lenient };

struct ValidationReport {
    std::size_t dangling_edge_count = 0;
    std::size_t self_loop_count = 0;
    std::size_t duplicate_edge_count = 0;
    // Edges where cited.year > citing.year. Retained in lenient mode.
    std::size_t temporal_violation_count = 0;
    // Publications with no classification codes.
    std::size_t missing_metadata_count = 0;

    friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

std::string to_json(const ValidationReport& report);

struct LoadedGraph {
    CitationGraph graph;
    ValidationReport report;
};

// Metadata CSV with a header row; extra columns become publication attributes.
std::shared_ptr<const PublicationTable> read_metadata(std::istream& in,
                                                      const MetadataSchema& schema = {});
std::shared_ptr<const PublicationTable> load_metadata(const std::filesystem::path& path,
                                                      const MetadataSchema& schema = {});

// Edge CSV with header `cited_id,citing_id`.
LoadedGraph read_edges(std::istream& in, std::shared_ptr<const PublicationTable> publications,
                       LoadMode mode);
LoadedGraph load_edges(const std::filesystem::path& path,
                       std::shared_ptr<const PublicationTable> publications, LoadMode mode);

// Writers producing files the loaders accept.
void write_metadata(std::ostream& out, const PublicationTable& publications);
void write_edges(std::ostream& out, const CitationGraph& graph);

}  // namespace citecascade
