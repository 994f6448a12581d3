#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "citecascade/errors.hpp"
#include "citecascade/graph.hpp"
#include "text.hpp"

namespace citecascade {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

std::size_t column_of(const std::vector<std::string_view>& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (detail::trim(header[i]) == name) return i;
    }
    throw ParseError(1, "missing column '" + std::string(name) + "'");
}

}  // namespace

std::shared_ptr<const PublicationTable> read_metadata(std::istream& in, const MetadataSchema& schema) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    const auto header = detail::split(line, ',');
    const std::size_t id_col = column_of(header, schema.id_column);
    const std::size_t year_col = column_of(header, schema.year_column);
    const std::size_t codes_col = column_of(header, schema.codes_column);

    std::vector<std::string> attribute_names;
    std::vector<std::size_t> attribute_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i == id_col || i == year_col || i == codes_col) continue;
        attribute_names.emplace_back(detail::trim(header[i]));
        attribute_cols.push_back(i);
    }

    std::vector<Publication> pubs;
    std::unordered_map<std::string, std::size_t> seen;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line, ',');
        if (fields.size() != header.size()) {
            throw ParseError(row, "expected " + std::to_string(header.size()) + " fields, got " +
                                      std::to_string(fields.size()));
        }
        Publication pub;
        pub.id = std::string(detail::trim(fields[id_col]));
        if (pub.id.empty()) throw ParseError(row, "empty id");
        auto year = detail::parse_integer<int>(fields[year_col]);
        if (!year) throw ParseError(row, "unparseable year '" + std::string(fields[year_col]) + "'");
        if (*year < schema.min_year || *year > schema.max_year) {
            throw ParseError(row, "year " + std::to_string(*year) + " outside [" +
                                      std::to_string(schema.min_year) + ", " +
                                      std::to_string(schema.max_year) + "]");
        }
        pub.year = *year;
        for (auto code : detail::split(fields[codes_col], schema.code_separator)) {
            code = detail::trim(code);
            if (!code.empty()) pub.codes.emplace_back(code);
        }
        for (auto col : attribute_cols) pub.attributes.emplace_back(detail::trim(fields[col]));
        if (!seen.emplace(pub.id, row).second) throw DuplicateIdError(pub.id);
        pubs.push_back(std::move(pub));
    }
    if (pubs.size() > std::numeric_limits<NodeIndex>::max()) {
        throw ParseError(row, "too many publications");
    }
    return std::make_shared<const PublicationTable>(std::move(pubs), std::move(attribute_names));
}

std::shared_ptr<const PublicationTable> load_metadata(const std::filesystem::path& path,
                                                      const MetadataSchema& schema) {
    auto in = open_input(path);
    return read_metadata(in, schema);
}

LoadedGraph read_edges(std::istream& in, std::shared_ptr<const PublicationTable> publications,
                       LoadMode mode) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "missing header");
    const auto header = detail::split(line, ',');
    const std::size_t cited_col = column_of(header, "cited_id");
    const std::size_t citing_col = column_of(header, "citing_id");
    const std::size_t needed = std::max(cited_col, citing_col) + 1;

    struct Row {
        Edge edge;
        std::size_t row;
    };
    std::vector<Row> rows;
    ValidationReport report;

    // First offending row per kind, for strict mode.
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t first_dangling = none, first_self = none, first_temporal = none, first_dup = none;
    std::string dangling_what;

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const auto fields = detail::split(line, ',');
        std::optional<NodeIndex> cited, citing;
        if (fields.size() >= needed) {
            cited = publications->find(detail::trim(fields[cited_col]));
            citing = publications->find(detail::trim(fields[citing_col]));
        }
        if (!cited || !citing) {
            ++report.dangling_edge_count;
            if (first_dangling == none) {
                first_dangling = row;
                dangling_what = "edge references unknown publication: " + line;
            }
            continue;
        }
        if (*cited == *citing) {
            ++report.self_loop_count;
            if (first_self == none) first_self = row;
            continue;
        }
        rows.push_back({{*cited, *citing}, row});
    }

    // Deduplicate keeping the earliest row of each edge.
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.edge < b.edge; });
    std::vector<Edge> edges;
    edges.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].edge == rows[i - 1].edge) {
            ++report.duplicate_edge_count;
            first_dup = std::min(first_dup, rows[i].row);
            continue;
        }
        const Edge& e = rows[i].edge;
        if ((*publications)[e.cited].year > (*publications)[e.citing].year) {
            ++report.temporal_violation_count;
            first_temporal = std::min(first_temporal, rows[i].row);
        }
        edges.push_back(e);
    }

    for (const auto& pub : *publications) {
        if (pub.codes.empty()) ++report.missing_metadata_count;
    }

    if (mode == LoadMode::strict) {
        const std::size_t first = std::min({first_dangling, first_self, first_dup, first_temporal});
        if (first != none) {
            using Kind = EdgeValidationError::Kind;
            if (first == first_dangling) throw EdgeValidationError(Kind::dangling, first, dangling_what);
            if (first == first_self) throw EdgeValidationError(Kind::self_loop, first, "self-loop edge");
            if (first == first_dup) throw EdgeValidationError(Kind::duplicate, first, "duplicate edge");
            throw EdgeValidationError(Kind::temporal, first, "cited publication is younger than citing");
        }
    }

    return {CitationGraph(std::move(publications), edges), report};
}

LoadedGraph load_edges(const std::filesystem::path& path,
                       std::shared_ptr<const PublicationTable> publications, LoadMode mode) {
    auto in = open_input(path);
    return read_edges(in, std::move(publications), mode);
}

std::string to_json(const ValidationReport& report) {
    nlohmann::ordered_json j;
    j["dangling_edge_count"] = report.dangling_edge_count;
    j["self_loop_count"] = report.self_loop_count;
    j["duplicate_edge_count"] = report.duplicate_edge_count;
    j["temporal_violation_count"] = report.temporal_violation_count;
    j["missing_metadata_count"] = report.missing_metadata_count;
    return j.dump(2);
}

void write_metadata(std::ostream& out, const PublicationTable& publications) {
    out << "id,year,codes";
    for (const auto& name : publications.attribute_names()) out << ',' << name;
    out << '\n';
    for (const auto& pub : publications) {
        out << pub.id << ',' << pub.year << ',';
        for (std::size_t i = 0; i < pub.codes.size(); ++i) {
            if (i) out << ';';
            out << pub.codes[i];
        }
        for (const auto& attr : pub.attributes) out << ',' << attr;
        out << '\n';
    }
}

void write_edges(std::ostream& out, const CitationGraph& graph) {
    out << "cited_id,citing_id\n";
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
        for (NodeIndex w : graph.citing(v)) out << graph.id(v) << ',' << graph.id(w) << '\n';
    }
}

}  // namespace citecascade
