#include "citecascade/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "citecascade/errors.hpp"

namespace citecascade {

PublicationTable::PublicationTable(std::vector<Publication> publications,
                                   std::vector<std::string> attribute_names)
    : publications_(std::move(publications)), attribute_names_(std::move(attribute_names)) {
    index_.reserve(publications_.size());
    for (std::size_t i = 0; i < publications_.size(); ++i) {
        auto& pub = publications_[i];
        if (pub.id.empty()) {
            throw std::invalid_argument("publication id must be non-empty");
        }
        if (pub.attributes.size() != attribute_names_.size()) {
            throw std::invalid_argument("attribute count mismatch for " + pub.id);
        }
        std::sort(pub.codes.begin(), pub.codes.end());
        pub.codes.erase(std::unique(pub.codes.begin(), pub.codes.end()), pub.codes.end());
        if (!index_.emplace(pub.id, static_cast<NodeIndex>(i)).second) {
            throw DuplicateIdError(pub.id);
        }
    }
}

std::optional<NodeIndex> PublicationTable::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string_view> PublicationTable::attribute(NodeIndex v, std::string_view name) const {
    auto it = std::find(attribute_names_.begin(), attribute_names_.end(), name);
    if (it == attribute_names_.end()) return std::nullopt;
    return std::string_view(publications_[v].attributes[it - attribute_names_.begin()]);
}

namespace {

// Builds a CSR adjacency keyed by `key(edge)` holding `value(edge)`; edges must
// already be sorted so that each row comes out sorted.
template <class Key, class Value>
void build_csr(std::span<const Edge> edges, std::size_t nodes, Key key, Value value,
               std::vector<std::uint64_t>& offsets, std::vector<NodeIndex>& targets) {
    offsets.assign(nodes + 1, 0);
    for (const auto& e : edges) ++offsets[key(e) + 1];
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    targets.resize(edges.size());
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) targets[cursor[key(e)]++] = value(e);
}

}  // namespace

CitationGraph::CitationGraph()
    : publications_(std::make_shared<const PublicationTable>()),
      forward_offsets_(1, 0),
      reverse_offsets_(1, 0) {}

CitationGraph::CitationGraph(std::shared_ptr<const PublicationTable> publications,
                             std::span<const Edge> edges)
    : publications_(std::move(publications)) {
    if (!publications_) throw std::invalid_argument("null publication table");
    const std::size_t n = publications_->size();

    std::vector<Edge> sorted(edges.begin(), edges.end());
    for (const auto& e : sorted) {
        if (e.cited >= n || e.citing >= n) throw std::invalid_argument("edge endpoint out of range");
        if (e.cited == e.citing) throw std::invalid_argument("self-loop edge");
    }
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("duplicate edge");
    }

    build_csr(
        sorted, n, [](const Edge& e) { return e.cited; }, [](const Edge& e) { return e.citing; },
        forward_offsets_, forward_targets_);

    // Re-sort by (citing, cited) so reverse rows are sorted too.
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return a.citing != b.citing ? a.citing < b.citing : a.cited < b.cited;
    });
    build_csr(
        sorted, n, [](const Edge& e) { return e.citing; }, [](const Edge& e) { return e.cited; },
        reverse_offsets_, reverse_targets_);
}

NodeIndex CitationGraph::require(std::string_view id) const {
    auto v = find(id);
    if (!v) throw UnknownRootError(std::string(id));
    return *v;
}

bool CitationGraph::has_edge(NodeIndex cited, NodeIndex citing) const {
    auto row = this->citing(cited);
    return std::binary_search(row.begin(), row.end(), citing);
}

std::vector<Edge> CitationGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeIndex v = 0; v < node_count(); ++v) {
        for (NodeIndex w : citing(v)) out.push_back({v, w});
    }
    return out;
}

bool operator==(const CitationGraph& a, const CitationGraph& b) {
    if (a.publications_ != b.publications_ && !(*a.publications_ == *b.publications_)) return false;
    return a.forward_offsets_ == b.forward_offsets_ && a.forward_targets_ == b.forward_targets_ &&
           a.reverse_offsets_ == b.reverse_offsets_ && a.reverse_targets_ == b.reverse_targets_;
}

std::vector<Degree> degrees(const CitationGraph& graph) {
    std::vector<Degree> out(graph.node_count());
    for (NodeIndex v = 0; v < graph.node_count(); ++v) {
        out[v] = {graph.in_degree(v), graph.out_degree(v)};
    }
    return out;
}

}  // namespace citecascade
