#include "citecascade/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace citecascade::synthetic {

std::string cell_code(std::size_t cell) {
    if (cell >= 10000) throw std::out_of_range("cell index must be below 10000");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02zu.%02zu.Lx", cell / 100, cell % 100);
    return buf;
}

namespace {

std::vector<Publication> plain_publications(std::size_t n) {
    std::vector<Publication> pubs(n);
    for (std::size_t i = 0; i < n; ++i) pubs[i].id = "P" + std::to_string(i);
    return pubs;
}

}  // namespace

CitationGraph random_temporal_dag(std::size_t nodes, std::size_t edges, std::uint64_t seed,
                                  std::size_t nodes_per_year, int first_year) {
    if (nodes_per_year == 0) throw std::invalid_argument("nodes_per_year must be positive");
    auto pubs = plain_publications(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        pubs[i].year = first_year + static_cast<int>(i / nodes_per_year);
    }
    const std::size_t pairs = nodes < 2 ? 0 : nodes * (nodes - 1) / 2;
    edges = std::min(edges, pairs);

    std::mt19937_64 rng(seed);
    std::vector<Edge> out;
    if (edges * 2 > pairs) {
        // Dense: shuffle the full pair list.
        for (NodeIndex i = 0; i < nodes; ++i) {
            for (NodeIndex j = i + 1; j < nodes; ++j) out.push_back({i, j});
        }
        std::shuffle(out.begin(), out.end(), rng);
        out.resize(edges);
    } else {
        std::set<std::pair<NodeIndex, NodeIndex>> seen;
        std::uniform_int_distribution<NodeIndex> pick(0, static_cast<NodeIndex>(nodes - 1));
        while (out.size() < edges) {
            NodeIndex a = pick(rng), b = pick(rng);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (seen.insert({a, b}).second) out.push_back({a, b});
        }
    }
    return CitationGraph(std::make_shared<const PublicationTable>(std::move(pubs)), out);
}

CitationGraph topical_corpus(const TopicalConfig& config) {
    if (config.cells == 0 || config.cells > 10000) throw std::invalid_argument("cells must be in [1, 10000]");
    if (config.codes_per_paper == 0 || config.codes_per_paper > config.cells) {
        throw std::invalid_argument("codes_per_paper must be in [1, cells]");
    }
    const std::size_t n = config.nodes;
    const double ring = static_cast<double>(config.cells);
    const auto cells = static_cast<long>(config.cells);
    const long reach = std::min(static_cast<long>(config.reach), (cells - 1) / 2);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> place(0, ring);

    auto ring_distance = [ring](double a, double b) {
        const double d = std::fabs(a - b);
        return std::min(d, ring - d);
    };

    std::vector<double> position(n);
    std::vector<std::vector<NodeIndex>> buckets(config.cells);
    std::vector<Edge> edges;
    auto pubs = plain_publications(n);
    const int span_years = config.last_year - config.first_year + 1;

    std::vector<NodeIndex> candidates;
    for (std::size_t j = 0; j < n; ++j) {
        const auto self = static_cast<NodeIndex>(j);
        position[j] = std::min(place(rng), std::nextafter(ring, 0.0));
        const std::size_t lo = j > config.window ? j - config.window : 0;

        candidates.clear();
        const auto cell = static_cast<long>(position[j]);
        for (long dc = -reach; dc <= reach; ++dc) {
            const auto& bucket = buckets[static_cast<std::size_t>((cell + dc + cells) % cells)];
            for (auto it = bucket.rbegin(); it != bucket.rend() && *it >= lo; ++it) candidates.push_back(*it);
        }
        std::sort(candidates.begin(), candidates.end(), [&](NodeIndex a, NodeIndex b) {
            const double da = ring_distance(position[a], position[j]);
            const double db = ring_distance(position[b], position[j]);
            return da != db ? da < db : a < b;
        });
        const std::size_t refs = std::min(candidates.size(), config.references);
        for (std::size_t k = 0; k < refs; ++k) edges.push_back({candidates[k], self});
        buckets[static_cast<std::size_t>(position[j])].push_back(self);

        auto& pub = pubs[j];
        pub.year = config.first_year + static_cast<int>(j * static_cast<std::size_t>(span_years) / std::max<std::size_t>(n, 1));
        const auto base = static_cast<std::size_t>(position[j]);
        for (std::size_t k = 0; k < config.codes_per_paper; ++k) {
            pub.codes.push_back(cell_code((base + k) % config.cells));
        }
    }
    return CitationGraph(std::make_shared<const PublicationTable>(std::move(pubs)), edges);
}

CitationGraph shuffle_codes(const CitationGraph& graph, std::uint64_t seed) {
    const auto& table = graph.publications();
    std::vector<Publication> pubs(table.begin(), table.end());
    std::vector<std::size_t> order(pubs.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < pubs.size(); ++i) pubs[i].codes = table[static_cast<NodeIndex>(order[i])].codes;
    auto shuffled = std::make_shared<const PublicationTable>(std::move(pubs), table.attribute_names());
    return CitationGraph(shuffled, graph.edges());
}

CitationGraph field_partitioned_graph(std::size_t nodes, std::size_t edges, std::size_t field_size,
                                      std::uint64_t seed, std::size_t window) {
    if (field_size < 2 || window < 1) throw std::invalid_argument("field_size >= 2 and window >= 1 required");
    auto pubs = plain_publications(nodes);
    for (std::size_t g = 0; g < nodes; ++g) {
        pubs[g].year = 1950 + static_cast<int>((g % field_size) * 60 / field_size);
    }

    std::mt19937_64 rng(seed);
    // Sorted reference lists per node, local to the field.
    std::vector<std::vector<NodeIndex>> refs(nodes);
    auto capacity = [&](std::size_t g) { return std::min(g % field_size, window); };

    const double per_node = nodes ? static_cast<double>(edges) / static_cast<double>(nodes) : 0;
    const auto base = static_cast<std::size_t>(per_node);
    std::bernoulli_distribution round_up(per_node - static_cast<double>(base));
    std::size_t total = 0;
    std::vector<NodeIndex> pool;
    for (std::size_t g = 0; g < nodes && total < edges; ++g) {
        const std::size_t cap = capacity(g);
        const std::size_t want = std::min({cap, base + (round_up(rng) ? 1 : 0), edges - total});
        pool.resize(cap);
        for (std::size_t k = 0; k < cap; ++k) pool[k] = static_cast<NodeIndex>(g - cap + k);
        for (std::size_t k = 0; k < want; ++k) {
            std::swap(pool[k], pool[std::uniform_int_distribution<std::size_t>(k, cap - 1)(rng)]);
        }
        refs[g].assign(pool.begin(), pool.begin() + static_cast<long>(want));
        std::sort(refs[g].begin(), refs[g].end());
        total += want;
    }
    // Early-field nodes cannot take a full share; top up elsewhere.
    std::uniform_int_distribution<std::size_t> pick_node(0, nodes ? nodes - 1 : 0);
    std::size_t spare = 0;
    for (std::size_t g = 0; g < nodes; ++g) spare += capacity(g) - refs[g].size();
    if (edges - total > spare) throw std::invalid_argument("fields cannot hold the requested edge count");
    while (total < edges) {
        const std::size_t g = pick_node(rng);
        const std::size_t cap = capacity(g);
        if (refs[g].size() >= cap) continue;
        const auto cited = static_cast<NodeIndex>(g - 1 - std::uniform_int_distribution<std::size_t>(0, cap - 1)(rng));
        auto it = std::lower_bound(refs[g].begin(), refs[g].end(), cited);
        if (it != refs[g].end() && *it == cited) continue;
        refs[g].insert(it, cited);
        ++total;
    }

    std::vector<Edge> out;
    out.reserve(total);
    for (std::size_t g = 0; g < nodes; ++g) {
        for (NodeIndex c : refs[g]) out.push_back({c, static_cast<NodeIndex>(g)});
        std::vector<NodeIndex>().swap(refs[g]);
    }
    return CitationGraph(std::make_shared<const PublicationTable>(std::move(pubs)), out);
}

}  // namespace citecascade::synthetic
