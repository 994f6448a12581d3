#include "citecascade/curve_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "citecascade/cascade.hpp"
#include "citecascade/errors.hpp"
#include "parallel.hpp"

namespace citecascade {

std::vector<double> z_normalize(std::span<const double> series) {
    if (series.size() < 2) throw std::invalid_argument("z_normalize needs at least 2 points");
    const double n = static_cast<double>(series.size());
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
    double ss = 0;
    for (double v : series) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / n);
    std::vector<double> out(series.size(), 0.0);
    if (sd == 0) return out;
    for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - mean) / sd;
    return out;
}

std::optional<std::vector<double>> impute_missing(std::span<const std::optional<double>> values,
                                                  std::size_t* imputed) {
    std::vector<std::size_t> known;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) known.push_back(i);
    }
    if (known.empty()) return std::nullopt;
    std::vector<double> out(values.size());
    std::size_t filled = 0;
    std::size_t next = 0;  // index into `known` of the first defined entry >= i
    for (std::size_t i = 0; i < values.size(); ++i) {
        while (next < known.size() && known[next] < i) ++next;
        if (values[i]) {
            out[i] = *values[i];
            continue;
        }
        ++filled;
        if (next == 0) {
            out[i] = *values[known.front()];
        } else if (next == known.size()) {
            out[i] = *values[known.back()];
        } else {
            const std::size_t lo = known[next - 1], hi = known[next];
            const double t = static_cast<double>(i - lo) / static_cast<double>(hi - lo);
            out[i] = *values[lo] + t * (*values[hi] - *values[lo]);
        }
    }
    if (imputed) *imputed += filled;
    return out;
}

SeriesSet collect_cohort(const CitationGraph& graph, std::size_t depth, const CohortOptions& options) {
    if (depth < 2) throw std::invalid_argument("cohort depth must be at least 2");
    const std::size_t n = graph.node_count();
    const bool relevance = options.kind == SeriesKind::relevance;
    std::optional<CodeTable> codes;
    if (relevance) codes.emplace(graph.publications(), options.level);

    struct Found {
        NodeIndex root;
        std::vector<std::optional<double>> values;
    };
    const unsigned threads = detail::resolve_threads(options.threads);
    std::vector<std::vector<Found>> per_worker(threads);

    detail::parallel_chunks(n, threads, [&](unsigned worker, std::size_t begin, std::size_t end) {
        CascadeWalker walker(graph);
        std::vector<std::optional<double>> values;
        for (std::size_t i = begin; i < end; ++i) {
            const auto root = static_cast<NodeIndex>(i);
            values.clear();
            std::size_t reached = 0;
            // One generation past the cohort depth tells us whether it is exact.
            walker.for_each_layer(root, depth + 1, [&](std::size_t g, std::span<const NodeIndex> layer) {
                reached = g;
                if (g > depth) return false;
                if (relevance) {
                    const auto s = layer_relevance(*codes, root, layer, g);
                    values.push_back(s.defined() ? std::optional<double>(s.mean) : std::nullopt);
                } else {
                    values.emplace_back(static_cast<double>(layer.size()));
                }
                return true;
            });
            if (reached == depth) per_worker[worker].push_back({root, values});
        }
    });

    SeriesSet set;
    set.depth = depth;
    for (auto& found : per_worker) {
        for (auto& f : found) {
            auto series = impute_missing(f.values, &set.imputed_values);
            if (!series) {
                ++set.excluded;
                continue;
            }
            set.series.push_back(std::move(*series));
            set.ids.push_back(graph.id(f.root));
        }
    }
    if (set.series.empty()) {
        throw EmptyCohort("no cascade has depth " + std::to_string(depth));
    }
    return set;
}

std::size_t default_cluster_count(std::size_t cohort_size) {
    const std::size_t k = cohort_size < 1000 ? 5 : 10;
    return std::max<std::size_t>(1, std::min(k, cohort_size));
}

namespace {

using Matrix = std::vector<std::vector<double>>;

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
}

struct RestartResult {
    Matrix centroids;
    std::vector<std::size_t> assignments;
    std::vector<bool> reseeded;
    std::vector<double> history;
    double inertia = 0;
};

// Nearest centroid per point (ties to the lower index); returns the inertia.
double assign(const Matrix& points, const Matrix& centroids, std::vector<std::size_t>& assignments,
              std::vector<double>& distances) {
    double inertia = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = squared_distance(points[i], centroids[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        assignments[i] = best;
        distances[i] = best_d;
        inertia += best_d;
    }
    return inertia;
}

RestartResult run_restart(const Matrix& points, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = points.size();
    const std::size_t dim = points.front().size();
    std::mt19937_64 rng(seed);

    // k distinct starting series by partial Fisher-Yates.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    RestartResult r;
    for (std::size_t i = 0; i < k; ++i) r.centroids.push_back(points[order[i]]);
    r.reseeded.assign(k, false);
    r.assignments.assign(n, 0);

    std::vector<std::size_t> previous;
    std::vector<double> distances(n);
    std::vector<std::size_t> members(k);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        r.inertia = assign(points, r.centroids, r.assignments, distances);
        r.history.push_back(r.inertia);
        if (r.assignments == previous) break;
        previous = r.assignments;

        for (auto& c : r.centroids) std::fill(c.begin(), c.end(), 0.0);
        std::fill(members.begin(), members.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto& c = r.centroids[r.assignments[i]];
            for (std::size_t d = 0; d < dim; ++d) c[d] += points[i][d];
            ++members[r.assignments[i]];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (members[c] == 0) continue;
            for (auto& v : r.centroids[c]) v /= static_cast<double>(members[c]);
        }
        // Empty clusters take the point farthest from its own centroid.
        for (std::size_t c = 0; c < k; ++c) {
            if (members[c] != 0) continue;
            std::size_t far = n;
            double far_d = -1;
            for (std::size_t i = 0; i < n; ++i) {
                if (members[r.assignments[i]] > 1 && distances[i] > far_d) {
                    far_d = distances[i];
                    far = i;
                }
            }
            if (far == n) continue;
            --members[r.assignments[far]];
            r.assignments[far] = c;
            members[c] = 1;
            distances[far] = 0;
            r.centroids[c] = points[far];
            r.reseeded[c] = true;
        }
    }
    return r;
}

}  // namespace

ClusterModel kmeans(const SeriesSet& set, const KMeansOptions& options) {
    if (options.k < 1) throw std::invalid_argument("k must be at least 1");
    if (options.k > set.series.size()) {
        throw TooFewSeries("k = " + std::to_string(options.k) + " exceeds " +
                           std::to_string(set.series.size()) + " series");
    }
    if (options.restarts < 1 || options.max_iter < 1) {
        throw std::invalid_argument("restarts and max_iter must be at least 1");
    }
    Matrix points;
    points.reserve(set.series.size());
    for (const auto& s : set.series) {
        if (s.size() != set.series.front().size()) throw std::invalid_argument("series lengths differ");
        points.push_back(z_normalize(s));
    }

    std::vector<RestartResult> results(options.restarts);
    detail::parallel_chunks(options.restarts, options.threads, [&](unsigned, std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            results[r] = run_restart(points, options.k, options.seed + r, options.max_iter);
        }
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r) {
        if (results[r].inertia < results[best].inertia) best = r;
    }
    ClusterModel model;
    model.k = options.k;
    model.seed = options.seed;
    model.best_restart = best;
    model.centroids = results[best].centroids;
    model.assignments = results[best].assignments;
    model.inertia = results[best].inertia;
    model.iterations_run = results[best].history.size();
    model.reseeded = results[best].reseeded;
    for (auto& r : results) model.inertia_history.push_back(std::move(r.history));
    return model;
}

}  // namespace citecascade
