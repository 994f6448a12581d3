#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citecascade/graph.hpp"
#include "citecascade/relevance.hpp"

namespace citecascade {

// Zero mean, unit population standard deviation. A constant series maps to
// all zeros. Throws std::invalid_argument for fewer than 2 points.
std::vector<double> z_normalize(std::span<const double> series);

enum class SeriesKind { width, relevance };

// Equal-length per-cascade curves for one depth cohort.
struct SeriesSet {
    std::size_t depth = 0;
    std::vector<std::vector<double>> series;
    std::vector<std::string> ids;
    // Relevance entries filled by interpolation.
    std::size_t imputed_values = 0;
    // Cohort roots dropped because their curve had no defined entry.
    std::size_t excluded = 0;
};

// Linear interpolation between defined neighbours; leading/trailing gaps take
// the nearest defined value. Returns nullopt when no entry is defined.
std::optional<std::vector<double>> impute_missing(std::span<const std::optional<double>> values,
                                                  std::size_t* imputed = nullptr);

struct CohortOptions {
    SeriesKind kind = SeriesKind::width;
    int level = kDefaultCodeLevel;
    unsigned threads = 0;
};

/*
  Every root whose cascade depth equals `depth`, in NodeIndex order. Width
  series are width profiles; relevance series are per-generation mean
  relevance with gaps imputed. Throws EmptyCohort when nothing matches and
  std::invalid_argument for depth < 2.
*/
SeriesSet collect_cohort(const CitationGraph& graph, std::size_t depth, const CohortOptions& options = {});

struct KMeansOptions {
    std::size_t k = 10;
    std::uint64_t seed = 0;
    std::size_t restarts = 10;
    std::size_t max_iter = 300;
    unsigned threads = 0;
};

struct ClusterModel {
    std::size_t k = 0;
    // In z-normalized space.
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignments;
    double inertia = 0;
    std::uint64_t seed = 0;
    std::size_t iterations_run = 0;
    std::size_t best_restart = 0;
    // Clusters of the winning restart that were re-seeded after emptying.
    std::vector<bool> reseeded;
    // Inertia after every assignment step, one trace per restart.
    std::vector<std::vector<double>> inertia_history;
};

/*
  Lloyd's K-means with Euclidean distance on z-normalized series. Each restart
  r seeds its own generator with seed + r and starts from k distinct series;
  the restart with the lowest inertia wins (ties go to the lower index).
  Throws TooFewSeries when k exceeds the number of series.
*/
ClusterModel kmeans(const SeriesSet& set, const KMeansOptions& options);

// Cluster count used when none is given: 5 for cohorts under 1000 series, else 10.
std::size_t default_cluster_count(std::size_t cohort_size);

}  // namespace citecascade
