#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crs/extract.hpp"

namespace crs {

// Spherical k-means over unit-normalised term vectors; distance is 1 - cosine.
struct ClusterModel {
    std::size_t k = 0;
    std::vector<WeightedTermVector> centroids;        // unit norm
    std::map<std::string, std::size_t> assignments;   // id -> cluster in [0, k)
    double inertia = 0.0;                             // sum of (1 - cos(x, centroid(x)))
    std::vector<double> inertia_trace;                // objective after each Lloyd iteration

    std::vector<std::size_t> cluster_sizes() const;
    bool operator==(const ClusterModel&) const = default;
};

inline constexpr std::size_t kDefaultClusterCount = 8;

// k-means++ seeding from `seed`, then Lloyd iterations until assignments are
// stable or max_iter is reached. Empty clusters take the point farthest from
// its own centroid. Throws invalid_argument for k == 0, k > n or a zero vector.
ClusterModel kmeans_fit(const std::map<std::string, WeightedTermVector>& vectors, std::size_t k,
                        std::uint64_t seed, std::size_t max_iter = 100);

// Index of the most similar centroid, lowest index on ties. Throws on a zero vector.
std::size_t kmeans_assign(const WeightedTermVector& v, const ClusterModel& model);

// Empty string when the model has exactly k centroids, no empty cluster and
// assigns every id in `ids` (and nothing else) once; otherwise a description.
std::string check_cluster_axioms(const ClusterModel& model, const std::vector<std::string>& ids);

}  // namespace crs
