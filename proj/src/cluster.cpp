#include "crs/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "crs/error.hpp"
#include "crs/vectorspace.hpp"

namespace crs {

namespace {

struct SparsePoint {
    std::vector<std::pair<std::size_t, double>> entries;  // unit norm
};

double dot(const SparsePoint& p, const std::vector<double>& dense) {
    double s = 0.0;
    for (const auto& [i, w] : p.entries) s += w * dense[i];
    return s;
}

// Uniform double in [0, 1) from the raw engine output, so results do not
// depend on the standard library's distribution implementation.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::vector<std::size_t> ClusterModel::cluster_sizes() const {
    std::vector<std::size_t> sizes(k, 0);
    for (const auto& [id, c] : assignments) {
        if (c < k) ++sizes[c];
    }
    return sizes;
}

ClusterModel kmeans_fit(const std::map<std::string, WeightedTermVector>& vectors, std::size_t k,
                        std::uint64_t seed, std::size_t max_iter) {
    const std::size_t n = vectors.size();
    if (k == 0) throw Error(ErrorCode::invalid_argument, "k-means needs k >= 1");
    if (k > n) {
        throw Error(ErrorCode::invalid_argument,
                    "k-means k=" + std::to_string(k) + " exceeds the number of vectors (" + std::to_string(n) + ")");
    }

    // Dense term index over the union of supports.
    std::vector<std::string> terms;
    std::unordered_map<std::string, std::size_t> term_index;
    std::vector<std::string> ids;
    std::vector<SparsePoint> points;
    ids.reserve(n);
    points.reserve(n);
    for (const auto& [id, v] : vectors) {
        double norm = v.norm();
        if (norm == 0.0) throw Error(ErrorCode::invalid_argument, "k-means input '" + id + "' is a zero vector");
        SparsePoint p;
        for (const auto& [t, w] : v.entries) {
            auto [it, inserted] = term_index.emplace(t, terms.size());
            if (inserted) terms.push_back(t);
            p.entries.emplace_back(it->second, w / norm);
        }
        ids.push_back(id);
        points.push_back(std::move(p));
    }
    const std::size_t dim = terms.size();

    auto to_dense = [&](const SparsePoint& p) {
        std::vector<double> d(dim, 0.0);
        for (const auto& [i, w] : p.entries) d[i] = w;
        return d;
    };

    // k-means++ seeding with D(x) = 1 - cos(x, nearest chosen centre).
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> centroids;
    std::vector<bool> chosen(n, false);
    std::size_t first = static_cast<std::size_t>(unit_draw(rng) * static_cast<double>(n));
    first = std::min(first, n - 1);
    chosen[first] = true;
    centroids.push_back(to_dense(points[first]));
    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::max(0.0, 1.0 - dot(points[i], centroids[0]));
    while (centroids.size() < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!chosen[i]) total += nearest[i] * nearest[i];
        }
        std::size_t pick = n;
        if (total > 0.0) {
            double target = unit_draw(rng) * total, acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i] || nearest[i] == 0.0) continue;
                acc += nearest[i] * nearest[i];
                pick = i;
                if (acc > target) break;
            }
        }
        if (pick == n) {
            // Remaining points coincide with chosen centres.
            pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), false) - chosen.begin());
        }
        chosen[pick] = true;
        centroids.push_back(to_dense(points[pick]));
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], std::max(0.0, 1.0 - dot(points[i], centroids.back())));
        }
    }

    ClusterModel model;
    model.k = k;
    std::vector<std::size_t> assign(n, k), previous;
    std::vector<double> sim(n, 0.0);

    for (std::size_t iter = 0; iter < std::max<std::size_t>(max_iter, 1); ++iter) {
        // Assignment step.
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_sim = dot(points[i], centroids[0]);
            for (std::size_t c = 1; c < k; ++c) {
                double s = dot(points[i], centroids[c]);
                if (s > best_sim) {
                    best_sim = s;
                    best = c;
                }
            }
            assign[i] = best;
            sim[i] = best_sim;
        }

        // Empty-cluster repair.
        std::vector<std::size_t> sizes(k, 0);
        for (auto c : assign) ++sizes[c];
        for (std::size_t c = 0; c < k; ++c) {
            if (sizes[c] != 0) continue;
            std::size_t victim = n;
            double worst = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (sizes[assign[i]] < 2) continue;
                double d = 1.0 - sim[i];
                if (d > worst) {
                    worst = d;
                    victim = i;
                }
            }
            --sizes[assign[victim]];
            assign[victim] = c;
            ++sizes[c];
            centroids[c] = to_dense(points[victim]);
            sim[victim] = 1.0;
        }

        // Update step: centroid = normalised sum of members.
        for (auto& c : centroids) std::fill(c.begin(), c.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [t, w] : points[i].entries) centroids[assign[i]][t] += w;
        }
        for (auto& c : centroids) {
            double s = 0.0;
            for (double x : c) s += x * x;
            s = std::sqrt(s);
            for (double& x : c) x /= s;
        }

        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) inertia += 1.0 - dot(points[i], centroids[assign[i]]);
        model.inertia_trace.push_back(inertia);

        if (assign == previous) break;
        previous = assign;
    }

    model.inertia = model.inertia_trace.back();
    for (std::size_t i = 0; i < n; ++i) model.assignments.emplace(ids[i], assign[i]);
    model.centroids.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t t = 0; t < dim; ++t) model.centroids[c].set(terms[t], centroids[c][t]);
    }

    if (auto problem = check_cluster_axioms(model, ids); !problem.empty()) {
        throw std::logic_error("k-means produced an invalid model: " + problem);
    }
    return model;
}

std::size_t kmeans_assign(const WeightedTermVector& v, const ClusterModel& model) {
    if (v.norm() == 0.0) throw Error(ErrorCode::invalid_argument, "cannot assign a zero vector");
    if (model.centroids.empty()) throw Error(ErrorCode::precondition, "cluster model has no centroids");
    std::size_t best = 0;
    double best_sim = cosine_similarity(v, model.centroids[0]);
    for (std::size_t c = 1; c < model.centroids.size(); ++c) {
        double s = cosine_similarity(v, model.centroids[c]);
        if (s > best_sim) {
            best_sim = s;
            best = c;
        }
    }
    return best;
}

std::string check_cluster_axioms(const ClusterModel& model, const std::vector<std::string>& ids) {
    if (model.centroids.size() != model.k) {
        return "expected " + std::to_string(model.k) + " centroids, found " + std::to_string(model.centroids.size());
    }
    if (model.assignments.size() != ids.size()) return "assignment count differs from input size";
    for (const auto& id : ids) {
        auto it = model.assignments.find(id);
        if (it == model.assignments.end()) return "'" + id + "' is unassigned";
        if (it->second >= model.k) return "'" + id + "' assigned outside [0, k)";
    }
    auto sizes = model.cluster_sizes();
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] == 0) return "cluster " + std::to_string(c) + " is empty";
    }
    return {};
}

}  // namespace crs
