#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crs/recommend.hpp"

namespace crs {

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Duplicates in `recommended` count once.
PrecisionRecall precision_recall_f1(const std::vector<std::string>& recommended,
                                    const std::set<std::string>& relevant);

struct EvalSplit {
    InteractionMatrix training;
    std::map<std::string, std::set<std::string>> held_out;
};

// Holds out each user's last interaction (file order); users with a single
// interaction keep it for training and get an empty held-out set.
EvalSplit leave_last_out(const std::vector<Interaction>& records, const std::set<std::string>& course_ids,
                         double max_mark = kDefaultMaxMark);

// Given a user and the number of results wanted, returns ranked course ids.
using RecommenderFn = std::function<std::vector<std::string>(const std::string& user_id, std::size_t top_n)>;

struct LatencyStats {
    std::size_t samples = 0;
    double p50_ms = 0.0;
    double p95_ms = 0.0;
    double max_ms = 0.0;
};

struct UserMetrics {
    std::string user_id;
    PrecisionRecall metrics;
};

struct MetricsReport {
    double precision = 0.0;  // macro average over evaluated users
    double recall = 0.0;     // macro average over evaluated users
    double f1 = 0.0;         // harmonic mean of the two averages
    std::size_t users_evaluated = 0;
    std::size_t users_skipped = 0;  // empty held-out set
    std::size_t top_n = 0;
    std::vector<UserMetrics> per_user;
    std::optional<LatencyStats> latency;
};

MetricsReport evaluate_recommender(const EvalSplit& split, const RecommenderFn& engine, std::size_t top_n);

// Engine over an item catalogue: profiles built from each user's training
// history, ranked by hybrid_recommend with neighbours from the training matrix.
RecommenderFn make_hybrid_engine(const EvalSplit& split, const std::vector<ItemProfile>& items,
                                 std::size_t knn_k = kDefaultKnn, double alpha = kDefaultAlpha);

// Times `fn` `repetitions` times after one untimed warm-up call.
LatencyStats measure_latency(const std::function<void()>& fn, std::size_t repetitions);

// Nearest-rank percentile of samples (q in [0, 1]).
double percentile(std::vector<double> samples, double q);

std::string report_json(const MetricsReport& report);
std::string report_table(const MetricsReport& report);

}  // namespace crs
