#include "crs/evalkit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <sstream>

#include "codec.hpp"
#include "crs/error.hpp"

namespace crs {

PrecisionRecall precision_recall_f1(const std::vector<std::string>& recommended,
                                    const std::set<std::string>& relevant) {
    std::set<std::string> rec(recommended.begin(), recommended.end());
    std::size_t hits = 0;
    for (const auto& r : rec) hits += relevant.count(r);
    PrecisionRecall out;
    if (!rec.empty()) out.precision = static_cast<double>(hits) / static_cast<double>(rec.size());
    if (!relevant.empty()) out.recall = static_cast<double>(hits) / static_cast<double>(relevant.size());
    if (out.precision + out.recall > 0.0) {
        out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
    }
    return out;
}

EvalSplit leave_last_out(const std::vector<Interaction>& records, const std::set<std::string>& course_ids,
                         double max_mark) {
    std::map<std::string, std::size_t> last;
    std::map<std::string, std::size_t> count;
    for (std::size_t i = 0; i < records.size(); ++i) {
        last[records[i].user_id] = i;
        ++count[records[i].user_id];
    }
    std::vector<Interaction> training;
    EvalSplit split;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (count[r.user_id] > 1 && last[r.user_id] == i) {
            split.held_out[r.user_id].insert(r.course_id);
        } else {
            training.push_back(r);
        }
    }
    split.training = InteractionMatrix::from_interactions(training, course_ids, max_mark);
    for (const auto& [user, n] : count) {
        split.held_out.try_emplace(user);
        // A course held out must not leak through an earlier record of the same pair.
        for (const auto& c : split.held_out[user]) {
            if (split.training.get(user, c) > 0.0) split.training.set(user, c, 0.0);
        }
    }
    return split;
}

MetricsReport evaluate_recommender(const EvalSplit& split, const RecommenderFn& engine, std::size_t top_n) {
    MetricsReport report;
    report.top_n = top_n;
    double sum_p = 0.0, sum_r = 0.0;
    for (const auto& [user, relevant] : split.held_out) {
        if (relevant.empty()) {
            ++report.users_skipped;
            continue;
        }
        auto recs = engine(user, top_n);
        if (recs.size() > top_n) recs.resize(top_n);
        auto m = precision_recall_f1(recs, relevant);
        sum_p += m.precision;
        sum_r += m.recall;
        report.per_user.push_back({user, m});
    }
    report.users_evaluated = report.per_user.size();
    if (report.users_evaluated > 0) {
        report.precision = sum_p / static_cast<double>(report.users_evaluated);
        report.recall = sum_r / static_cast<double>(report.users_evaluated);
        if (report.precision + report.recall > 0.0) {
            report.f1 = 2.0 * report.precision * report.recall / (report.precision + report.recall);
        }
    }
    return report;
}

RecommenderFn make_hybrid_engine(const EvalSplit& split, const std::vector<ItemProfile>& items,
                                 std::size_t knn_k, double alpha) {
    auto knn = std::make_shared<NeighborMap>(item_similarity_knn(split.training, knn_k));
    std::map<std::string, const ItemProfile*> by_id;
    for (const auto& item : items) by_id[item.course_id] = &item;

    return [&split, &items, knn, by_id, alpha](const std::string& user_id, std::size_t top_n) {
        UserProfile user;
        user.user_id = user_id;
        WeightedTermVector history;
        if (const auto* row = split.training.row(user_id)) {
            for (const auto& [course, v] : *row) {
                user.completed_courses.insert(course);
                auto it = by_id.find(course);
                if (it == by_id.end()) continue;
                for (const auto& [t, w] : it->second->vector.entries) history.entries[t] += w;
            }
        }
        user.vector = history.normalized();
        HybridOptions options;
        options.alpha = alpha;
        options.limit = top_n;
        auto recs = hybrid_recommend(user, items, split.training, *knn, options);
        std::vector<std::string> ids;
        ids.reserve(recs.size());
        for (const auto& r : recs) ids.push_back(r.course_id);
        return ids;
    };
}

double percentile(std::vector<double> samples, double q) {
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end());
    auto rank = static_cast<std::size_t>(std::ceil(std::clamp(q, 0.0, 1.0) * static_cast<double>(samples.size())));
    return samples[std::max<std::size_t>(rank, 1) - 1];
}

LatencyStats measure_latency(const std::function<void()>& fn, std::size_t repetitions) {
    if (repetitions == 0) throw Error(ErrorCode::invalid_argument, "latency measurement needs at least one repetition");
    using clock = std::chrono::steady_clock;
    fn();  // warm-up
    std::vector<double> ms;
    ms.reserve(repetitions);
    for (std::size_t i = 0; i < repetitions; ++i) {
        auto t0 = clock::now();
        fn();
        auto t1 = clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    LatencyStats stats;
    stats.samples = ms.size();
    stats.p50_ms = percentile(ms, 0.50);
    stats.p95_ms = percentile(ms, 0.95);
    stats.max_ms = *std::max_element(ms.begin(), ms.end());
    return stats;
}

std::string report_json(const MetricsReport& report) {
    json j{{"precision", report.precision},
           {"recall", report.recall},
           {"f1", report.f1},
           {"top_n", report.top_n},
           {"users_evaluated", report.users_evaluated},
           {"users_skipped", report.users_skipped}};
    json users = json::array();
    for (const auto& u : report.per_user) {
        users.push_back({{"user_id", u.user_id},
                         {"precision", u.metrics.precision},
                         {"recall", u.metrics.recall},
                         {"f1", u.metrics.f1}});
    }
    j["per_user"] = std::move(users);
    if (report.latency) {
        j["latency_ms"] = {{"samples", report.latency->samples},
                           {"p50", report.latency->p50_ms},
                           {"p95", report.latency->p95_ms},
                           {"max", report.latency->max_ms}};
    }
    return j.dump(2);
}

std::string report_table(const MetricsReport& report) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    out << "metric        value\n";
    out << "precision@" << std::left << std::setw(3) << report.top_n << " " << report.precision << "\n";
    out << "recall@" << std::setw(6) << report.top_n << " " << report.recall << "\n";
    out << "f1            " << report.f1 << "\n";
    out << "users         " << report.users_evaluated << " evaluated, " << report.users_skipped << " skipped\n";
    if (report.latency) {
        out << std::setprecision(3);
        out << "latency p50   " << report.latency->p50_ms << " ms\n";
        out << "latency p95   " << report.latency->p95_ms << " ms\n";
        out << "latency max   " << report.latency->max_ms << " ms\n";
    }
    return out.str();
}

}  // namespace crs
