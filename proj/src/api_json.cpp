#include "crs/api_json.hpp"

#include <algorithm>

namespace crs::api {

namespace {

std::string_view mode_name(RecommendMode m) { return m == RecommendMode::gap ? "gap" : "hybrid"; }

std::string_view method_name(ExtractMethod m) {
    switch (m) {
        case ExtractMethod::rake: return "rake";
        case ExtractMethod::textrank: return "textrank";
        case ExtractMethod::tfidf: break;
    }
    return "tfidf";
}

}  // namespace

json skills_json(const SkillSet& skills, const LoadedIndex& idx) {
    json names = json::object();
    const auto& taxonomy = idx.snapshot->taxonomy;
    for (const auto& id : skills.skills) {
        auto it = std::find_if(taxonomy.begin(), taxonomy.end(), [&](const SkillEntry& e) { return e.skill_id == id; });
        names[id] = it != taxonomy.end() ? it->display_name : id;
    }
    return json{{"skills", skills.skills}, {"display_names", std::move(names)}};
}

json gap_json(const SkillGap& gap) {
    return json{{"required", gap.required.skills}, {"owned", gap.owned.skills}, {"missing", gap.missing.skills}};
}

json recommendations_json(const RecommendationResponse& resp, const LoadedIndex& idx) {
    json recs = json::array();
    for (const auto& r : resp.recommendations) {
        const auto* course = idx.course(r.course_id);
        recs.push_back({{"course_id", r.course_id},
                        {"name", course ? course->name : std::string()},
                        {"final_score", r.final_score},
                        {"content_score", r.content_score},
                        {"collab_score", r.collab_score},
                        {"gap_coverage", r.gap_coverage}});
    }
    json j{{"mode", mode_name(resp.mode)}, {"cold_start", resp.cold_start}, {"recommendations", std::move(recs)}};
    if (resp.gap) j["gap"] = gap_json(*resp.gap);
    return j;
}

json courses_json(const LoadedIndex& idx) {
    json arr = json::array();
    const auto& snap = *idx.snapshot;
    for (std::size_t i = 0; i < snap.courses.size(); ++i) {
        const auto& c = snap.courses[i];
        arr.push_back({{"course_id", c.course_id},
                       {"name", c.name},
                       {"level", to_string(c.level)},
                       {"description", c.description},
                       {"learning_outcomes", c.learning_outcomes},
                       {"skills", snap.items[i].skills.skills}});
    }
    return json{{"courses", std::move(arr)}};
}

json job_groups_json(const std::vector<JobGroup>& groups) {
    json arr = json::array();
    for (const auto& g : groups) {
        json jobs = json::array();
        for (const auto* j : g.jobs) {
            jobs.push_back({{"job_id", j->job_id}, {"title", j->title}, {"source", to_string(j->source)},
                            {"description", j->description}});
        }
        arr.push_back({{"cluster", g.cluster ? json(*g.cluster) : json(nullptr)},
                       {"label", g.label},
                       {"jobs", std::move(jobs)}});
    }
    return json{{"clusters", std::move(arr)}};
}

json extract_json(const ExtractResult& r, const LoadedIndex& idx) {
    json j{{"method", method_name(r.method)}, {"skills", skills_json(r.skills, idx)["skills"]}};
    if (r.method == ExtractMethod::textrank) {
        json sentences = json::array();
        for (const auto& [i, score] : r.sentences) {
            sentences.push_back({{"index", i}, {"score", score}, {"text", i < r.sentence_text.size() ? r.sentence_text[i] : ""}});
        }
        j["sentences"] = std::move(sentences);
    } else {
        json kws = json::array();
        for (const auto& [term, w] : r.keywords) kws.push_back({{"term", term}, {"score", w}});
        j["keywords"] = std::move(kws);
    }
    return j;
}

json error_json(std::string_view code, std::string_view message) {
    return json{{"error", code}, {"message", message}};
}

}  // namespace crs::api
