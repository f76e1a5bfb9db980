#include "crs/vectorspace.hpp"

#include <algorithm>
#include <cmath>

#include "crs/error.hpp"

namespace crs {

std::optional<std::size_t> Vocabulary::index_of(std::string_view term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term);
    if (it == terms.end() || *it != term) return std::nullopt;
    return static_cast<std::size_t>(it - terms.begin());
}

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, const StopwordList& stops) {
    if (docs.empty()) throw Error(ErrorCode::empty_input, "vocabulary needs at least one document");
    std::set<std::string> terms;
    for (const auto& d : docs) {
        for (const auto& t : d.tokens) {
            if (!stops.contains(t)) terms.insert(t);
        }
    }
    if (terms.empty()) throw Error(ErrorCode::empty_input, "corpus has no non-stopword terms");
    return Vocabulary{{terms.begin(), terms.end()}};
}

double cosine_similarity(const WeightedTermVector& a, const WeightedTermVector& b) {
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    double dot = 0.0;
    for (const auto& [t, w] : small.entries) {
        auto it = large.entries.find(t);
        if (it != large.entries.end()) dot += w * it->second;
    }
    if (dot == 0.0) return 0.0;
    double denom = a.norm() * b.norm();
    if (denom == 0.0) return 0.0;
    return std::clamp(dot / denom, 0.0, 1.0);
}

std::string course_text(const CourseRecord& course) {
    return course.description + " " + course.learning_outcomes;
}

std::vector<ItemProfile> build_item_profiles(const std::vector<CourseRecord>& courses, const CorpusStats& stats,
                                             const SkillMatcher& matcher, const TextPipeline& pipeline) {
    std::vector<ItemProfile> out;
    out.reserve(courses.size());
    for (const auto& c : courses) {
        auto doc = pipeline.run(c.course_id, course_text(c));
        ItemProfile p;
        p.course_id = c.course_id;
        p.skills = extract_skills(doc, matcher);
        if (!doc.tokens.empty()) p.vector = tfidf_vector(doc, stats, &pipeline.stopwords);
        p.degenerate = p.vector.empty();
        out.push_back(std::move(p));
    }
    return out;
}

UserProfile build_user_profile(std::string user_id, const std::vector<CourseRecord>& completed,
                               const ResumeDoc* resume, const std::vector<ItemProfile>& profiles,
                               const CorpusStats& stats, const SkillMatcher& matcher,
                               const TextPipeline& pipeline) {
    if (completed.empty() && resume == nullptr) {
        throw Error(ErrorCode::precondition, "user profile needs completed courses or a resume");
    }
    UserProfile user;
    user.user_id = std::move(user_id);

    WeightedTermVector history;
    for (const auto& c : completed) {
        auto it = std::find_if(profiles.begin(), profiles.end(),
                               [&](const ItemProfile& p) { return p.course_id == c.course_id; });
        if (it == profiles.end()) {
            throw Error(ErrorCode::not_found, "no item profile for course '" + c.course_id + "'");
        }
        user.completed_courses.insert(c.course_id);
        user.owned_skills.merge(it->skills);
        for (const auto& [t, w] : it->vector.entries) history.entries[t] += w;
    }
    // The mean and the sum share a direction, so normalising the sum suffices.
    WeightedTermVector merged = history.normalized();

    if (resume) {
        auto doc = pipeline.run(resume->resume_id, resume->raw_text);
        user.owned_skills.merge(extract_skills(doc, matcher));
        if (!doc.tokens.empty()) {
            auto rv = tfidf_vector(doc, stats, &pipeline.stopwords).normalized();
            for (const auto& [t, w] : rv.entries) {
                auto& slot = merged.entries[t];
                slot = std::max(slot, w);
            }
            merged = merged.normalized();
        }
    }
    user.vector = std::move(merged);
    return user;
}

}  // namespace crs
