#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "crs/extract.hpp"
#include "crs/ingest.hpp"
#include "crs/textpipe.hpp"

namespace crs {

// Sorted, duplicate-free, stopword-free dimension basis.
struct Vocabulary {
    std::vector<std::string> terms;

    std::optional<std::size_t> index_of(std::string_view term) const;
    bool contains(std::string_view term) const { return index_of(term).has_value(); }
    std::size_t size() const { return terms.size(); }
    bool operator==(const Vocabulary&) const = default;
};

struct ItemProfile {
    std::string course_id;
    WeightedTermVector vector;
    SkillSet skills;
    bool degenerate = false;  // no weighted content survived preprocessing

    bool operator==(const ItemProfile&) const = default;
};

struct UserProfile {
    std::string user_id;
    WeightedTermVector vector;
    SkillSet owned_skills;
    std::set<std::string> completed_courses;
};

Vocabulary build_vocabulary(const std::vector<TokenizedDoc>& docs, const StopwordList& stops);

// sum a[t]*b[t] / (|a| |b|); 0 when either vector has zero norm.
double cosine_similarity(const WeightedTermVector& a, const WeightedTermVector& b);

// Text an item profile is built from: description and learning outcomes.
std::string course_text(const CourseRecord& course);

std::vector<ItemProfile> build_item_profiles(const std::vector<CourseRecord>& courses, const CorpusStats& stats,
                                             const SkillMatcher& matcher, const TextPipeline& pipeline);

// At least one of `completed` / `resume` must be present (throws precondition otherwise).
// Every completed course must have an entry in `profiles`.
UserProfile build_user_profile(std::string user_id, const std::vector<CourseRecord>& completed,
                               const ResumeDoc* resume, const std::vector<ItemProfile>& profiles,
                               const CorpusStats& stats, const SkillMatcher& matcher,
                               const TextPipeline& pipeline);

}  // namespace crs
