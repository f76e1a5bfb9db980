#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crs/extract.hpp"
#include "crs/ingest.hpp"
#include "crs/textpipe.hpp"
#include "crs/vectorspace.hpp"

namespace crs {

struct Interaction {
    std::string user_id;
    std::string course_id;
    std::optional<double> grade;  // raw mark; absent means completion without a grade
};

inline constexpr double kDefaultMaxMark = 100.0;

// interactions.jsonl: {"user_id": str, "course_id": str, "grade": number|null}
std::vector<Interaction> parse_interactions(std::string_view text, std::string_view origin = "<memory>");
std::vector<Interaction> load_interactions(const std::filesystem::path& path);
std::string to_jsonl(const std::vector<Interaction>& interactions);

// Sparse user x course matrix with values in [0, 1]; zero means no
// interaction and is never stored. Columns are ordered by course_id.
class InteractionMatrix {
public:
    using Row = std::map<std::string, double>;

    InteractionMatrix() = default;
    // Declares the column set; courses outside it are rejected by set().
    explicit InteractionMatrix(std::set<std::string> course_ids);

    // Grades are divided by max_mark and clamped to [0, 1]; a missing grade
    // counts as 1.0. Later records for the same (user, course) win.
    static InteractionMatrix from_interactions(const std::vector<Interaction>& records,
                                               std::set<std::string> course_ids,
                                               double max_mark = kDefaultMaxMark);

    void add_user(const std::string& user_id);
    void set(const std::string& user_id, const std::string& course_id, double value);
    double get(const std::string& user_id, const std::string& course_id) const;

    bool has_user(const std::string& user_id) const { return rows_.count(user_id) != 0; }
    const Row* row(const std::string& user_id) const;
    const std::map<std::string, Row>& rows() const { return rows_; }
    const std::set<std::string>& courses() const { return courses_; }
    std::vector<std::string> users() const;
    // Column view: course -> (user -> value).
    std::map<std::string, Row> columns() const;

    bool operator==(const InteractionMatrix&) const = default;

private:
    std::set<std::string> courses_;
    std::map<std::string, Row> rows_;
};

struct Neighbor {
    std::string course_id;
    double similarity = 0.0;
    bool operator==(const Neighbor&) const = default;
};

using NeighborMap = std::map<std::string, std::vector<Neighbor>>;

inline constexpr std::size_t kDefaultKnn = 10;
inline constexpr double kDefaultAlpha = 0.5;

// Item-item cosine over interaction columns; each course keeps its top-k
// positive-similarity neighbours (sim desc, course_id asc). Self excluded.
NeighborMap item_similarity_knn(const InteractionMatrix& m, std::size_t k = kDefaultKnn);

using ScoreMap = std::map<std::string, double>;

// Cosine of the user vector against every item not already completed.
ScoreMap content_scores(const UserProfile& user, const std::vector<ItemProfile>& items);

// Weighted neighbour average of the user's interactions for every course the
// user has not interacted with. std::nullopt signals an unknown user (cold start).
std::optional<ScoreMap> collaborative_scores(const std::string& user_id, const InteractionMatrix& m,
                                             const NeighborMap& knn);
ScoreMap collaborative_scores_for_row(const InteractionMatrix::Row& row, const NeighborMap& knn);

struct Recommendation {
    std::string course_id;
    double final_score = 0.0;
    double content_score = 0.0;  // normalised component entering the blend
    double collab_score = 0.0;   // normalised component entering the blend
    std::vector<std::string> gap_coverage;

    bool operator==(const Recommendation&) const = default;
};

// Min-max over the map's values; a constant map becomes all zeros.
ScoreMap min_max_normalize(const ScoreMap& scores);

struct HybridOptions {
    double alpha = kDefaultAlpha;
    std::size_t limit = 10;
    // When set, each recommendation lists which of these skills it covers.
    const std::set<std::string>* missing_skills = nullptr;
};

// Blends min-max normalised content and collaborative scores:
// final = alpha * content + (1 - alpha) * collab. Users without interaction
// history are ranked by content alone.
std::vector<Recommendation> hybrid_recommend(const UserProfile& user, const std::vector<ItemProfile>& items,
                                             const InteractionMatrix& m, const NeighborMap& knn,
                                             const HybridOptions& options = {});

// Variant taking the interaction row directly (sessions that are not in the matrix).
std::vector<Recommendation> hybrid_recommend_with_row(const UserProfile& user,
                                                      const std::vector<ItemProfile>& items,
                                                      const InteractionMatrix::Row* row,
                                                      const NeighborMap& knn, const HybridOptions& options);

struct SkillGap {
    SkillSet required;
    SkillSet owned;
    SkillSet missing;
};

SkillGap skill_gap(const SkillSet& owned, const SkillSet& required);
SkillGap compute_skill_gap(const SkillSet& owned, const JobRecord& job, const SkillMatcher& matcher,
                           const TextPipeline& pipeline);

// Ranks by share of missing skills covered, then cosine to the job vector,
// then course_id. Courses covering nothing are omitted.
std::vector<Recommendation> recommend_for_gap(const SkillGap& gap, const std::vector<ItemProfile>& items,
                                              const WeightedTermVector& job_vector, std::size_t limit,
                                              const std::set<std::string>& exclude = {});

}  // namespace crs
