#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "crs/extract.hpp"
#include "crs/index.hpp"
#include "crs/recommend.hpp"

namespace crs {

struct SessionState {
    std::string session_id;  // 128-bit random token, hex
    std::string display_name;
    SkillSet owned_skills;   // resume skills + completed-course skills
    std::set<std::string> completed_courses;
    std::optional<ResumeDoc> resume;
    SkillSet resume_skills;
    std::optional<std::string> target_job_id;
    std::int64_t created_at = 0;  // unix seconds
};

enum class RecommendMode { hybrid, gap };
std::optional<RecommendMode> parse_recommend_mode(std::string_view s);

struct RecommendationResponse {
    RecommendMode mode = RecommendMode::hybrid;
    std::vector<Recommendation> recommendations;
    std::optional<SkillGap> gap;  // present whenever a target job is set
    bool cold_start = false;
};

struct JobGroup {
    std::optional<std::size_t> cluster;  // nullopt: postings without a cluster
    std::vector<std::string> label;
    std::vector<const JobRecord*> jobs;
};

enum class ExtractMethod { tfidf, rake, textrank };
std::optional<ExtractMethod> parse_extract_method(std::string_view s);

struct ExtractResult {
    ExtractMethod method = ExtractMethod::tfidf;
    std::vector<std::pair<std::string, double>> keywords;   // tfidf / rake
    std::vector<std::pair<std::size_t, double>> sentences;  // textrank
    std::vector<std::string> sentence_text;                 // tokens per sentence, joined
    SkillSet skills;
};

// Read-mostly engine state derived from a snapshot.
struct LoadedIndex {
    std::shared_ptr<const IndexSnapshot> snapshot;
    TextPipeline pipeline;
    SkillMatcher matcher;
    std::map<std::string, std::size_t> course_pos;
    std::map<std::string, std::size_t> job_pos;

    explicit LoadedIndex(std::shared_ptr<const IndexSnapshot> s);
    const CourseRecord* course(const std::string& id) const;
    const JobRecord* job(const std::string& id) const;
};

// Sessions plus the current index. Mutations are serialised; reads take a
// shared lock and see the latest consistent state. When a log path is given,
// every mutation is appended to it and replayed on construction.
class Service {
public:
    explicit Service(std::shared_ptr<const IndexSnapshot> snapshot,
                     std::optional<std::filesystem::path> session_log = std::nullopt);

    void swap_index(std::shared_ptr<const IndexSnapshot> snapshot);
    std::shared_ptr<const LoadedIndex> index() const;

    std::string create_session(const std::string& display_name);
    SkillSet submit_resume(const std::string& session_id, std::string text);
    SkillSet set_completed_courses(const std::string& session_id, const std::vector<std::string>& course_ids);
    SkillGap set_target_job(const std::string& session_id, const std::string& job_id);

    SessionState session(const std::string& session_id) const;
    std::size_t session_count() const;

    RecommendationResponse recommendations(const std::string& session_id, RecommendMode mode,
                                           std::size_t limit) const;

    std::vector<JobGroup> jobs_by_cluster(std::optional<std::size_t> cluster, const std::string& query) const;
    ExtractResult extract(const std::string& text, ExtractMethod method, std::size_t top) const;

private:
    SkillSet recompute_owned(const LoadedIndex& idx, const SessionState& s) const;
    void append_log(const std::string& line);
    void replay(const std::filesystem::path& path);

    // Mutation bodies; callers hold the unique lock.
    std::string do_create(const std::string& id, const std::string& display_name, std::int64_t created_at);
    SkillSet do_resume(SessionState& s, ResumeDoc doc);
    SkillSet do_courses(SessionState& s, const std::vector<std::string>& course_ids);
    SkillGap do_target(SessionState& s, const std::string& job_id);
    SessionState& find_session(const std::string& id);
    const SessionState& find_session(const std::string& id) const;

    mutable std::mutex index_mu_;
    std::shared_ptr<const LoadedIndex> index_;

    mutable std::shared_mutex sessions_mu_;
    std::map<std::string, SessionState> sessions_;
    std::optional<std::filesystem::path> log_path_;
    bool replaying_ = false;
};

std::string new_session_token();

}  // namespace crs
