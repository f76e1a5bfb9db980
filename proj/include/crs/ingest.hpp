#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crs {

enum class CourseLevel { undergraduate, postgraduate };
enum class JobSource { linkedin, seek, indeed, other };

std::string_view to_string(CourseLevel level);
std::string_view to_string(JobSource source);
std::optional<CourseLevel> parse_course_level(std::string_view s);
// Unrecognised sources map to JobSource::other.
JobSource parse_job_source(std::string_view s);

struct CourseRecord {
    std::string course_id;
    std::string name;
    std::string description;
    std::string learning_outcomes;
    CourseLevel level = CourseLevel::undergraduate;

    bool operator==(const CourseRecord&) const = default;
};

struct JobRecord {
    std::string job_id;
    std::string title;
    JobSource source = JobSource::other;
    std::string description;  // verbatim, may contain HTML

    bool operator==(const JobRecord&) const = default;
};

struct ResumeDoc {
    std::string resume_id;
    std::string raw_text;

    bool operator==(const ResumeDoc&) const = default;
};

struct SkillEntry {
    std::string skill_id;
    std::string display_name;
    std::vector<std::string> aliases;

    bool operator==(const SkillEntry&) const = default;
};

// Canonical skills with a case-insensitive index over skill ids, display
// names and aliases. Construction throws on an alias claimed by two skills.
class SkillTaxonomy {
public:
    SkillTaxonomy() = default;
    explicit SkillTaxonomy(std::vector<SkillEntry> entries);

    const std::vector<SkillEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    // std::nullopt is the miss result; never throws.
    std::optional<std::string> lookup(std::string_view alias) const;
    const SkillEntry* find(std::string_view skill_id) const;

    bool operator==(const SkillTaxonomy& other) const { return entries_ == other.entries_; }

private:
    std::vector<SkillEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::string> alias_index_;
};

inline constexpr std::size_t kMaxResumeBytes = 5u * 1024u * 1024u;

std::vector<CourseRecord> load_courses(const std::filesystem::path& path);
std::vector<JobRecord> load_jobs(const std::filesystem::path& path);
SkillTaxonomy load_taxonomy(const std::filesystem::path& path);

// Parsers over in-memory JSONL text; `origin` names the source in errors.
std::vector<CourseRecord> parse_courses(std::string_view text, std::string_view origin = "<memory>");
std::vector<JobRecord> parse_jobs(std::string_view text, std::string_view origin = "<memory>");
SkillTaxonomy parse_taxonomy(std::string_view text, std::string_view origin = "<memory>");

std::string to_jsonl(const std::vector<CourseRecord>& courses);
std::string to_jsonl(const std::vector<JobRecord>& jobs);
std::string to_jsonl(const SkillTaxonomy& taxonomy);

ResumeDoc ingest_resume_text(std::string raw);

// Reads a whole file, stripping a leading UTF-8 BOM.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace crs
