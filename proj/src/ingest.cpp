#include "crs/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "codec.hpp"
#include "crs/error.hpp"

namespace crs {

namespace {

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view strip_bom(std::string_view text) {
    if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
        text.remove_prefix(3);
    }
    return text;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char c) { return std::isspace(c) != 0; });
}

// Calls fn(json, "origin:line") for every non-blank line.
template <typename Fn>
void for_each_record(std::string_view text, std::string_view origin, Fn&& fn) {
    text = strip_bom(text);
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (is_blank(line)) continue;

        std::string where = std::string(origin) + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::malformed, where + ": invalid JSON (" + e.what() + ")");
        }
        if (!j.is_object()) throw Error(ErrorCode::malformed, where + ": record is not an object");
        fn(j, where);
    }
}

const std::string& require_string(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) {
        throw Error(ErrorCode::malformed, where + ": missing or non-string field '" + key + "'");
    }
    return it->get_ref<const std::string&>();
}

}  // namespace

std::string_view to_string(CourseLevel level) {
    return level == CourseLevel::postgraduate ? "postgraduate" : "undergraduate";
}

std::string_view to_string(JobSource source) {
    switch (source) {
        case JobSource::linkedin: return "linkedin";
        case JobSource::seek: return "seek";
        case JobSource::indeed: return "indeed";
        case JobSource::other: break;
    }
    return "other";
}

std::optional<CourseLevel> parse_course_level(std::string_view s) {
    auto l = lower_ascii(s);
    if (l == "undergraduate") return CourseLevel::undergraduate;
    if (l == "postgraduate") return CourseLevel::postgraduate;
    return std::nullopt;
}

JobSource parse_job_source(std::string_view s) {
    auto l = lower_ascii(s);
    if (l == "linkedin") return JobSource::linkedin;
    if (l == "seek") return JobSource::seek;
    if (l == "indeed") return JobSource::indeed;
    return JobSource::other;
}

json to_json(const CourseRecord& c) {
    return json{{"course_id", c.course_id},
                {"name", c.name},
                {"description", c.description},
                {"learning_outcomes", c.learning_outcomes},
                {"level", std::string(to_string(c.level))}};
}

json to_json(const JobRecord& j) {
    return json{{"job_id", j.job_id},
                {"title", j.title},
                {"source", std::string(to_string(j.source))},
                {"description", j.description}};
}

json to_json(const SkillEntry& e) {
    return json{{"skill_id", e.skill_id}, {"display_name", e.display_name}, {"aliases", e.aliases}};
}

CourseRecord course_from_json(const json& j, const std::string& where) {
    CourseRecord c;
    c.course_id = require_string(j, "course_id", where);
    c.name = require_string(j, "name", where);
    c.description = require_string(j, "description", where);
    c.learning_outcomes = require_string(j, "learning_outcomes", where);
    auto level = parse_course_level(require_string(j, "level", where));
    if (!level) throw Error(ErrorCode::malformed, where + ": unknown course level");
    c.level = *level;
    if (c.course_id.empty()) throw Error(ErrorCode::malformed, where + ": empty course_id");
    if (is_blank(c.description) && is_blank(c.learning_outcomes)) {
        throw Error(ErrorCode::malformed,
                    where + ": course '" + c.course_id + "' has no description or learning outcomes");
    }
    return c;
}

JobRecord job_from_json(const json& j, const std::string& where) {
    JobRecord r;
    r.job_id = require_string(j, "job_id", where);
    r.title = require_string(j, "title", where);
    r.source = parse_job_source(require_string(j, "source", where));
    r.description = require_string(j, "description", where);
    if (r.job_id.empty()) throw Error(ErrorCode::malformed, where + ": empty job_id");
    if (is_blank(r.description)) {
        throw Error(ErrorCode::malformed, where + ": job '" + r.job_id + "' has an empty description");
    }
    return r;
}

SkillEntry skill_from_json(const json& j, const std::string& where) {
    SkillEntry e;
    e.skill_id = require_string(j, "skill_id", where);
    e.display_name = require_string(j, "display_name", where);
    if (e.skill_id.empty()) throw Error(ErrorCode::malformed, where + ": empty skill_id");
    auto it = j.find("aliases");
    if (it != j.end()) {
        if (!it->is_array()) throw Error(ErrorCode::malformed, where + ": 'aliases' must be an array");
        for (const auto& a : *it) {
            if (!a.is_string()) throw Error(ErrorCode::malformed, where + ": non-string alias");
            e.aliases.push_back(a.get<std::string>());
        }
    }
    return e;
}

SkillTaxonomy::SkillTaxonomy(std::vector<SkillEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (!by_id_.emplace(e.skill_id, i).second) {
            throw Error(ErrorCode::duplicate_id, "duplicate skill_id '" + e.skill_id + "'");
        }
    }
    auto claim = [this](const std::string& surface, const std::string& skill_id) {
        auto key = lower_ascii(surface);
        if (key.empty()) return;
        auto [it, inserted] = alias_index_.emplace(key, skill_id);
        if (!inserted && it->second != skill_id) {
            auto a = std::min(it->second, skill_id);
            auto b = std::max(it->second, skill_id);
            throw Error(ErrorCode::alias_collision,
                        "alias '" + surface + "' is claimed by skills '" + a + "' and '" + b + "'");
        }
    };
    for (const auto& e : entries_) {
        claim(e.skill_id, e.skill_id);
        claim(e.display_name, e.skill_id);
        for (const auto& a : e.aliases) claim(a, e.skill_id);
    }
}

std::optional<std::string> SkillTaxonomy::lookup(std::string_view alias) const {
    auto it = alias_index_.find(lower_ascii(alias));
    if (it == alias_index_.end()) return std::nullopt;
    return it->second;
}

const SkillEntry* SkillTaxonomy::find(std::string_view skill_id) const {
    auto it = by_id_.find(std::string(skill_id));
    return it == by_id_.end() ? nullptr : &entries_[it->second];
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::string(strip_bom(ss.str()));
}

std::vector<CourseRecord> parse_courses(std::string_view text, std::string_view origin) {
    std::vector<CourseRecord> out;
    std::unordered_set<std::string> seen;
    for_each_record(text, origin, [&](const json& j, const std::string& where) {
        auto c = course_from_json(j, where);
        if (!seen.insert(c.course_id).second) {
            throw Error(ErrorCode::duplicate_id, where + ": duplicate course_id '" + c.course_id + "'");
        }
        out.push_back(std::move(c));
    });
    return out;
}

std::vector<JobRecord> parse_jobs(std::string_view text, std::string_view origin) {
    std::vector<JobRecord> out;
    std::unordered_set<std::string> seen;
    for_each_record(text, origin, [&](const json& j, const std::string& where) {
        auto r = job_from_json(j, where);
        if (!seen.insert(r.job_id).second) {
            throw Error(ErrorCode::duplicate_id, where + ": duplicate job_id '" + r.job_id + "'");
        }
        out.push_back(std::move(r));
    });
    return out;
}

SkillTaxonomy parse_taxonomy(std::string_view text, std::string_view origin) {
    std::vector<SkillEntry> entries;
    for_each_record(text, origin, [&](const json& j, const std::string& where) {
        entries.push_back(skill_from_json(j, where));
    });
    return SkillTaxonomy(std::move(entries));
}

std::vector<CourseRecord> load_courses(const std::filesystem::path& path) {
    return parse_courses(read_text_file(path), path.string());
}

std::vector<JobRecord> load_jobs(const std::filesystem::path& path) {
    return parse_jobs(read_text_file(path), path.string());
}

SkillTaxonomy load_taxonomy(const std::filesystem::path& path) {
    return parse_taxonomy(read_text_file(path), path.string());
}

namespace {
template <typename Range>
std::string join_lines(const Range& items) {
    std::string out;
    for (const auto& item : items) {
        out += to_json(item).dump();
        out += '\n';
    }
    return out;
}
}  // namespace

std::string to_jsonl(const std::vector<CourseRecord>& courses) { return join_lines(courses); }
std::string to_jsonl(const std::vector<JobRecord>& jobs) { return join_lines(jobs); }
std::string to_jsonl(const SkillTaxonomy& taxonomy) { return join_lines(taxonomy.entries()); }

ResumeDoc ingest_resume_text(std::string raw) {
    if (raw.size() > kMaxResumeBytes) {
        throw Error(ErrorCode::too_large, "resume exceeds the " + std::to_string(kMaxResumeBytes) + "-byte limit");
    }
    if (is_blank(raw)) throw Error(ErrorCode::empty_input, "resume text is empty");

    thread_local std::mt19937_64 rng{std::random_device{}()};
    static constexpr char kHex[] = "0123456789abcdef";
    std::string id = "resume-";
    auto bits = rng();
    for (int i = 0; i < 16; ++i, bits >>= 4) id += kHex[bits & 0xF];
    return ResumeDoc{std::move(id), std::move(raw)};
}

}  // namespace crs
