#include "crs/service.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <random>

#include "codec.hpp"
#include "crs/error.hpp"

namespace crs {

std::optional<RecommendMode> parse_recommend_mode(std::string_view s) {
    if (s == "hybrid") return RecommendMode::hybrid;
    if (s == "gap") return RecommendMode::gap;
    return std::nullopt;
}

std::optional<ExtractMethod> parse_extract_method(std::string_view s) {
    if (s == "tfidf") return ExtractMethod::tfidf;
    if (s == "rake") return ExtractMethod::rake;
    if (s == "textrank") return ExtractMethod::textrank;
    return std::nullopt;
}

std::string new_session_token() {
    thread_local std::mt19937_64 rng = [] {
        std::random_device rd;
        std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
        return std::mt19937_64(seq);
    }();
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (int word = 0; word < 2; ++word) {
        auto bits = rng();
        for (int i = 0; i < 16; ++i, bits >>= 4) out += kHex[bits & 0xF];
    }
    return out;
}

LoadedIndex::LoadedIndex(std::shared_ptr<const IndexSnapshot> s)
    : snapshot(std::move(s)), pipeline(pipeline_of(*snapshot)), matcher(taxonomy_of(*snapshot), pipeline.contractions) {
    for (std::size_t i = 0; i < snapshot->courses.size(); ++i) course_pos.emplace(snapshot->courses[i].course_id, i);
    for (std::size_t i = 0; i < snapshot->jobs.size(); ++i) job_pos.emplace(snapshot->jobs[i].job_id, i);
}

const CourseRecord* LoadedIndex::course(const std::string& id) const {
    auto it = course_pos.find(id);
    return it == course_pos.end() ? nullptr : &snapshot->courses[it->second];
}

const JobRecord* LoadedIndex::job(const std::string& id) const {
    auto it = job_pos.find(id);
    return it == job_pos.end() ? nullptr : &snapshot->jobs[it->second];
}

Service::Service(std::shared_ptr<const IndexSnapshot> snapshot, std::optional<std::filesystem::path> session_log)
    : index_(std::make_shared<const LoadedIndex>(std::move(snapshot))), log_path_(std::move(session_log)) {
    if (log_path_ && std::filesystem::exists(*log_path_)) replay(*log_path_);
}

void Service::swap_index(std::shared_ptr<const IndexSnapshot> snapshot) {
    auto loaded = std::make_shared<const LoadedIndex>(std::move(snapshot));
    std::unique_lock sessions(sessions_mu_);
    {
        std::lock_guard lock(index_mu_);
        index_ = loaded;
    }
    // Course skills may differ under the new index.
    for (auto& [id, s] : sessions_) {
        std::erase_if(s.completed_courses, [&](const std::string& c) { return !loaded->course(c); });
        if (s.resume) s.resume_skills = extract_skills(loaded->pipeline.run(s.resume->resume_id, s.resume->raw_text), loaded->matcher);
        s.owned_skills = recompute_owned(*loaded, s);
    }
}

std::shared_ptr<const LoadedIndex> Service::index() const {
    std::lock_guard lock(index_mu_);
    return index_;
}

SessionState& Service::find_session(const std::string& id) {
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::not_found, "unknown session '" + id + "'");
    return it->second;
}

const SessionState& Service::find_session(const std::string& id) const {
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::not_found, "unknown session '" + id + "'");
    return it->second;
}

SkillSet Service::recompute_owned(const LoadedIndex& idx, const SessionState& s) const {
    SkillSet owned = s.resume_skills;
    for (const auto& c : s.completed_courses) {
        auto it = idx.course_pos.find(c);
        if (it != idx.course_pos.end()) owned.merge(idx.snapshot->items[it->second].skills);
    }
    return owned;
}

void Service::append_log(const std::string& line) {
    if (!log_path_ || replaying_) return;
    std::ofstream out(*log_path_, std::ios::app | std::ios::binary);
    if (!out) throw Error(ErrorCode::io, "cannot append to session log '" + log_path_->string() + "'");
    out << line << '\n';
}

std::string Service::do_create(const std::string& id, const std::string& display_name, std::int64_t created_at) {
    SessionState s;
    s.session_id = id;
    s.display_name = display_name;
    s.created_at = created_at;
    sessions_.emplace(id, std::move(s));
    append_log(json{{"op", "create"}, {"session_id", id}, {"display_name", display_name}, {"created_at", created_at}}.dump());
    return id;
}

SkillSet Service::do_resume(SessionState& s, ResumeDoc doc) {
    auto idx = index();
    s.resume_skills = extract_skills(idx->pipeline.run(doc.resume_id, doc.raw_text), idx->matcher);
    append_log(json{{"op", "resume"}, {"session_id", s.session_id}, {"resume_id", doc.resume_id}, {"text", doc.raw_text}}.dump());
    s.resume = std::move(doc);
    s.owned_skills = recompute_owned(*idx, s);
    return s.resume_skills;
}

SkillSet Service::do_courses(SessionState& s, const std::vector<std::string>& course_ids) {
    auto idx = index();
    for (const auto& c : course_ids) {
        if (!idx->course(c)) throw Error(ErrorCode::not_found, "unknown course '" + c + "'");
    }
    s.completed_courses = std::set<std::string>(course_ids.begin(), course_ids.end());
    s.owned_skills = recompute_owned(*idx, s);
    append_log(json{{"op", "courses"}, {"session_id", s.session_id}, {"course_ids", s.completed_courses}}.dump());
    return s.owned_skills;
}

SkillGap Service::do_target(SessionState& s, const std::string& job_id) {
    auto idx = index();
    if (!idx->job(job_id)) throw Error(ErrorCode::not_found, "unknown job '" + job_id + "'");
    s.target_job_id = job_id;
    append_log(json{{"op", "target"}, {"session_id", s.session_id}, {"job_id", job_id}}.dump());
    return skill_gap(s.owned_skills, idx->snapshot->job_skills.at(job_id));
}

std::string Service::create_session(const std::string& display_name) {
    auto now = std::chrono::duration_cast<std::chrono::seconds>(
                   std::chrono::system_clock::now().time_since_epoch()).count();
    std::unique_lock lock(sessions_mu_);
    std::string id;
    do {
        id = new_session_token();
    } while (sessions_.count(id));
    return do_create(id, display_name, now);
}

SkillSet Service::submit_resume(const std::string& session_id, std::string text) {
    std::unique_lock lock(sessions_mu_);
    auto& s = find_session(session_id);
    return do_resume(s, ingest_resume_text(std::move(text)));
}

SkillSet Service::set_completed_courses(const std::string& session_id, const std::vector<std::string>& course_ids) {
    std::unique_lock lock(sessions_mu_);
    return do_courses(find_session(session_id), course_ids);
}

SkillGap Service::set_target_job(const std::string& session_id, const std::string& job_id) {
    std::unique_lock lock(sessions_mu_);
    return do_target(find_session(session_id), job_id);
}

SessionState Service::session(const std::string& session_id) const {
    std::shared_lock lock(sessions_mu_);
    return find_session(session_id);
}

std::size_t Service::session_count() const {
    std::shared_lock lock(sessions_mu_);
    return sessions_.size();
}

void Service::replay(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot read session log '" + path.string() + "'");
    replaying_ = true;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json ev;
        try {
            ev = json::parse(line);
        } catch (const json::exception&) {
            // A crash can leave a torn final line; anything before it is intact.
            break;
        }
        try {
            const auto op = ev.at("op").get<std::string>();
            const auto id = ev.at("session_id").get<std::string>();
            if (op == "create") {
                do_create(id, ev.at("display_name").get<std::string>(), ev.at("created_at").get<std::int64_t>());
            } else if (op == "resume") {
                do_resume(find_session(id), ResumeDoc{ev.at("resume_id").get<std::string>(), ev.at("text").get<std::string>()});
            } else if (op == "courses") {
                std::vector<std::string> ids;
                for (const auto& c : ev.at("course_ids").get<std::vector<std::string>>()) {
                    if (index()->course(c)) ids.push_back(c);
                }
                do_courses(find_session(id), ids);
            } else if (op == "target") {
                auto job = ev.at("job_id").get<std::string>();
                if (index()->job(job)) do_target(find_session(id), job);
            }
        } catch (const std::exception& e) {
            replaying_ = false;
            throw Error(ErrorCode::malformed,
                        path.string() + ":" + std::to_string(line_no) + ": bad session event (" + e.what() + ")");
        }
    }
    replaying_ = false;
}

RecommendationResponse Service::recommendations(const std::string& session_id, RecommendMode mode,
                                                std::size_t limit) const {
    auto idx = index();
    const auto& snap = *idx->snapshot;
    SessionState s = session(session_id);

    RecommendationResponse resp;
    resp.mode = mode;
    if (s.target_job_id) resp.gap = skill_gap(s.owned_skills, snap.job_skills.at(*s.target_job_id));

    if (mode == RecommendMode::gap) {
        if (!s.target_job_id) throw Error(ErrorCode::precondition, "gap mode needs a target job");
        resp.recommendations =
            recommend_for_gap(*resp.gap, snap.items, snap.job_vectors.at(*s.target_job_id), limit, s.completed_courses);
        return resp;
    }

    UserProfile user;
    user.user_id = s.session_id;
    if (!s.completed_courses.empty() || s.resume) {
        std::vector<CourseRecord> completed;
        for (const auto& c : s.completed_courses) completed.push_back(*idx->course(c));
        user = build_user_profile(s.session_id, completed, s.resume ? &*s.resume : nullptr, snap.items, snap.stats,
                                  idx->matcher, idx->pipeline);
    }
    InteractionMatrix::Row row;
    for (const auto& c : s.completed_courses) row[c] = 1.0;
    resp.cold_start = row.empty();

    HybridOptions options;
    options.alpha = snap.config.alpha;
    options.limit = limit;
    if (resp.gap) options.missing_skills = &resp.gap->missing.skills;
    resp.recommendations = hybrid_recommend_with_row(user, snap.items, &row, snap.neighbors, options);
    return resp;
}

std::vector<JobGroup> Service::jobs_by_cluster(std::optional<std::size_t> cluster, const std::string& query) const {
    auto idx = index();
    const auto& snap = *idx->snapshot;
    auto lower = [](std::string s) {
        std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return s;
    };
    const auto q = lower(query);

    std::map<std::optional<std::size_t>, JobGroup> groups;
    for (const auto& job : snap.jobs) {
        if (!q.empty() && lower(job.title).find(q) == std::string::npos &&
            lower(job.description).find(q) == std::string::npos) {
            continue;
        }
        std::optional<std::size_t> c;
        if (snap.clusters) {
            auto it = snap.clusters->assignments.find(job.job_id);
            if (it != snap.clusters->assignments.end()) c = it->second;
        }
        if (cluster && c != cluster) continue;
        auto& g = groups[c];
        g.cluster = c;
        if (c && *c < snap.cluster_labels.size()) g.label = snap.cluster_labels[*c];
        g.jobs.push_back(&job);
    }
    std::vector<JobGroup> out;
    // Clustered groups first in index order, unclustered postings last.
    for (auto& [c, g] : groups) {
        if (c) out.push_back(std::move(g));
    }
    if (auto it = groups.find(std::nullopt); it != groups.end()) out.push_back(std::move(it->second));
    return out;
}

ExtractResult Service::extract(const std::string& text, ExtractMethod method, std::size_t top) const {
    auto idx = index();
    ExtractResult r;
    r.method = method;
    auto doc = idx->pipeline.run("extract", text);
    r.skills = extract_skills(doc, idx->matcher);
    switch (method) {
        case ExtractMethod::tfidf: {
            if (doc.tokens.empty()) break;
            auto v = tfidf_vector(doc, idx->snapshot->stats, &idx->pipeline.stopwords);
            r.keywords.assign(v.entries.begin(), v.entries.end());
            std::stable_sort(r.keywords.begin(), r.keywords.end(),
                             [](const auto& a, const auto& b) { return a.second > b.second; });
            break;
        }
        case ExtractMethod::rake:
            for (const auto& p : rake_extract(doc, idx->pipeline.stopwords)) r.keywords.emplace_back(p.text(), p.score);
            break;
        case ExtractMethod::textrank:
            for (const auto& s : textrank_sentences(doc)) r.sentences.emplace_back(s.sentence_index, s.score);
            for (const auto& range : doc.sentences) {
                std::string joined;
                for (auto i = range.begin; i < range.end; ++i) {
                    if (!joined.empty()) joined += ' ';
                    joined += doc.tokens[i];
                }
                r.sentence_text.push_back(std::move(joined));
            }
            break;
    }
    if (top > 0) {
        if (r.keywords.size() > top) r.keywords.resize(top);
        if (r.sentences.size() > top) r.sentences.resize(top);
    }
    return r;
}

}  // namespace crs
