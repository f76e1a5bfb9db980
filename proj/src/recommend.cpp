#include "crs/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "codec.hpp"
#include "crs/error.hpp"

namespace crs {

// ---------------------------------------------------------------- interactions

std::vector<Interaction> parse_interactions(std::string_view text, std::string_view origin) {
    std::vector<Interaction> out;
    std::size_t line_no = 0;
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        std::string where = std::string(origin) + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorCode::malformed, where + ": invalid JSON (" + e.what() + ")");
        }
        auto str = [&](const char* key) {
            auto it = j.find(key);
            if (it == j.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
                throw Error(ErrorCode::malformed, where + ": missing or empty field '" + key + "'");
            }
            return it->get<std::string>();
        };
        if (!j.is_object()) throw Error(ErrorCode::malformed, where + ": record is not an object");
        Interaction rec{str("user_id"), str("course_id"), std::nullopt};
        if (auto it = j.find("grade"); it != j.end() && !it->is_null()) {
            if (!it->is_number()) throw Error(ErrorCode::malformed, where + ": 'grade' must be a number or null");
            rec.grade = it->get<double>();
            if (*rec.grade < 0.0) throw Error(ErrorCode::malformed, where + ": negative grade");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<Interaction> load_interactions(const std::filesystem::path& path) {
    return parse_interactions(read_text_file(path), path.string());
}

std::string to_jsonl(const std::vector<Interaction>& interactions) {
    std::string out;
    for (const auto& r : interactions) {
        json j{{"user_id", r.user_id}, {"course_id", r.course_id}, {"grade", nullptr}};
        if (r.grade) j["grade"] = *r.grade;
        out += j.dump();
        out += '\n';
    }
    return out;
}

InteractionMatrix::InteractionMatrix(std::set<std::string> course_ids) : courses_(std::move(course_ids)) {}

InteractionMatrix InteractionMatrix::from_interactions(const std::vector<Interaction>& records,
                                                       std::set<std::string> course_ids, double max_mark) {
    if (!(max_mark > 0.0)) throw Error(ErrorCode::invalid_argument, "max mark must be positive");
    InteractionMatrix m(std::move(course_ids));
    for (const auto& r : records) {
        double v = r.grade ? std::clamp(*r.grade / max_mark, 0.0, 1.0) : 1.0;
        m.add_user(r.user_id);
        m.set(r.user_id, r.course_id, v);
    }
    return m;
}

void InteractionMatrix::add_user(const std::string& user_id) { rows_.try_emplace(user_id); }

void InteractionMatrix::set(const std::string& user_id, const std::string& course_id, double value) {
    if (!courses_.count(course_id)) {
        throw Error(ErrorCode::not_found, "interaction references unknown course '" + course_id + "'");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "interaction value must lie in [0, 1]");
    }
    auto& row = rows_[user_id];
    if (value == 0.0) row.erase(course_id);
    else row[course_id] = value;
}

double InteractionMatrix::get(const std::string& user_id, const std::string& course_id) const {
    auto r = rows_.find(user_id);
    if (r == rows_.end()) return 0.0;
    auto c = r->second.find(course_id);
    return c == r->second.end() ? 0.0 : c->second;
}

const InteractionMatrix::Row* InteractionMatrix::row(const std::string& user_id) const {
    auto it = rows_.find(user_id);
    return it == rows_.end() ? nullptr : &it->second;
}

std::vector<std::string> InteractionMatrix::users() const {
    std::vector<std::string> out;
    out.reserve(rows_.size());
    for (const auto& [u, r] : rows_) out.push_back(u);
    return out;
}

std::map<std::string, InteractionMatrix::Row> InteractionMatrix::columns() const {
    std::map<std::string, Row> cols;
    for (const auto& c : courses_) cols[c];
    for (const auto& [u, row] : rows_) {
        for (const auto& [c, v] : row) cols[c][u] = v;
    }
    return cols;
}

// ---------------------------------------------------------------- item knn

NeighborMap item_similarity_knn(const InteractionMatrix& m, std::size_t k) {
    if (k == 0) throw Error(ErrorCode::invalid_argument, "knn needs k >= 1");
    const auto& courses = m.courses();
    std::vector<std::string> ids(courses.begin(), courses.end());
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
    const std::size_t n = ids.size();

    std::vector<double> sq_norm(n, 0.0);
    std::unordered_map<std::uint64_t, double> dots;
    std::vector<std::pair<std::size_t, double>> cells;
    for (const auto& [user, row] : m.rows()) {
        cells.clear();
        for (const auto& [c, v] : row) cells.emplace_back(index.at(c), v);
        for (std::size_t a = 0; a < cells.size(); ++a) {
            sq_norm[cells[a].first] += cells[a].second * cells[a].second;
            for (std::size_t b = a + 1; b < cells.size(); ++b) {
                auto lo = std::min(cells[a].first, cells[b].first);
                auto hi = std::max(cells[a].first, cells[b].first);
                dots[static_cast<std::uint64_t>(lo) * n + hi] += cells[a].second * cells[b].second;
            }
        }
    }

    std::vector<std::vector<Neighbor>> lists(n);
    for (const auto& [key, d] : dots) {
        auto i = static_cast<std::size_t>(key / n), j = static_cast<std::size_t>(key % n);
        double sim = d / (std::sqrt(sq_norm[i]) * std::sqrt(sq_norm[j]));
        if (!(sim > 0.0)) continue;
        sim = std::min(sim, 1.0);
        lists[i].push_back({ids[j], sim});
        lists[j].push_back({ids[i], sim});
    }

    NeighborMap out;
    for (std::size_t i = 0; i < n; ++i) {
        auto& l = lists[i];
        std::sort(l.begin(), l.end(), [](const Neighbor& a, const Neighbor& b) {
            if (a.similarity != b.similarity) return a.similarity > b.similarity;
            return a.course_id < b.course_id;
        });
        if (l.size() > k) l.resize(k);
        out.emplace(ids[i], std::move(l));
    }
    return out;
}

// ---------------------------------------------------------------- scoring

ScoreMap content_scores(const UserProfile& user, const std::vector<ItemProfile>& items) {
    ScoreMap out;
    for (const auto& item : items) {
        if (user.completed_courses.count(item.course_id)) continue;
        out[item.course_id] = cosine_similarity(user.vector, item.vector);
    }
    return out;
}

ScoreMap collaborative_scores_for_row(const InteractionMatrix::Row& row, const NeighborMap& knn) {
    ScoreMap out;
    for (const auto& [course, neighbors] : knn) {
        if (row.count(course)) continue;
        double num = 0.0, den = 0.0;
        for (const auto& nb : neighbors) {
            den += nb.similarity;
            if (auto it = row.find(nb.course_id); it != row.end()) num += nb.similarity * it->second;
        }
        out[course] = den > 0.0 ? num / den : 0.0;
    }
    return out;
}

std::optional<ScoreMap> collaborative_scores(const std::string& user_id, const InteractionMatrix& m,
                                             const NeighborMap& knn) {
    const auto* row = m.row(user_id);
    if (!row) return std::nullopt;
    return collaborative_scores_for_row(*row, knn);
}

ScoreMap min_max_normalize(const ScoreMap& scores) {
    ScoreMap out;
    if (scores.empty()) return out;
    auto [lo, hi] = std::minmax_element(scores.begin(), scores.end(),
                                        [](const auto& a, const auto& b) { return a.second < b.second; });
    double min = lo->second, range = hi->second - lo->second;
    for (const auto& [id, s] : scores) out[id] = range > 0.0 ? (s - min) / range : 0.0;
    return out;
}

namespace {

std::vector<std::string> covered(const SkillSet& skills, const std::set<std::string>& missing) {
    std::vector<std::string> out;
    for (const auto& s : skills.skills) {
        if (missing.count(s)) out.push_back(s);
    }
    return out;
}

void rank(std::vector<Recommendation>& recs, std::size_t limit) {
    std::sort(recs.begin(), recs.end(), [](const Recommendation& a, const Recommendation& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        return a.course_id < b.course_id;
    });
    if (recs.size() > limit) recs.resize(limit);
}

}  // namespace

std::vector<Recommendation> hybrid_recommend_with_row(const UserProfile& user,
                                                      const std::vector<ItemProfile>& items,
                                                      const InteractionMatrix::Row* row,
                                                      const NeighborMap& knn, const HybridOptions& options) {
    if (!(options.alpha >= 0.0 && options.alpha <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "alpha must lie in [0, 1]");
    }
    const bool cold_start = row == nullptr || row->empty();
    const double alpha = cold_start ? 1.0 : options.alpha;

    ScoreMap content_raw, collab_raw;
    ScoreMap collab_all;
    if (!cold_start) collab_all = collaborative_scores_for_row(*row, knn);
    for (const auto& item : items) {
        if (user.completed_courses.count(item.course_id)) continue;
        if (row && row->count(item.course_id)) continue;
        content_raw[item.course_id] = cosine_similarity(user.vector, item.vector);
        auto it = collab_all.find(item.course_id);
        collab_raw[item.course_id] = it == collab_all.end() ? 0.0 : it->second;
    }
    auto content = min_max_normalize(content_raw);
    auto collab = min_max_normalize(collab_raw);

    std::vector<Recommendation> recs;
    recs.reserve(content.size());
    for (const auto& item : items) {
        auto c = content.find(item.course_id);
        if (c == content.end()) continue;
        Recommendation r;
        r.course_id = item.course_id;
        r.content_score = c->second;
        r.collab_score = collab[item.course_id];
        r.final_score = alpha * r.content_score + (1.0 - alpha) * r.collab_score;
        if (options.missing_skills) r.gap_coverage = covered(item.skills, *options.missing_skills);
        recs.push_back(std::move(r));
    }
    rank(recs, options.limit);
    return recs;
}

std::vector<Recommendation> hybrid_recommend(const UserProfile& user, const std::vector<ItemProfile>& items,
                                             const InteractionMatrix& m, const NeighborMap& knn,
                                             const HybridOptions& options) {
    return hybrid_recommend_with_row(user, items, m.row(user.user_id), knn, options);
}

// ---------------------------------------------------------------- skill gap

SkillGap skill_gap(const SkillSet& owned, const SkillSet& required) {
    SkillGap gap;
    gap.required = required;
    gap.owned = owned;
    for (const auto& s : required.skills) {
        if (owned.contains(s)) continue;
        gap.missing.skills.insert(s);
        if (auto it = required.evidence.find(s); it != required.evidence.end()) {
            gap.missing.evidence[s] = it->second;
        }
    }
    return gap;
}

SkillGap compute_skill_gap(const SkillSet& owned, const JobRecord& job, const SkillMatcher& matcher,
                           const TextPipeline& pipeline) {
    auto doc = pipeline.run(job.job_id, job.description);
    return skill_gap(owned, extract_skills(doc, matcher));
}

std::vector<Recommendation> recommend_for_gap(const SkillGap& gap, const std::vector<ItemProfile>& items,
                                              const WeightedTermVector& job_vector, std::size_t limit,
                                              const std::set<std::string>& exclude) {
    std::vector<Recommendation> recs;
    const auto& missing = gap.missing.skills;
    if (missing.empty()) return recs;
    for (const auto& item : items) {
        if (exclude.count(item.course_id)) continue;
        auto cover = covered(item.skills, missing);
        if (cover.empty()) continue;
        Recommendation r;
        r.course_id = item.course_id;
        r.final_score = static_cast<double>(cover.size()) / static_cast<double>(missing.size());
        r.content_score = cosine_similarity(item.vector, job_vector);
        r.gap_coverage = std::move(cover);
        recs.push_back(std::move(r));
    }
    std::sort(recs.begin(), recs.end(), [](const Recommendation& a, const Recommendation& b) {
        if (a.final_score != b.final_score) return a.final_score > b.final_score;
        if (a.content_score != b.content_score) return a.content_score > b.content_score;
        return a.course_id < b.course_id;
    });
    if (recs.size() > limit) recs.resize(limit);
    return recs;
}

}  // namespace crs
