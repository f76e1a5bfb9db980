#include "crs/index.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "codec.hpp"
#include "crs/error.hpp"

namespace crs {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json config_to_json(const EngineConfig& c) {
    return json{{"alpha", c.alpha},         {"knn_k", c.knn_k},
                {"cluster_k", c.cluster_k}, {"seed", c.seed},
                {"kmeans_max_iter", c.kmeans_max_iter}, {"max_mark", c.max_mark}};
}

std::vector<std::string> top_terms(const WeightedTermVector& v, std::size_t n) {
    std::vector<std::pair<std::string, double>> entries(v.entries.begin(), v.entries.end());
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < entries.size() && i < n; ++i) out.push_back(entries[i].first);
    return out;
}

}  // namespace

std::string config_fingerprint(const EngineConfig& config) {
    return hex64(fnv1a64(config_to_json(config).dump()));
}

TextPipeline pipeline_of(const IndexSnapshot& s) {
    TextPipeline p;
    p.contractions = ContractionTable{};
    for (const auto& [k, v] : s.contractions) p.contractions.add(k, v);
    p.stopwords = StopwordList(s.stopwords);
    return p;
}

SkillTaxonomy taxonomy_of(const IndexSnapshot& s) { return SkillTaxonomy(s.taxonomy); }

IndexSnapshot build_index(const CorpusInput& input, const EngineConfig& config, const TextPipeline& pipeline) {
    if (input.courses.empty()) throw Error(ErrorCode::empty_input, "course catalog is empty");

    IndexSnapshot s;
    s.config = config;
    s.fingerprint = config_fingerprint(config);
    for (const auto& [k, v] : pipeline.contractions.entries()) s.contractions.emplace(k, v);
    for (const auto& w : pipeline.stopwords.words()) s.stopwords.insert(w);
    s.taxonomy = input.taxonomy.entries();
    s.courses = input.courses;
    s.jobs = input.jobs;

    std::vector<TokenizedDoc> course_docs;
    course_docs.reserve(input.courses.size());
    for (const auto& c : input.courses) course_docs.push_back(pipeline.run(c.course_id, course_text(c)));
    s.vocabulary = build_vocabulary(course_docs, pipeline.stopwords);
    s.stats = build_corpus_stats(course_docs, pipeline.stopwords);

    SkillMatcher matcher(input.taxonomy, pipeline.contractions);
    s.items = build_item_profiles(input.courses, s.stats, matcher, pipeline);

    if (!input.jobs.empty()) {
        std::vector<TokenizedDoc> job_docs;
        job_docs.reserve(input.jobs.size());
        for (const auto& j : input.jobs) job_docs.push_back(pipeline.run(j.job_id, j.description));
        auto job_stats = build_corpus_stats(job_docs, pipeline.stopwords);

        std::map<std::string, WeightedTermVector> cluster_input;
        for (const auto& doc : job_docs) {
            s.job_skills[doc.doc_id] = extract_skills(doc, matcher);
            if (doc.tokens.empty()) {
                s.job_vectors[doc.doc_id];
                continue;
            }
            s.job_vectors[doc.doc_id] = tfidf_vector(doc, s.stats, &pipeline.stopwords);
            auto v = tfidf_vector(doc, job_stats, &pipeline.stopwords);
            if (!v.empty()) cluster_input.emplace(doc.doc_id, std::move(v));
        }
        if (!cluster_input.empty() && config.cluster_k > 0) {
            auto k = std::min(config.cluster_k, cluster_input.size());
            s.clusters = kmeans_fit(cluster_input, k, config.seed, config.kmeans_max_iter);
            for (const auto& c : s.clusters->centroids) s.cluster_labels.push_back(top_terms(c, 3));
        }
    }

    std::set<std::string> course_ids;
    for (const auto& c : input.courses) course_ids.insert(c.course_id);
    s.interactions = InteractionMatrix::from_interactions(input.interactions, std::move(course_ids), config.max_mark);
    s.neighbors = item_similarity_knn(s.interactions, std::max<std::size_t>(config.knn_k, 1));
    return s;
}

// ---------------------------------------------------------------- serialization

namespace {

json vec_to_json(const WeightedTermVector& v) {
    json j = json::object();
    for (const auto& [t, w] : v.entries) j[t] = w;
    return j;
}

WeightedTermVector vec_from_json(const json& j) {
    WeightedTermVector v;
    for (auto it = j.begin(); it != j.end(); ++it) v.entries.emplace(it.key(), it.value().get<double>());
    return v;
}

json skills_to_json(const SkillSet& s) {
    return json{{"skills", s.skills}, {"evidence", s.evidence}};
}

SkillSet skills_from_json(const json& j) {
    SkillSet s;
    s.skills = j.at("skills").get<std::set<std::string>>();
    s.evidence = j.at("evidence").get<std::map<std::string, std::set<std::string>>>();
    return s;
}

json to_payload(const IndexSnapshot& s) {
    json j;
    j["config"] = config_to_json(s.config);
    j["fingerprint"] = s.fingerprint;
    j["contractions"] = s.contractions;
    j["stopwords"] = s.stopwords;
    j["taxonomy"] = json::array();
    for (const auto& e : s.taxonomy) j["taxonomy"].push_back(to_json(e));
    j["courses"] = json::array();
    for (const auto& c : s.courses) j["courses"].push_back(to_json(c));
    j["jobs"] = json::array();
    for (const auto& r : s.jobs) j["jobs"].push_back(to_json(r));
    j["vocabulary"] = s.vocabulary.terms;
    j["stats"] = {{"n", s.stats.n}, {"doc_freq", s.stats.doc_freq}};
    j["items"] = json::array();
    for (const auto& p : s.items) {
        j["items"].push_back({{"course_id", p.course_id},
                              {"vector", vec_to_json(p.vector)},
                              {"skills", skills_to_json(p.skills)},
                              {"degenerate", p.degenerate}});
    }
    j["job_skills"] = json::object();
    for (const auto& [id, sk] : s.job_skills) j["job_skills"][id] = skills_to_json(sk);
    j["job_vectors"] = json::object();
    for (const auto& [id, v] : s.job_vectors) j["job_vectors"][id] = vec_to_json(v);
    if (s.clusters) {
        const auto& m = *s.clusters;
        json cj{{"k", m.k}, {"assignments", m.assignments}, {"inertia", m.inertia}, {"inertia_trace", m.inertia_trace}};
        cj["centroids"] = json::array();
        for (const auto& c : m.centroids) cj["centroids"].push_back(vec_to_json(c));
        j["clusters"] = std::move(cj);
    } else {
        j["clusters"] = nullptr;
    }
    j["cluster_labels"] = s.cluster_labels;
    j["interactions"] = {{"courses", s.interactions.courses()}, {"rows", s.interactions.rows()}};
    j["neighbors"] = json::object();
    for (const auto& [id, list] : s.neighbors) {
        json arr = json::array();
        for (const auto& nb : list) arr.push_back({nb.course_id, nb.similarity});
        j["neighbors"][id] = std::move(arr);
    }
    return j;
}

IndexSnapshot from_payload(const json& j) {
    IndexSnapshot s;
    const auto& cfg = j.at("config");
    s.config.alpha = cfg.at("alpha").get<double>();
    s.config.knn_k = cfg.at("knn_k").get<std::size_t>();
    s.config.cluster_k = cfg.at("cluster_k").get<std::size_t>();
    s.config.seed = cfg.at("seed").get<std::uint64_t>();
    s.config.kmeans_max_iter = cfg.at("kmeans_max_iter").get<std::size_t>();
    s.config.max_mark = cfg.at("max_mark").get<double>();
    s.fingerprint = j.at("fingerprint").get<std::string>();
    s.contractions = j.at("contractions").get<std::map<std::string, std::string>>();
    s.stopwords = j.at("stopwords").get<std::set<std::string>>();
    for (const auto& e : j.at("taxonomy")) s.taxonomy.push_back(skill_from_json(e, "snapshot taxonomy"));
    for (const auto& c : j.at("courses")) s.courses.push_back(course_from_json(c, "snapshot course"));
    for (const auto& r : j.at("jobs")) s.jobs.push_back(job_from_json(r, "snapshot job"));
    s.vocabulary.terms = j.at("vocabulary").get<std::vector<std::string>>();
    s.stats.n = j.at("stats").at("n").get<std::size_t>();
    for (const auto& [t, df] : j.at("stats").at("doc_freq").items()) s.stats.doc_freq.emplace(t, df.get<std::size_t>());
    for (const auto& p : j.at("items")) {
        s.items.push_back({p.at("course_id").get<std::string>(), vec_from_json(p.at("vector")),
                           skills_from_json(p.at("skills")), p.at("degenerate").get<bool>()});
    }
    for (const auto& [id, sk] : j.at("job_skills").items()) s.job_skills.emplace(id, skills_from_json(sk));
    for (const auto& [id, v] : j.at("job_vectors").items()) s.job_vectors.emplace(id, vec_from_json(v));
    if (const auto& cj = j.at("clusters"); !cj.is_null()) {
        ClusterModel m;
        m.k = cj.at("k").get<std::size_t>();
        m.assignments = cj.at("assignments").get<std::map<std::string, std::size_t>>();
        m.inertia = cj.at("inertia").get<double>();
        m.inertia_trace = cj.at("inertia_trace").get<std::vector<double>>();
        for (const auto& c : cj.at("centroids")) m.centroids.push_back(vec_from_json(c));
        s.clusters = std::move(m);
    }
    s.cluster_labels = j.at("cluster_labels").get<std::vector<std::vector<std::string>>>();
    s.interactions = InteractionMatrix(j.at("interactions").at("courses").get<std::set<std::string>>());
    for (const auto& [user, row] : j.at("interactions").at("rows").items()) {
        s.interactions.add_user(user);
        for (const auto& [course, v] : row.items()) s.interactions.set(user, course, v.get<double>());
    }
    for (const auto& [id, arr] : j.at("neighbors").items()) {
        auto& list = s.neighbors[id];
        for (const auto& nb : arr) list.push_back({nb.at(0).get<std::string>(), nb.at(1).get<double>()});
    }
    return s;
}

constexpr std::string_view kMagic = "CRS-INDEX";

}  // namespace

// Layout: "CRS-INDEX v<version> <fnv1a64 hex> <payload bytes>\n" + compact JSON payload.
std::string serialize_snapshot(const IndexSnapshot& s) {
    auto payload = to_payload(s).dump();
    std::string out(kMagic);
    out += " v" + std::to_string(kSnapshotVersion) + " " + hex64(fnv1a64(payload)) + " " +
           std::to_string(payload.size()) + "\n";
    out += payload;
    return out;
}

IndexSnapshot deserialize_snapshot(std::string_view bytes) {
    auto nl = bytes.find('\n');
    if (nl == std::string_view::npos) throw Error(ErrorCode::checksum, "snapshot header is truncated");
    std::istringstream header{std::string(bytes.substr(0, nl))};
    std::string magic, version, digest;
    std::size_t length = 0;
    header >> magic >> version;
    if (magic != kMagic) throw Error(ErrorCode::malformed, "not an index snapshot");
    if (version != "v" + std::to_string(kSnapshotVersion)) {
        throw Error(ErrorCode::unsupported_version,
                    "unsupported snapshot version '" + version + "' (expected v" + std::to_string(kSnapshotVersion) + ")");
    }
    if (!(header >> digest >> length)) throw Error(ErrorCode::checksum, "snapshot header is truncated");

    auto payload = bytes.substr(nl + 1);
    if (payload.size() != length || hex64(fnv1a64(payload)) != digest) {
        throw Error(ErrorCode::checksum, "snapshot checksum mismatch (file truncated or corrupt)");
    }
    try {
        return from_payload(json::parse(payload));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::malformed, std::string("snapshot payload is invalid: ") + e.what());
    }
}

void save_snapshot(const IndexSnapshot& s, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::io, "cannot write '" + tmp.string() + "'");
        auto bytes = serialize_snapshot(s);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw Error(ErrorCode::io, "write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

IndexSnapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open snapshot '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize_snapshot(ss.str());
}

}  // namespace crs
