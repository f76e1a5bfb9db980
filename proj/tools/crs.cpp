// crs: build course indexes, query recommendations, evaluate, and serve the HTTP API.

#include <CLI11.hpp>
#include <httplib.h>

#include <chrono>
#include <csignal>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "crs/api_json.hpp"
#include "crs/error.hpp"
#include "crs/evalkit.hpp"
#include "crs/http_api.hpp"
#include "crs/index.hpp"
#include "crs/service.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_ids(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::shared_ptr<const crs::IndexSnapshot> open_index(const fs::path& dir) {
    return std::make_shared<const crs::IndexSnapshot>(crs::load_snapshot(dir / crs::kSnapshotFileName));
}

httplib::Server* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Course recommendation engine"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Build an index snapshot from corpus files");
    std::string courses_path, jobs_path, taxonomy_path, interactions_path, out_dir, contractions_path, stopwords_path;
    crs::EngineConfig config;
    ingest->add_option("--courses", courses_path, "courses.jsonl")->required()->check(CLI::ExistingFile);
    ingest->add_option("--jobs", jobs_path, "jobs.jsonl")->required()->check(CLI::ExistingFile);
    ingest->add_option("--taxonomy", taxonomy_path, "taxonomy.jsonl")->required()->check(CLI::ExistingFile);
    ingest->add_option("--interactions", interactions_path, "interactions.jsonl")->check(CLI::ExistingFile);
    ingest->add_option("--out", out_dir, "Output directory")->required();
    ingest->add_option("--contractions", contractions_path, "Extra contractions (surface<TAB>expansion)")
        ->check(CLI::ExistingFile);
    ingest->add_option("--stopwords", stopwords_path, "Stopword list replacing the built-in one")
        ->check(CLI::ExistingFile);
    ingest->add_option("--clusters", config.cluster_k, "k for job clustering")->capture_default_str();
    ingest->add_option("--seed", config.seed, "Clustering seed")->capture_default_str();
    ingest->add_option("--knn", config.knn_k, "Neighbours per course")->capture_default_str()->check(CLI::PositiveNumber);
    ingest->add_option("--alpha", config.alpha, "Content weight in the hybrid blend")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    ingest->add_option("--max-mark", config.max_mark, "Grade that maps to 1.0")->capture_default_str()->check(CLI::PositiveNumber);

    // recommend
    auto* recommend = app.add_subcommand("recommend", "Recommend courses for a resume and course history");
    std::string index_dir, resume_path, completed_csv, job_id, mode_name = "hybrid";
    std::size_t limit = 10;
    recommend->add_option("--index", index_dir, "Index directory")->envname("CRS_INDEX_DIR")->required();
    recommend->add_option("--resume", resume_path, "Plain-text resume")->check(CLI::ExistingFile);
    recommend->add_option("--completed", completed_csv, "Comma-separated completed course ids");
    recommend->add_option("--job", job_id, "Target job id");
    recommend->add_option("--mode", mode_name, "hybrid or gap")->check(CLI::IsMember({"hybrid", "gap"}))->capture_default_str();
    recommend->add_option("--limit", limit, "Maximum results")->capture_default_str();

    // eval
    auto* eval = app.add_subcommand("eval", "Leave-last-out precision/recall of the hybrid engine");
    std::string eval_interactions;
    std::size_t top_n = 10, latency_reps = 100;
    bool eval_json = false;
    eval->add_option("--index", index_dir, "Index directory")->envname("CRS_INDEX_DIR")->required();
    eval->add_option("--interactions", eval_interactions, "interactions.jsonl")->required()->check(CLI::ExistingFile);
    eval->add_option("--top-n", top_n, "List length scored per user")->capture_default_str()->check(CLI::PositiveNumber);
    eval->add_option("--latency-reps", latency_reps, "Timed requests (0 disables)")->capture_default_str();
    eval->add_flag("--json", eval_json, "Print the JSON report instead of the table");

    // serve
    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    int port = 8080;
    std::string host = "127.0.0.1", sessions_path;
    serve->add_option("--index", index_dir, "Index directory")->envname("CRS_INDEX_DIR")->required();
    serve->add_option("--port", port, "Listen port")->envname("CRS_PORT")->capture_default_str();
    serve->add_option("--host", host, "Bind address")->capture_default_str();
    serve->add_option("--sessions", sessions_path, "Session log (default: <index>/sessions.jsonl)");

    // extract
    auto* extract = app.add_subcommand("extract", "Extract keywords, sentences and skills from a text file");
    std::string text_path, method_name = "tfidf";
    std::size_t top = 10;
    extract->add_option("--index", index_dir, "Index directory")->envname("CRS_INDEX_DIR")->required();
    extract->add_option("--text", text_path, "Input text file")->required()->check(CLI::ExistingFile);
    extract->add_option("--method", method_name, "tfidf, rake or textrank")
        ->check(CLI::IsMember({"tfidf", "rake", "textrank"}))
        ->capture_default_str();
    extract->add_option("--top", top, "Maximum results (0 = all)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            auto t0 = std::chrono::steady_clock::now();
            crs::CorpusInput input;
            input.courses = crs::load_courses(courses_path);
            input.jobs = crs::load_jobs(jobs_path);
            input.taxonomy = crs::load_taxonomy(taxonomy_path);
            if (!interactions_path.empty()) input.interactions = crs::load_interactions(interactions_path);
            crs::TextPipeline pipeline;
            if (!contractions_path.empty()) pipeline.contractions = crs::ContractionTable::load(contractions_path);
            if (!stopwords_path.empty()) pipeline.stopwords = crs::StopwordList::load(stopwords_path);

            auto snapshot = crs::build_index(input, config, pipeline);
            auto path = fs::path(out_dir) / crs::kSnapshotFileName;
            crs::save_snapshot(snapshot, path);
            auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cerr << "indexed " << snapshot.courses.size() << " courses, " << snapshot.jobs.size() << " jobs, "
                      << snapshot.taxonomy.size() << " skills, " << snapshot.interactions.rows().size()
                      << " users in " << secs << " s -> " << path.string() << "\n";
            return 0;
        }

        if (*recommend) {
            crs::Service service(open_index(index_dir));
            auto id = service.create_session("cli");
            if (!resume_path.empty()) service.submit_resume(id, crs::read_text_file(resume_path));
            if (!completed_csv.empty()) service.set_completed_courses(id, split_ids(completed_csv));
            if (!job_id.empty()) service.set_target_job(id, job_id);
            auto resp = service.recommendations(id, *crs::parse_recommend_mode(mode_name), limit);
            auto j = crs::api::recommendations_json(resp, *service.index());
            j["owned_skills"] = service.session(id).owned_skills.skills;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (*eval) {
            auto snapshot = open_index(index_dir);
            std::set<std::string> course_ids;
            for (const auto& c : snapshot->courses) course_ids.insert(c.course_id);
            auto split = crs::leave_last_out(crs::load_interactions(eval_interactions), course_ids,
                                             snapshot->config.max_mark);
            auto engine = crs::make_hybrid_engine(split, snapshot->items, snapshot->config.knn_k, snapshot->config.alpha);
            auto report = crs::evaluate_recommender(split, engine, top_n);
            if (latency_reps > 0 && !report.per_user.empty()) {
                const auto user = report.per_user.front().user_id;
                report.latency = crs::measure_latency([&] { engine(user, top_n); }, latency_reps);
            }
            std::cout << (eval_json ? crs::report_json(report) + "\n" : crs::report_table(report));
            return 0;
        }

        if (*serve) {
            fs::path log = sessions_path.empty() ? fs::path(index_dir) / "sessions.jsonl" : fs::path(sessions_path);
            crs::Service service(open_index(index_dir), log);
            httplib::Server server;
            crs::install_routes(server, service);
            g_server = &server;
            std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
            std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
            std::cerr << "serving " << service.index()->snapshot->courses.size() << " courses on http://" << host
                      << ":" << port << " (" << service.session_count() << " sessions restored)\n";
            if (!server.listen(host, port)) {
                std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
                return 1;
            }
            return 0;
        }

        if (*extract) {
            crs::Service service(open_index(index_dir));
            auto result = service.extract(crs::read_text_file(text_path), *crs::parse_extract_method(method_name), top);
            std::cout << crs::api::extract_json(result, *service.index()).dump(2) << "\n";
            return 0;
        }
    } catch (const crs::Error& e) {
        std::cerr << "error (" << crs::to_string(e.code()) << "): " << e.what() << "\n";
        return 2;
    }
    return 0;
}
