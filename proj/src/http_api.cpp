#include "crs/http_api.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>

#include "crs/api_json.hpp"
#include "crs/error.hpp"
#include "crs/service.hpp"

namespace crs {

namespace {

using api::json;

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_found: return 404;
        case ErrorCode::too_large: return 413;
        case ErrorCode::io: return 500;
        default: return 400;
    }
}

void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
}

json parse_body(const httplib::Request& req) {
    try {
        auto j = json::parse(req.body);
        if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
        return j;
    } catch (const json::parse_error&) {
        throw Error(ErrorCode::invalid_argument, "request body is not valid JSON");
    }
}

std::string body_string(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
        throw Error(ErrorCode::invalid_argument, std::string("field '") + key + "' must be a string");
    }
    return it->get<std::string>();
}

std::size_t parse_count(const std::string& s, const char* name) {
    const bool digits = !s.empty() && s.size() <= 9 &&
                        std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
    if (!digits) throw Error(ErrorCode::invalid_argument, std::string("'") + name + "' must be a non-negative integer");
    return static_cast<std::size_t>(std::stoul(s));
}

// Runs a handler, turning library errors into {error, message} responses.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const Error& e) {
            send(res, status_for(e.code()), api::error_json(to_string(e.code()), e.what()));
        } catch (const std::exception& e) {
            send(res, 500, api::error_json("internal_error", e.what()));
        }
    };
}

}  // namespace

void install_routes(httplib::Server& server, Service& service) {
    server.Post("/api/session", guarded([&](const httplib::Request& req, httplib::Response& res) {
        std::string name;
        if (!req.body.empty()) {
            auto body = parse_body(req);
            if (body.contains("display_name")) name = body_string(body, "display_name");
        }
        send(res, 200, json{{"session_id", service.create_session(name)}});
    }));

    server.Get(R"(/api/session/([^/]+))", guarded([&](const httplib::Request& req, httplib::Response& res) {
        auto s = service.session(req.matches[1]);
        auto idx = service.index();
        json j{{"session_id", s.session_id},
               {"display_name", s.display_name},
               {"created_at", s.created_at},
               {"completed_courses", s.completed_courses},
               {"has_resume", s.resume.has_value()},
               {"target_job_id", s.target_job_id ? json(*s.target_job_id) : json(nullptr)}};
        j.update(api::skills_json(s.owned_skills, *idx));
        send(res, 200, j);
    }));

    server.Post(R"(/api/session/([^/]+)/resume)", guarded([&](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req);
        auto skills = service.submit_resume(req.matches[1], body_string(body, "text"));
        send(res, 200, api::skills_json(skills, *service.index()));
    }));

    server.Put(R"(/api/session/([^/]+)/courses)", guarded([&](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req);
        auto it = body.find("course_ids");
        if (it == body.end() || !it->is_array()) {
            throw Error(ErrorCode::invalid_argument, "field 'course_ids' must be an array of strings");
        }
        std::vector<std::string> ids;
        for (const auto& c : *it) {
            if (!c.is_string()) throw Error(ErrorCode::invalid_argument, "field 'course_ids' must be an array of strings");
            ids.push_back(c.get<std::string>());
        }
        auto skills = service.set_completed_courses(req.matches[1], ids);
        send(res, 200, api::skills_json(skills, *service.index()));
    }));

    server.Put(R"(/api/session/([^/]+)/target)", guarded([&](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req);
        auto gap = service.set_target_job(req.matches[1], body_string(body, "job_id"));
        send(res, 200, json{{"gap", api::gap_json(gap)}});
    }));

    server.Get(R"(/api/session/([^/]+)/recommendations)",
               guarded([&](const httplib::Request& req, httplib::Response& res) {
                   auto mode = RecommendMode::hybrid;
                   if (req.has_param("mode")) {
                       auto m = parse_recommend_mode(req.get_param_value("mode"));
                       if (!m) throw Error(ErrorCode::invalid_argument, "mode must be 'hybrid' or 'gap'");
                       mode = *m;
                   }
                   std::size_t limit = 10;
                   if (req.has_param("limit")) limit = parse_count(req.get_param_value("limit"), "limit");
                   auto resp = service.recommendations(req.matches[1], mode, limit);
                   send(res, 200, api::recommendations_json(resp, *service.index()));
               }));

    server.Get("/api/courses", guarded([&](const httplib::Request&, httplib::Response& res) {
        send(res, 200, api::courses_json(*service.index()));
    }));

    server.Get("/api/jobs", guarded([&](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::size_t> cluster;
        if (req.has_param("cluster") && !req.get_param_value("cluster").empty()) {
            cluster = parse_count(req.get_param_value("cluster"), "cluster");
        }
        auto q = req.has_param("q") ? req.get_param_value("q") : std::string();
        send(res, 200, api::job_groups_json(service.jobs_by_cluster(cluster, q)));
    }));

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            res.set_content(api::error_json(res.status == 404 ? "not_found" : "http_error", "no such route").dump(),
                            "application/json; charset=utf-8");
        }
    });
}

}  // namespace crs
