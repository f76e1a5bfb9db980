#pragma once

// Wire encodings shared by the HTTP API and the command-line tool.

#include <nlohmann/json.hpp>

#include "crs/service.hpp"

namespace crs::api {

using json = nlohmann::json;

json skills_json(const SkillSet& skills, const LoadedIndex& idx);
json gap_json(const SkillGap& gap);
json recommendations_json(const RecommendationResponse& resp, const LoadedIndex& idx);
json courses_json(const LoadedIndex& idx);
json job_groups_json(const std::vector<JobGroup>& groups);
json extract_json(const ExtractResult& r, const LoadedIndex& idx);
json error_json(std::string_view code, std::string_view message);

}  // namespace crs::api
