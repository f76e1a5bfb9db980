#pragma once

// JSON conversions shared by ingestion, snapshot persistence and the HTTP layer.

#include <nlohmann/json.hpp>

#include "crs/ingest.hpp"

namespace crs {

using json = nlohmann::json;

json to_json(const CourseRecord& c);
json to_json(const JobRecord& j);
json to_json(const SkillEntry& e);

// These throw crs::Error(malformed) with `where` prefixed to the message.
CourseRecord course_from_json(const json& j, const std::string& where);
JobRecord job_from_json(const json& j, const std::string& where);
SkillEntry skill_from_json(const json& j, const std::string& where);

}  // namespace crs
