#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crs/cluster.hpp"
#include "crs/extract.hpp"
#include "crs/ingest.hpp"
#include "crs/recommend.hpp"
#include "crs/textpipe.hpp"
#include "crs/vectorspace.hpp"

namespace crs {

struct EngineConfig {
    double alpha = kDefaultAlpha;
    std::size_t knn_k = kDefaultKnn;
    std::size_t cluster_k = kDefaultClusterCount;
    std::uint64_t seed = 42;
    std::size_t kmeans_max_iter = 100;
    double max_mark = kDefaultMaxMark;

    bool operator==(const EngineConfig&) const = default;
};

// Stable hex digest of the configuration.
std::string config_fingerprint(const EngineConfig& config);

inline constexpr int kSnapshotVersion = 1;
inline constexpr const char* kSnapshotFileName = "index.crs";

// Immutable bundle the service queries. Item profiles, job vectors and the
// vocabulary all come from the course corpus statistics in `stats`.
struct IndexSnapshot {
    EngineConfig config;
    std::string fingerprint;

    std::map<std::string, std::string> contractions;
    std::set<std::string> stopwords;
    std::vector<SkillEntry> taxonomy;

    std::vector<CourseRecord> courses;
    std::vector<JobRecord> jobs;

    Vocabulary vocabulary;
    CorpusStats stats;
    std::vector<ItemProfile> items;  // parallel to `courses`

    std::map<std::string, SkillSet> job_skills;
    std::map<std::string, WeightedTermVector> job_vectors;

    // Jobs whose clustering vector is empty are left out of `clusters`.
    std::optional<ClusterModel> clusters;
    std::vector<std::vector<std::string>> cluster_labels;  // top centroid terms

    InteractionMatrix interactions;
    NeighborMap neighbors;

    bool operator==(const IndexSnapshot&) const = default;
};

struct CorpusInput {
    std::vector<CourseRecord> courses;
    std::vector<JobRecord> jobs;
    SkillTaxonomy taxonomy;
    std::vector<Interaction> interactions;
};

IndexSnapshot build_index(const CorpusInput& input, const EngineConfig& config = {},
                          const TextPipeline& pipeline = {});

TextPipeline pipeline_of(const IndexSnapshot& s);
SkillTaxonomy taxonomy_of(const IndexSnapshot& s);

std::string serialize_snapshot(const IndexSnapshot& s);
IndexSnapshot deserialize_snapshot(std::string_view bytes);

// `path` is a file; parent directories are created.
void save_snapshot(const IndexSnapshot& s, const std::filesystem::path& path);
IndexSnapshot load_snapshot(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace crs
