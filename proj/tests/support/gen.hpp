#pragma once

// Hand-rolled generators for property tests and the synthetic desk-scale corpus.

#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "crs/extract.hpp"
#include "crs/index.hpp"
#include "crs/textpipe.hpp"

#ifndef CRS_FIXTURE_DIR
#define CRS_FIXTURE_DIR "tests/fixtures"
#endif

namespace gen {

inline std::filesystem::path fixture(const std::string& rel) { return std::filesystem::path(CRS_FIXTURE_DIR) / rel; }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
    std::size_t between(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
    }
    double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }
    bool coin(double p = 0.5) { return unit() < p; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline const std::vector<std::string>& small_lexicon() {
    static const std::vector<std::string> words{"data",   "mining", "model",  "python", "sql",   "cloud",
                                                "graph",  "query",  "design", "test",   "report", "team",
                                                "vector", "search", "rank",   "web",    "java",  "learn"};
    return words;
}

// Token lists drawn from a small lexicon so terms recur across documents.
inline std::vector<std::string> token_doc(Rng& rng, std::size_t min_len, std::size_t max_len,
                                          const std::vector<std::string>& lexicon = small_lexicon()) {
    std::vector<std::string> out(rng.between(min_len, max_len));
    for (auto& t : out) t = rng.pick(lexicon);
    return out;
}

inline crs::TokenizedDoc as_doc(std::vector<std::string> tokens, std::string id = "d") {
    crs::TokenizedDoc d;
    d.doc_id = std::move(id);
    if (!tokens.empty()) d.sentences.push_back({0, tokens.size()});
    d.tokens = std::move(tokens);
    return d;
}

// Document of `sentences` sentences, each 1..max_len tokens.
inline crs::TokenizedDoc sentence_doc(Rng& rng, std::size_t sentences, std::size_t max_len,
                                      const std::vector<std::string>& lexicon = small_lexicon()) {
    crs::TokenizedDoc d;
    d.doc_id = "s";
    for (std::size_t s = 0; s < sentences; ++s) {
        auto begin = d.tokens.size();
        auto tokens = token_doc(rng, 1, max_len, lexicon);
        d.tokens.insert(d.tokens.end(), tokens.begin(), tokens.end());
        d.sentences.push_back({begin, d.tokens.size()});
    }
    return d;
}

inline crs::WeightedTermVector random_vector(Rng& rng, std::size_t dims, std::size_t max_terms) {
    crs::WeightedTermVector v;
    std::size_t n = rng.between(1, max_terms);
    while (v.size() < n) v.set("t" + std::to_string(rng.below(dims)), 0.05 + rng.unit());
    return v;
}

inline std::set<std::string> random_skill_ids(Rng& rng, std::size_t universe, double p) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < universe; ++i) {
        if (rng.coin(p)) out.insert("skill" + std::to_string(i));
    }
    return out;
}

inline crs::SkillSet skill_set(const std::set<std::string>& ids) {
    crs::SkillSet s;
    for (const auto& id : ids) s.insert(id, id);
    return s;
}

// Random printable strings mixing markup, entities, punctuation, case and whitespace.
inline std::string messy_text(Rng& rng, std::size_t max_len) {
    static const std::vector<std::string> parts{
        "Data",  "MINING", "don't", "Can't", " ",   "  ",   "\t", "\n",   ".",       "!",    "?",  ",",
        "<p>",   "</p>",   "<br>",  "<b>",   "</b>", "&amp;", "$",  "50k",  "e-mail",  "web3", "(",  ")",
        "caf\xc3\xa9", "running", "courses", "studies", "it's", "&#39;", "<!-- x -->", "a<b", "x > y", "'quoted'"};
    std::string out;
    std::size_t n = rng.between(0, max_len);
    for (std::size_t i = 0; i < n; ++i) out += rng.pick(parts);
    return out;
}

// Synthetic catalogue: courses, jobs, taxonomy and interactions built from a
// generated vocabulary. Skills are multi-word phrases sprinkled through text.
inline crs::CorpusInput synthetic_corpus(std::size_t courses, std::size_t jobs, std::size_t users,
                                         std::uint64_t seed) {
    Rng rng(seed);
    static const std::vector<std::string> syll{"ka", "lo", "mi", "ser", "tu", "van", "dor", "pe", "qui", "ran",
                                               "sol", "te", "vik", "zan", "bor", "fel", "gri", "hon", "jas", "nel"};
    std::vector<std::string> vocab;
    std::set<std::string> seen;
    while (vocab.size() < 3000) {
        std::string w = rng.pick(syll) + rng.pick(syll) + rng.pick(syll) + "x";
        if (seen.insert(w).second) vocab.push_back(w);
    }
    std::vector<crs::SkillEntry> skills;
    for (std::size_t i = 0; i < 200; ++i) {
        crs::SkillEntry e;
        e.skill_id = "skill-" + std::to_string(i);
        e.display_name = vocab[i * 2] + " " + vocab[i * 2 + 1];
        skills.push_back(e);
    }
    auto paragraph = [&](std::size_t words) {
        std::string text;
        // Each document leans on a topic band of the vocabulary plus shared noise.
        std::size_t band = 400 + rng.below(18) * 140;
        for (std::size_t w = 0; w < words; ++w) {
            if (!text.empty()) text += (w % 12 == 0) ? ". " : " ";
            if (w % 15 == 7) {
                text += skills[rng.below(skills.size())].display_name;
            } else if (rng.coin(0.7)) {
                text += vocab[band + rng.below(140)];
            } else {
                text += vocab[400 + rng.below(vocab.size() - 400)];
            }
        }
        return text + ".";
    };
    crs::CorpusInput in;
    for (std::size_t i = 0; i < courses; ++i) {
        crs::CourseRecord c;
        char id[32];
        std::snprintf(id, sizeof id, "C%05zu", i);
        c.course_id = id;
        c.name = "Course " + std::to_string(i);
        c.description = paragraph(80);
        c.learning_outcomes = paragraph(30);
        in.courses.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < jobs; ++i) {
        crs::JobRecord j;
        char id[32];
        std::snprintf(id, sizeof id, "J%05zu", i);
        j.job_id = id;
        j.title = "Role " + std::to_string(i);
        j.source = static_cast<crs::JobSource>(i % 4);
        j.description = "<p>" + paragraph(60) + "</p>";
        in.jobs.push_back(std::move(j));
    }
    in.taxonomy = crs::SkillTaxonomy(skills);
    for (std::size_t u = 0; u < users; ++u) {
        std::size_t n = rng.between(2, 12);
        for (std::size_t k = 0; k < n; ++k) {
            crs::Interaction r;
            r.user_id = "user" + std::to_string(u);
            r.course_id = in.courses[rng.below(in.courses.size())].course_id;
            if (rng.coin(0.8)) r.grade = 50.0 + static_cast<double>(rng.below(51));
            in.interactions.push_back(r);
        }
    }
    return in;
}

}  // namespace gen
