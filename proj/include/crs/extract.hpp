#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "crs/ingest.hpp"
#include "crs/textpipe.hpp"

namespace crs {

// Sparse term -> weight map. Zero weights are never stored.
struct WeightedTermVector {
    std::map<std::string, double, std::less<>> entries;

    bool empty() const { return entries.empty(); }
    std::size_t size() const { return entries.size(); }
    double at(std::string_view term) const {
        auto it = entries.find(term);
        return it == entries.end() ? 0.0 : it->second;
    }
    // Stores w when positive, erases the term otherwise.
    void set(const std::string& term, double w);
    double norm() const;
    WeightedTermVector normalized() const;

    bool operator==(const WeightedTermVector&) const = default;
};

// Document-frequency statistics over a corpus D of N documents.
struct CorpusStats {
    std::size_t n = 0;
    std::map<std::string, std::size_t, std::less<>> doc_freq;

    bool operator==(const CorpusStats&) const = default;
};

// Counts each distinct non-stopword term once per document. Throws on an empty corpus.
CorpusStats build_corpus_stats(const std::vector<TokenizedDoc>& docs, const StopwordList& stops);

// Occurrences of `term` over the document length. Throws empty_input on an empty document.
double term_frequency(std::string_view term, const TokenizedDoc& doc);

// ln(N / df); std::nullopt when the term never occurs in the corpus.
std::optional<double> inverse_document_frequency(std::string_view term, const CorpusStats& stats);

// TF * IDF for every distinct non-stopword term of `doc`; unseen and zero weights dropped.
WeightedTermVector tfidf_vector(const TokenizedDoc& doc, const CorpusStats& stats,
                                const StopwordList* stops = nullptr);

// ---------------------------------------------------------------- RAKE

struct RakePhrase {
    std::vector<std::string> tokens;
    double score = 0.0;

    std::string text() const;
    bool operator==(const RakePhrase&) const = default;
};

struct RakeResult {
    std::vector<RakePhrase> phrases;            // score desc, then token sequence asc
    std::map<std::string, double> word_scores;  // degree / frequency
};

inline constexpr std::size_t kDefaultRakeMaxPhraseLen = 4;

RakeResult rake_analyze(const TokenizedDoc& doc, const StopwordList& stops,
                        std::size_t max_phrase_len = kDefaultRakeMaxPhraseLen);
std::vector<RakePhrase> rake_extract(const TokenizedDoc& doc, const StopwordList& stops,
                                     std::size_t max_phrase_len = kDefaultRakeMaxPhraseLen);

// ---------------------------------------------------------------- TextRank

struct SentenceScore {
    std::size_t sentence_index = 0;
    double score = 0.0;
};

struct TextRankOptions {
    double damping = 0.85;
    double eps = 1e-6;
    std::size_t max_iter = 100;
};

struct TextRankResult {
    std::vector<SentenceScore> ranked;  // score desc, ties by index asc
    std::vector<double> max_deltas;     // one entry per iteration run
    bool converged = false;
};

// Edge weight between sentences i and j of `doc`.
double sentence_similarity(const TokenizedDoc& doc, std::size_t i, std::size_t j);

TextRankResult textrank_run(const TokenizedDoc& doc, const TextRankOptions& options = {});
std::vector<SentenceScore> textrank_sentences(const TokenizedDoc& doc, const TextRankOptions& options = {});

// ---------------------------------------------------------------- skills

struct SkillSet {
    std::set<std::string> skills;
    std::map<std::string, std::set<std::string>> evidence;  // skill_id -> matched spans

    bool contains(const std::string& id) const { return skills.count(id) != 0; }
    void insert(const std::string& id, const std::string& span = {});
    void merge(const SkillSet& other);
    bool operator==(const SkillSet&) const = default;
};

// Taxonomy surface forms run through the text pipeline and indexed by token
// sequence for greedy longest-match scanning.
class SkillMatcher {
public:
    SkillMatcher() = default;
    SkillMatcher(const SkillTaxonomy& taxonomy, const ContractionTable& contractions);

    SkillSet match(const TokenizedDoc& doc) const;
    std::size_t pattern_count() const { return patterns_.size(); }
    std::size_t max_pattern_len() const { return max_len_; }

private:
    std::map<std::vector<std::string>, std::string> patterns_;
    std::size_t max_len_ = 0;
};

SkillSet extract_skills(const TokenizedDoc& doc, const SkillMatcher& matcher);
SkillSet extract_skills(const TokenizedDoc& doc, const SkillTaxonomy& taxonomy,
                        const ContractionTable& contractions = ContractionTable::english());

}  // namespace crs
