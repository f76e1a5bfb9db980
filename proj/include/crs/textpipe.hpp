#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crs {

// Contracted surface form -> expansion. Keys are lowercase, expansions carry
// no apostrophes; both are enforced by add().
class ContractionTable {
public:
    ContractionTable() = default;

    // Built-in table of common English contractions.
    static ContractionTable english();
    // contractions.tsv: surface<TAB>expansion per line; '#' starts a comment.
    static ContractionTable load(const std::filesystem::path& path);

    void add(std::string surface, std::string expansion);
    const std::string* find(std::string_view lowered) const;
    std::size_t size() const { return map_.size(); }
    const std::unordered_map<std::string, std::string>& entries() const { return map_; }

private:
    std::unordered_map<std::string, std::string> map_;
};

class StopwordList {
public:
    StopwordList() = default;
    explicit StopwordList(std::set<std::string> words);

    static StopwordList english();
    // stopwords.txt: one term per line.
    static StopwordList load(const std::filesystem::path& path);

    bool contains(std::string_view term) const { return words_.find(term) != words_.end(); }
    const std::set<std::string, std::less<>>& words() const { return words_; }
    bool empty() const { return words_.empty(); }

private:
    std::set<std::string, std::less<>> words_;
};

struct SentenceRange {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive

    std::size_t size() const { return end - begin; }
    bool operator==(const SentenceRange&) const = default;
};

struct TokenizedDoc {
    std::string doc_id;
    std::vector<std::string> tokens;
    std::vector<SentenceRange> sentences;

    bool operator==(const TokenizedDoc&) const = default;
};

// Normalised text plus the token count at each sentence terminator.
struct NormalizedText {
    std::string text;
    std::vector<std::size_t> sentence_ends;
};

std::string strip_html(std::string_view raw);
std::string expand_contractions(std::string_view text, const ContractionTable& table);
std::string normalize_text(std::string_view text);
NormalizedText normalize_with_boundaries(std::string_view text);
std::vector<std::string> tokenize(std::string_view normalized);
std::string lemmatize(std::string_view term);

// Converts recorded sentence ends into ranges partitioning [0, token_count).
std::vector<SentenceRange> sentence_ranges(const std::vector<std::size_t>& sentence_ends,
                                           std::size_t token_count);

TokenizedDoc preprocess(std::string doc_id, std::string_view raw, const ContractionTable& table);

// Contraction table and stopwords bundled for callers that run the full pipeline.
struct TextPipeline {
    ContractionTable contractions = ContractionTable::english();
    StopwordList stopwords = StopwordList::english();

    TokenizedDoc run(std::string doc_id, std::string_view raw) const {
        return preprocess(std::move(doc_id), raw, contractions);
    }
};

}  // namespace crs
