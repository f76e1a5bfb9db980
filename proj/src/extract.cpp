#include "crs/extract.hpp"

#include <cmath>
#include <unordered_map>

#include "crs/error.hpp"

namespace crs {

void WeightedTermVector::set(const std::string& term, double w) {
    if (w > 0.0) {
        entries[term] = w;
    } else if (auto it = entries.find(term); it != entries.end()) {
        entries.erase(it);
    }
}

double WeightedTermVector::norm() const {
    double sum = 0.0;
    for (const auto& [t, w] : entries) sum += w * w;
    return std::sqrt(sum);
}

WeightedTermVector WeightedTermVector::normalized() const {
    WeightedTermVector out;
    double n = norm();
    if (n == 0.0) return out;
    for (const auto& [t, w] : entries) out.set(t, w / n);
    return out;
}

CorpusStats build_corpus_stats(const std::vector<TokenizedDoc>& docs, const StopwordList& stops) {
    if (docs.empty()) throw Error(ErrorCode::empty_input, "corpus statistics need at least one document");
    CorpusStats stats;
    stats.n = docs.size();
    for (const auto& doc : docs) {
        std::set<std::string_view> seen(doc.tokens.begin(), doc.tokens.end());
        for (auto t : seen) {
            if (stops.contains(t)) continue;
            auto it = stats.doc_freq.find(t);
            if (it == stats.doc_freq.end()) stats.doc_freq.emplace(std::string(t), 1);
            else ++it->second;
        }
    }
    return stats;
}

double term_frequency(std::string_view term, const TokenizedDoc& doc) {
    if (doc.tokens.empty()) throw Error(ErrorCode::empty_input, "term frequency of an empty document");
    std::size_t count = 0;
    for (const auto& t : doc.tokens) count += (t == term);
    return static_cast<double>(count) / static_cast<double>(doc.tokens.size());
}

std::optional<double> inverse_document_frequency(std::string_view term, const CorpusStats& stats) {
    auto it = stats.doc_freq.find(term);
    if (it == stats.doc_freq.end() || it->second == 0) return std::nullopt;
    return std::log(static_cast<double>(stats.n) / static_cast<double>(it->second));
}

WeightedTermVector tfidf_vector(const TokenizedDoc& doc, const CorpusStats& stats, const StopwordList* stops) {
    if (doc.tokens.empty()) throw Error(ErrorCode::empty_input, "TF-IDF of an empty document");
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto& t : doc.tokens) ++counts[t];

    const double len = static_cast<double>(doc.tokens.size());
    WeightedTermVector v;
    for (const auto& [term, count] : counts) {
        if (stops && stops->contains(term)) continue;
        auto idf = inverse_document_frequency(term, stats);
        if (!idf) continue;
        v.set(std::string(term), (static_cast<double>(count) / len) * *idf);
    }
    return v;
}

// ---------------------------------------------------------------- skills

void SkillSet::insert(const std::string& id, const std::string& span) {
    skills.insert(id);
    if (!span.empty()) evidence[id].insert(span);
}

void SkillSet::merge(const SkillSet& other) {
    skills.insert(other.skills.begin(), other.skills.end());
    for (const auto& [id, spans] : other.evidence) evidence[id].insert(spans.begin(), spans.end());
}

SkillMatcher::SkillMatcher(const SkillTaxonomy& taxonomy, const ContractionTable& contractions) {
    for (const auto& entry : taxonomy.entries()) {
        std::vector<std::string> surfaces{entry.skill_id, entry.display_name};
        surfaces.insert(surfaces.end(), entry.aliases.begin(), entry.aliases.end());
        for (const auto& surface : surfaces) {
            auto tokens = preprocess({}, surface, contractions).tokens;
            if (tokens.empty()) continue;
            max_len_ = std::max(max_len_, tokens.size());
            auto [it, inserted] = patterns_.emplace(std::move(tokens), entry.skill_id);
            // Distinct surfaces can collapse to the same tokens ("C++" and "C#"
            // both become "c"); the smallest skill_id keeps the pattern so the
            // result does not depend on taxonomy order.
            if (!inserted && entry.skill_id < it->second) it->second = entry.skill_id;
        }
    }
}

SkillSet SkillMatcher::match(const TokenizedDoc& doc) const {
    SkillSet out;
    if (patterns_.empty()) return out;
    auto scan = [&](std::size_t begin, std::size_t end) {
        std::size_t i = begin;
        std::vector<std::string> key;
        while (i < end) {
            std::size_t longest = std::min(max_len_, end - i);
            bool matched = false;
            for (std::size_t len = longest; len >= 1; --len) {
                key.assign(doc.tokens.begin() + static_cast<std::ptrdiff_t>(i),
                           doc.tokens.begin() + static_cast<std::ptrdiff_t>(i + len));
                auto it = patterns_.find(key);
                if (it == patterns_.end()) continue;
                std::string span;
                for (const auto& t : key) {
                    if (!span.empty()) span += ' ';
                    span += t;
                }
                out.insert(it->second, span);
                i += len;
                matched = true;
                break;
            }
            if (!matched) ++i;
        }
    };
    if (doc.sentences.empty()) {
        scan(0, doc.tokens.size());
    } else {
        for (const auto& s : doc.sentences) scan(s.begin, s.end);
    }
    return out;
}

SkillSet extract_skills(const TokenizedDoc& doc, const SkillMatcher& matcher) { return matcher.match(doc); }

SkillSet extract_skills(const TokenizedDoc& doc, const SkillTaxonomy& taxonomy,
                        const ContractionTable& contractions) {
    return SkillMatcher(taxonomy, contractions).match(doc);
}

}  // namespace crs
