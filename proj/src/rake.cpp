#include <algorithm>
#include <set>

#include "crs/extract.hpp"

namespace crs {

std::string RakePhrase::text() const {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

RakeResult rake_analyze(const TokenizedDoc& doc, const StopwordList& stops, std::size_t max_phrase_len) {
    max_phrase_len = std::max<std::size_t>(max_phrase_len, 1);

    // Candidate occurrences: maximal non-stopword runs inside a sentence,
    // cut into pieces of at most max_phrase_len tokens.
    std::vector<std::vector<std::string>> candidates;
    auto collect = [&](std::size_t begin, std::size_t end) {
        std::vector<std::string> run;
        auto flush = [&] {
            for (std::size_t i = 0; i < run.size(); i += max_phrase_len) {
                auto last = std::min(run.size(), i + max_phrase_len);
                candidates.emplace_back(run.begin() + static_cast<std::ptrdiff_t>(i),
                                        run.begin() + static_cast<std::ptrdiff_t>(last));
            }
            run.clear();
        };
        for (std::size_t i = begin; i < end; ++i) {
            if (stops.contains(doc.tokens[i])) flush();
            else run.push_back(doc.tokens[i]);
        }
        flush();
    };
    if (doc.sentences.empty()) {
        collect(0, doc.tokens.size());
    } else {
        for (const auto& s : doc.sentences) collect(s.begin, s.end);
    }

    std::map<std::string, double> degree, frequency;
    for (const auto& c : candidates) {
        for (const auto& w : c) {
            degree[w] += static_cast<double>(c.size());
            frequency[w] += 1.0;
        }
    }

    RakeResult result;
    for (const auto& [w, deg] : degree) result.word_scores[w] = deg / frequency[w];

    std::set<std::vector<std::string>> unique(candidates.begin(), candidates.end());
    for (const auto& tokens : unique) {
        double score = 0.0;
        for (const auto& w : tokens) score += result.word_scores[w];
        result.phrases.push_back({tokens, score});
    }
    std::stable_sort(result.phrases.begin(), result.phrases.end(),
                     [](const RakePhrase& a, const RakePhrase& b) { return a.score > b.score; });
    return result;
}

std::vector<RakePhrase> rake_extract(const TokenizedDoc& doc, const StopwordList& stops,
                                     std::size_t max_phrase_len) {
    return rake_analyze(doc, stops, max_phrase_len).phrases;
}

}  // namespace crs
