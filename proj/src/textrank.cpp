#include <algorithm>
#include <cmath>
#include <set>

#include "crs/extract.hpp"

namespace crs {

namespace {

std::set<std::string_view> distinct_terms(const TokenizedDoc& doc, const SentenceRange& s) {
    std::set<std::string_view> out;
    for (std::size_t i = s.begin; i < s.end; ++i) out.insert(doc.tokens[i]);
    return out;
}

double overlap_weight(const std::set<std::string_view>& a, const std::set<std::string_view>& b,
                      std::size_t len_a, std::size_t len_b) {
    std::size_t shared = 0;
    for (auto t : a) shared += b.count(t);
    if (shared == 0) return 0.0;
    return static_cast<double>(shared) /
           (std::log1p(static_cast<double>(len_a)) + std::log1p(static_cast<double>(len_b)));
}

}  // namespace

double sentence_similarity(const TokenizedDoc& doc, std::size_t i, std::size_t j) {
    const auto& a = doc.sentences.at(i);
    const auto& b = doc.sentences.at(j);
    return overlap_weight(distinct_terms(doc, a), distinct_terms(doc, b), a.size(), b.size());
}

TextRankResult textrank_run(const TokenizedDoc& doc, const TextRankOptions& options) {
    TextRankResult result;
    const std::size_t n = doc.sentences.size();
    if (n == 0) return result;

    std::vector<std::set<std::string_view>> terms;
    terms.reserve(n);
    for (const auto& s : doc.sentences) terms.push_back(distinct_terms(doc, s));

    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    std::vector<double> out_weight(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double x = overlap_weight(terms[i], terms[j], doc.sentences[i].size(), doc.sentences[j].size());
            w[i][j] = w[j][i] = x;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) out_weight[j] += w[j][k];
    }

    std::vector<double> score(n, 1.0), next(n);
    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        double max_delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (w[j][i] > 0.0) acc += w[j][i] / out_weight[j] * score[j];
            }
            next[i] = (1.0 - options.damping) + options.damping * acc;
            max_delta = std::max(max_delta, std::fabs(next[i] - score[i]));
        }
        score.swap(next);
        result.max_deltas.push_back(max_delta);
        if (max_delta < options.eps) {
            result.converged = true;
            break;
        }
    }

    for (std::size_t i = 0; i < n; ++i) result.ranked.push_back({i, score[i]});
    std::stable_sort(result.ranked.begin(), result.ranked.end(),
                     [](const SentenceScore& a, const SentenceScore& b) { return a.score > b.score; });
    return result;
}

std::vector<SentenceScore> textrank_sentences(const TokenizedDoc& doc, const TextRankOptions& options) {
    return textrank_run(doc, options).ranked;
}

}  // namespace crs
