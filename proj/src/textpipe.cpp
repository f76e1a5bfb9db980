#include "crs/textpipe.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <utility>

#include "crs/error.hpp"
#include "crs/ingest.hpp"

namespace crs {

namespace {

bool is_alnum(unsigned char c) { return std::isalnum(c) != 0 && c < 0x80; }
bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
char lower(unsigned char c) { return static_cast<char>(std::tolower(c)); }

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return lower(c); });
    return out;
}

// ---------------------------------------------------------------- html

constexpr std::array<std::string_view, 14> kInlineTags = {
    "a", "abbr", "b", "code", "em", "font", "i", "mark", "small", "span", "strong", "sub", "sup", "u"};

bool is_inline_tag(std::string_view name) {
    return std::find(kInlineTags.begin(), kInlineTags.end(), name) != kInlineTags.end();
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x110000) {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Decodes the entity starting at raw[i] == '&'. Returns consumed length, 0 if
// not a recognised entity.
std::size_t decode_entity(std::string_view raw, std::size_t i, std::string& out) {
    auto semi = raw.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) return 0;
    std::string_view body = raw.substr(i + 1, semi - i - 1);
    static constexpr std::pair<std::string_view, std::string_view> kNamed[] = {
        {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}, {"nbsp", " "}};
    for (const auto& [name, text] : kNamed) {
        if (body == name) {
            out += text;
            return semi - i + 1;
        }
    }
    if (body.size() >= 2 && body[0] == '#') {
        bool hex = body[1] == 'x' || body[1] == 'X';
        std::string_view digits = body.substr(hex ? 2 : 1);
        if (digits.empty()) return 0;
        unsigned long cp = 0;
        for (char c : digits) {
            int v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (hex && c >= 'a' && c <= 'f') v = c - 'a' + 10;
            else if (hex && c >= 'A' && c <= 'F') v = c - 'A' + 10;
            else return 0;
            cp = cp * (hex ? 16 : 10) + static_cast<unsigned long>(v);
            if (cp > 0x10FFFF) return 0;
        }
        if (cp == 0xA0) cp = ' ';
        append_utf8(out, cp);
        return semi - i + 1;
    }
    return 0;
}

// ---------------------------------------------------------------- lemmatizer

const std::unordered_map<std::string_view, std::string_view>& irregular_forms() {
    static const std::unordered_map<std::string_view, std::string_view> table = {
        {"children", "child"}, {"men", "man"},       {"women", "woman"},    {"people", "person"},
        {"mice", "mouse"},     {"feet", "foot"},     {"teeth", "tooth"},    {"geese", "goose"},
        {"went", "go"},        {"gone", "go"},       {"taught", "teach"},   {"thought", "think"},
        {"brought", "bring"},  {"bought", "buy"},    {"built", "build"},    {"wrote", "write"},
        {"written", "write"},  {"ran", "run"},       {"made", "make"},      {"used", "use"},
        {"using", "use"},      {"analyses", "analysis"}, {"criteria", "criterion"}, {"indices", "index"},
        {"matrices", "matrix"}, {"vertices", "vertex"},
    };
    return table;
}

const std::unordered_map<std::string_view, bool>& lemma_exceptions() {
    static const std::unordered_map<std::string_view, bool> table = [] {
        std::unordered_map<std::string_view, bool> t;
        for (std::string_view w :
             {"this", "his", "is", "was", "has", "does", "yes", "us", "its", "always", "perhaps", "thus",
              "plus", "across", "various", "previous", "famous", "series", "species", "news", "physics",
              "mathematics", "statistics", "economics", "analytics", "robotics", "graphics", "ethics",
              "logistics", "linguistics", "electronics", "genetics", "kubernetes", "pandas", "aws", "ios",
              "macos", "windows", "nothing", "something", "anything", "everything", "during", "morning",
              "evening", "ceiling", "bring", "spring", "string", "thing", "king", "ring", "sing", "wing",
              "bed", "red", "need", "speed", "seed", "feed", "indeed", "hundred", "sacred", "naked",
              "wicked", "hatred", "kindred", "yourselves", "ourselves", "themselves", "theirs", "yours",
              "ours", "hers", "whereas", "alias", "atlas", "canvas", "bias", "gas", "less", "unless"}) {
            t.emplace(w, true);
        }
        return t;
    }();
    return table;
}

bool is_vowel_at(std::string_view w, std::size_t i) {
    switch (w[i]) {
        case 'a': case 'e': case 'i': case 'o': case 'u': return true;
        case 'y': return i > 0 && !is_vowel_at(w, i - 1);
        default: return false;
    }
}

bool has_vowel(std::string_view w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_vowel_at(w, i)) return true;
    }
    return false;
}

// Number of vowel->consonant transitions (the classic "measure").
int measure(std::string_view w) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        bool v = is_vowel_at(w, i);
        if (prev_vowel && !v) ++m;
        prev_vowel = v;
    }
    return m;
}

bool ends_cvc(std::string_view w) {
    auto n = w.size();
    if (n < 3) return false;
    char last = w[n - 1];
    return !is_vowel_at(w, n - 3) && is_vowel_at(w, n - 2) && !is_vowel_at(w, n - 1) && last != 'w' &&
           last != 'x' && last != 'y';
}

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

// Undoubles a trailing consonant pair or restores a silent e after -ing/-ed.
std::string finish_verb_stem(std::string stem) {
    auto n = stem.size();
    if (n >= 2 && stem[n - 1] == stem[n - 2] && !is_vowel_at(stem, n - 1) && stem[n - 1] != 'l' &&
        stem[n - 1] != 's' && stem[n - 1] != 'z') {
        stem.pop_back();
    } else if (measure(stem) == 1 && ends_cvc(stem)) {
        stem += 'e';
    }
    return stem;
}

bool is_builtin_stopword(std::string_view w);

// One application of the rule cascade; returns the input when no rule fires.
std::string lemma_step(const std::string& w) {
    if (auto it = irregular_forms().find(w); it != irregular_forms().end()) return std::string(it->second);
    if (w.size() <= 3 || lemma_exceptions().count(w) || is_builtin_stopword(w)) return w;
    if (!std::all_of(w.begin(), w.end(), [](unsigned char c) { return c >= 'a' && c <= 'z'; })) return w;

    std::string_view v = w;
    if (ends_with(v, "ies")) {
        if (w.size() > 4) return w.substr(0, w.size() - 3) + "y";
        return w.substr(0, w.size() - 1);
    }
    if (ends_with(v, "sses") || ends_with(v, "xes") || ends_with(v, "ches") || ends_with(v, "shes") ||
        ends_with(v, "zzes")) {
        return w.substr(0, w.size() - 2);
    }
    if (ends_with(v, "s")) {
        if (ends_with(v, "ss") || ends_with(v, "us") || ends_with(v, "is")) return w;
        return w.substr(0, w.size() - 1);
    }
    if (ends_with(v, "ing")) {
        std::string stem = w.substr(0, w.size() - 3);
        if (stem.size() >= 3 && has_vowel(stem)) return finish_verb_stem(std::move(stem));
        return w;
    }
    if (ends_with(v, "ed") && !ends_with(v, "eed")) {
        std::string stem = w.substr(0, w.size() - 2);
        if (stem.size() >= 3 && has_vowel(stem)) return finish_verb_stem(std::move(stem));
        return w;
    }
    return w;
}

// ---------------------------------------------------------------- data

constexpr std::pair<std::string_view, std::string_view> kContractions[] = {
    {"ain't", "am not"},       {"aren't", "are not"},       {"can't", "cannot"},
    {"couldn't", "could not"}, {"could've", "could have"},  {"didn't", "did not"},
    {"doesn't", "does not"},   {"don't", "do not"},         {"hadn't", "had not"},
    {"hasn't", "has not"},     {"haven't", "have not"},     {"he'd", "he would"},
    {"he'll", "he will"},      {"he's", "he is"},           {"how'd", "how did"},
    {"how'll", "how will"},    {"how's", "how is"},         {"i'd", "i would"},
    {"i'll", "i will"},        {"i'm", "i am"},             {"i've", "i have"},
    {"isn't", "is not"},       {"it'd", "it would"},        {"it'll", "it will"},
    {"it's", "it is"},         {"let's", "let us"},         {"ma'am", "madam"},
    {"might've", "might have"}, {"mightn't", "might not"},  {"must've", "must have"},
    {"mustn't", "must not"},   {"needn't", "need not"},     {"o'clock", "of the clock"},
    {"shan't", "shall not"},   {"she'd", "she would"},      {"she'll", "she will"},
    {"she's", "she is"},       {"should've", "should have"}, {"shouldn't", "should not"},
    {"that'd", "that would"},  {"that's", "that is"},       {"there'd", "there would"},
    {"there's", "there is"},   {"they'd", "they would"},    {"they'll", "they will"},
    {"they're", "they are"},   {"they've", "they have"},    {"wasn't", "was not"},
    {"we'd", "we would"},      {"we'll", "we will"},        {"we're", "we are"},
    {"we've", "we have"},      {"weren't", "were not"},     {"what'll", "what will"},
    {"what're", "what are"},   {"what's", "what is"},       {"what've", "what have"},
    {"where'd", "where did"},  {"where's", "where is"},     {"who'd", "who would"},
    {"who'll", "who will"},    {"who's", "who is"},         {"who've", "who have"},
    {"why's", "why is"},       {"won't", "will not"},       {"would've", "would have"},
    {"wouldn't", "would not"}, {"y'all", "you all"},        {"you'd", "you would"},
    {"you'll", "you will"},    {"you're", "you are"},       {"you've", "you have"},
};

// English stopword list (apostrophe-free forms).
constexpr std::string_view kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours", "yourself",
    "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself", "it", "its", "itself",
    "they", "them", "their", "theirs", "themselves", "what", "which", "who", "whom", "this", "that",
    "these", "those", "am", "is", "are", "was", "were", "be", "been", "being", "have", "has", "had",
    "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because", "as",
    "until", "while", "of", "at", "by", "for", "with", "about", "against", "between", "into", "through",
    "during", "before", "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off",
    "over", "under", "again", "further", "then", "once", "here", "there", "when", "where", "why", "how",
    "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not",
    "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will", "just", "don", "should",
    "now", "d", "ll", "m", "o", "re", "ve", "y", "ain", "aren", "couldn", "didn", "doesn", "hadn",
    "hasn", "haven", "isn", "ma", "mightn", "mustn", "needn", "shan", "shouldn", "wasn", "weren", "won",
    "wouldn", "cannot", "could", "would", "also", "via", "etc", "e", "g", "ie", "eg", "within",
    "without", "upon", "among", "across", "per", "may", "might", "must", "shall", "us", "let",
};

bool is_builtin_stopword(std::string_view w) {
    static const std::set<std::string_view> set(std::begin(kStopwords), std::end(kStopwords));
    return set.count(w) != 0;
}

}  // namespace

// ---------------------------------------------------------------- tables

void ContractionTable::add(std::string surface, std::string expansion) {
    for (char& c : surface) {
        if (c != lower(static_cast<unsigned char>(c))) {
            throw Error(ErrorCode::invalid_argument, "contraction key '" + surface + "' is not lowercase");
        }
    }
    if (surface.empty()) throw Error(ErrorCode::invalid_argument, "empty contraction key");
    if (expansion.find('\'') != std::string::npos) {
        throw Error(ErrorCode::invalid_argument, "expansion for '" + surface + "' contains an apostrophe");
    }
    map_[std::move(surface)] = std::move(expansion);
}

const std::string* ContractionTable::find(std::string_view lowered) const {
    auto it = map_.find(std::string(lowered));
    return it == map_.end() ? nullptr : &it->second;
}

ContractionTable ContractionTable::english() {
    ContractionTable t;
    for (const auto& [k, v] : kContractions) t.add(std::string(k), std::string(v));
    return t;
}

ContractionTable ContractionTable::load(const std::filesystem::path& path) {
    ContractionTable t = english();
    auto text = read_text_file(path);
    std::size_t line_no = 0, pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw Error(ErrorCode::malformed, path.string() + ":" + std::to_string(line_no) + ": expected surface<TAB>expansion");
        }
        t.add(lower_ascii(line.substr(0, tab)), line.substr(tab + 1));
    }
    return t;
}

StopwordList::StopwordList(std::set<std::string> words) {
    for (auto& w : words) {
        if (w.empty()) continue;
        if (w != lower_ascii(w)) throw Error(ErrorCode::invalid_argument, "stopword '" + w + "' is not lowercase");
        words_.insert(w);
    }
    if (words_.empty()) throw Error(ErrorCode::invalid_argument, "stopword list is empty");
}

StopwordList StopwordList::english() {
    std::set<std::string> words;
    for (auto w : kStopwords) {
        words.emplace(w);
        words.insert(lemmatize(w));
    }
    return StopwordList(std::move(words));
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
    auto text = read_text_file(path);
    std::set<std::string> words;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        while (!line.empty() && is_space(static_cast<unsigned char>(line.back()))) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto w = lower_ascii(line);
        words.insert(w);
        words.insert(lemmatize(w));
    }
    return StopwordList(std::move(words));
}

// ---------------------------------------------------------------- stages

std::string strip_html(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    auto emit = [&](std::string_view s) {
        if (pending_space && !out.empty() && !is_space(static_cast<unsigned char>(out.back()))) out += ' ';
        pending_space = false;
        out += s;
    };

    std::size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (c == '<') {
            if (raw.compare(i, 4, "<!--") == 0) {
                auto end = raw.find("-->", i + 4);
                if (end != std::string_view::npos) {
                    i = end + 3;
                    continue;
                }
            }
            bool starts_tag = i + 1 < raw.size() &&
                              (std::isalpha(static_cast<unsigned char>(raw[i + 1])) || raw[i + 1] == '/' ||
                               raw[i + 1] == '!' || raw[i + 1] == '?');
            auto close = raw.find('>', i + 1);
            if (starts_tag && close != std::string_view::npos) {
                std::size_t n = i + 1;
                if (n < close && raw[n] == '/') ++n;
                std::size_t name_begin = n;
                while (n < close && std::isalnum(static_cast<unsigned char>(raw[n]))) ++n;
                auto name = lower_ascii(raw.substr(name_begin, n - name_begin));
                if (!is_inline_tag(name)) pending_space = true;
                i = close + 1;
                continue;
            }
            emit("<");
            ++i;
            continue;
        }
        if (c == '&') {
            std::string decoded;
            if (auto used = decode_entity(raw, i, decoded)) {
                emit(decoded);
                i += used;
                continue;
            }
        }
        emit(std::string_view(&raw[i], 1));
        ++i;
    }
    return out;
}

std::string expand_contractions(std::string_view text, const ContractionTable& table) {
    std::string out;
    out.reserve(text.size());
    auto is_word_byte = [&](std::size_t i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        return std::isalpha(c) || c == '\'' ||
               // U+2019 RIGHT SINGLE QUOTATION MARK: E2 80 99
               (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
                static_cast<unsigned char>(text[i + 2]) == 0x99);
    };

    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_word_byte(i)) {
            out += text[i++];
            continue;
        }
        std::size_t start = i;
        std::string key;
        while (i < text.size() && is_word_byte(i)) {
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (c == 0xE2) {
                key += '\'';
                i += 3;
            } else {
                key += lower(c);
                ++i;
            }
        }
        // Quotes wrapping a word are not part of the contraction.
        std::size_t lead = 0, trail = 0;
        while (lead < key.size() && key[lead] == '\'') ++lead;
        while (trail < key.size() - lead && key[key.size() - 1 - trail] == '\'') ++trail;
        std::string_view core(key.data() + lead, key.size() - lead - trail);
        const std::string* expansion = core.empty() ? nullptr : table.find(core);
        if (!expansion) {
            out.append(text.substr(start, i - start));
            continue;
        }
        out.append(lead, '\'');
        out += *expansion;
        out.append(trail, '\'');
    }
    return out;
}

NormalizedText normalize_with_boundaries(std::string_view text) {
    NormalizedText result;
    auto& out = result.text;
    out.reserve(text.size());
    std::size_t tokens = 0;
    bool in_word = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_alnum(c)) {
            if (!in_word) {
                if (!out.empty()) out += ' ';
                ++tokens;
                in_word = true;
            }
            out += lower(c);
            continue;
        }
        in_word = false;
        if ((c == '.' || c == '!' || c == '?') &&
            (i + 1 == text.size() || is_space(static_cast<unsigned char>(text[i + 1])))) {
            if (tokens > 0 && (result.sentence_ends.empty() || result.sentence_ends.back() != tokens)) {
                result.sentence_ends.push_back(tokens);
            }
        }
    }
    return result;
}

std::string normalize_text(std::string_view text) { return normalize_with_boundaries(text).text; }

std::vector<std::string> tokenize(std::string_view normalized) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < normalized.size()) {
        while (i < normalized.size() && !is_alnum(static_cast<unsigned char>(normalized[i]))) ++i;
        std::size_t start = i;
        while (i < normalized.size() && is_alnum(static_cast<unsigned char>(normalized[i]))) ++i;
        if (i > start) tokens.emplace_back(normalized.substr(start, i - start));
    }
    return tokens;
}

std::string lemmatize(std::string_view term) {
    std::string current(term);
    // Iterating the cascade to a fixed point makes the function idempotent;
    // every non-irregular rule shortens the word, so this terminates.
    for (int guard = 0; guard < 32; ++guard) {
        auto next = lemma_step(current);
        if (next == current) break;
        current = std::move(next);
    }
    return current;
}

std::vector<SentenceRange> sentence_ranges(const std::vector<std::size_t>& sentence_ends,
                                           std::size_t token_count) {
    std::vector<SentenceRange> ranges;
    std::size_t begin = 0;
    for (auto end : sentence_ends) {
        end = std::min(end, token_count);
        if (end > begin) {
            ranges.push_back({begin, end});
            begin = end;
        }
    }
    if (token_count > begin) ranges.push_back({begin, token_count});
    return ranges;
}

TokenizedDoc preprocess(std::string doc_id, std::string_view raw, const ContractionTable& table) {
    auto normalized = normalize_with_boundaries(expand_contractions(strip_html(raw), table));
    TokenizedDoc doc;
    doc.doc_id = std::move(doc_id);
    doc.tokens = tokenize(normalized.text);
    for (auto& t : doc.tokens) t = lemmatize(t);
    doc.sentences = sentence_ranges(normalized.sentence_ends, doc.tokens.size());
    return doc;
}

}  // namespace crs
