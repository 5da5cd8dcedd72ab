#include "so/tokenize.hpp"

#include <algorithm>
#include <iterator>

#include "so/errors.hpp"
#include "so/unicode_tables.hpp"

namespace so {

namespace {

bool is_word_cp(char32_t cp) {
    const auto* end = std::end(detail::kWordRanges);
    auto it = std::upper_bound(std::begin(detail::kWordRanges), end, cp,
                               [](char32_t v, const detail::CpRange& r) {
                                   return v < r.first;
                               });
    if (it == std::begin(detail::kWordRanges)) return false;
    --it;
    return cp <= it->last;
}

char32_t lower_cp(char32_t cp) {
    const auto* end = std::end(detail::kLowerMap);
    auto it = std::lower_bound(std::begin(detail::kLowerMap), end, cp,
                               [](const detail::CpPair& p, char32_t v) {
                                   return p.from < v;
                               });
    if (it != end && it->from == cp) return it->to;
    return cp;
}

// Decodes the code point starting at `i`, advancing `i`.  Returns false on
// malformed input (overlong forms, surrogates, out-of-range, truncation).
bool decode_utf8(std::string_view s, std::size_t& i, char32_t& cp) {
    const auto byte = [&](std::size_t k) {
        return static_cast<unsigned char>(s[k]);
    };
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
        cp = b0;
        i += 1;
        return true;
    }
    int len;
    char32_t min;
    if ((b0 & 0xE0) == 0xC0) { len = 2; cp = b0 & 0x1F; min = 0x80; }
    else if ((b0 & 0xF0) == 0xE0) { len = 3; cp = b0 & 0x0F; min = 0x800; }
    else if ((b0 & 0xF8) == 0xF0) { len = 4; cp = b0 & 0x07; min = 0x10000; }
    else return false;
    if (i + len > s.size()) return false;
    for (int k = 1; k < len; ++k) {
        unsigned char b = byte(i + k);
        if ((b & 0xC0) != 0x80) return false;
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        return false;
    i += len;
    return true;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

std::vector<Token> tokenize(std::string_view raw_text,
                            const std::string& source) {
    std::vector<Token> tokens;
    std::string current;
    std::uint32_t next_position = 0;

    const auto flush = [&] {
        if (current.empty()) return;
        tokens.push_back({std::move(current), next_position++});
        current.clear();
    };

    std::size_t i = 0;
    while (i < raw_text.size()) {
        char32_t cp;
        std::size_t at = i;
        if (!decode_utf8(raw_text, i, cp)) throw EncodingError(source, at);
        if (is_word_cp(cp)) {
            append_utf8(current, lower_cp(cp));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

bool is_single_term(const std::string& word) {
    std::vector<Token> toks;
    try {
        toks = tokenize(word);
    } catch (const EncodingError&) {
        return false;
    }
    return toks.size() == 1 && toks[0].text == word;
}

std::string lower_word(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    std::size_t i = 0;
    while (i < word.size()) {
        char32_t cp;
        std::size_t at = i;
        if (!decode_utf8(word, i, cp)) throw EncodingError("<word>", at);
        append_utf8(out, lower_cp(cp));
    }
    return out;
}

}  // namespace so
