#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace so {

// One word occurrence.  `position` is the index within the document's token
// sequence; positions are consecutive integers starting at 0.
struct Token {
    std::string text;       // lowercased word form
    std::uint32_t position; // 0-based token index

    bool operator==(const Token&) const = default;
};

// Splits UTF-8 text into tokens: maximal runs of letters/digits, lowercased
// with the Unicode simple mapping.  Everything else separates tokens.
// Throws EncodingError on malformed UTF-8 (`source` names the input in the
// message).
std::vector<Token> tokenize(std::string_view raw_text,
                            const std::string& source = "<input>");

// True if `word` tokenizes to exactly one token equal to itself, i.e. it can
// be used directly as a query term.
bool is_single_term(const std::string& word);

// Lowercases one word with the same mapping the tokenizer applies.
// Throws EncodingError on malformed UTF-8.
std::string lower_word(std::string_view word);

}  // namespace so
