#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace so {

// Base class for all data/input errors raised by the library.  The CLI maps
// these to exit code 2; usage errors are handled by the argument parser.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class EncodingError : public Error {
public:
    EncodingError(const std::string& source, std::size_t byte_offset)
        : Error("invalid UTF-8 in " + source + " at byte " +
                std::to_string(byte_offset)),
          source_(source), byte_offset_(byte_offset) {}
    const std::string& source() const { return source_; }
    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::string source_;
    std::size_t byte_offset_;
};

// NEAR over operand shapes other than Term / Or-of-Terms.
class UnsupportedQueryError : public Error {
public:
    using Error::Error;
};

class QueryParseError : public Error {
public:
    using Error::Error;
};

class EmptyCorpusError : public Error {
public:
    using Error::Error;
};

// A word required to be in the LSA vocabulary is not.
class MissingWordError : public Error {
public:
    explicit MissingWordError(const std::string& word)
        : Error("word not in vocabulary: " + word), word_(word) {}
    explicit MissingWordError(const std::vector<std::string>& words)
        : Error(join(words)), word_(words.empty() ? "" : words.front()),
          words_(words) {}
    const std::string& word() const { return word_; }
    const std::vector<std::string>& words() const { return words_; }

private:
    static std::string join(const std::vector<std::string>& ws) {
        std::string msg = "words not in vocabulary:";
        for (const auto& w : ws) msg += " " + w;
        return msg;
    }
    std::string word_;
    std::vector<std::string> words_;
};

// A text with no scoreable word has no average orientation.
class EmptyVerdictError : public Error {
public:
    using Error::Error;
};

class UndefinedSimilarityError : public Error {
public:
    explicit UndefinedSimilarityError(const std::string& detail)
        : Error("undefined similarity: " + detail) {}
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace so
