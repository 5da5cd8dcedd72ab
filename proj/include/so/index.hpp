#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "so/corpus.hpp"
#include "so/query.hpp"

namespace so {

struct Posting {
    std::uint32_t doc_id;
    std::vector<std::uint32_t> positions;  // strictly increasing
};

struct IndexBuildOptions {
    bool skip_bad_docs = false;  // otherwise the first bad document fails the build
    unsigned threads = 0;        // 0 = hardware concurrency
};

// Immutable positional inverted index.  doc_ids are dense 0..N-1 in input
// order.  All query methods are const and safe to call concurrently.
class PositionalIndex {
public:
    PositionalIndex() = default;

    // Tokenizes and indexes `docs`.  Deterministic: the same input sequence
    // yields an identical index regardless of thread count.  Documents that
    // fail to decode are reported to `skipped` and dropped when
    // opts.skip_bad_docs is set; otherwise the build throws.
    static PositionalIndex build(const std::vector<RawDocument>& docs,
                                 const IndexBuildOptions& opts = {},
                                 std::vector<std::string>* skipped = nullptr);

    std::size_t doc_count() const { return source_names_.size(); }
    std::size_t vocab_size() const { return terms_.size(); }
    const std::vector<std::string>& source_names() const { return source_names_; }

    bool has_term(const std::string& term) const;
    // Number of documents containing the term (0 for unknown terms).
    std::size_t doc_frequency(const std::string& term) const;
    // Total number of occurrences across the corpus (0 for unknown terms).
    std::uint64_t collection_frequency(const std::string& term) const;

    // Number of distinct documents matching the query.  Unknown terms match
    // nothing.  Throws UnsupportedQueryError for NEAR over operands other
    // than Term / Or-of-Terms.
    std::size_t hits(const Query& query) const;

    // Matching doc_ids, ascending.
    std::vector<std::uint32_t> matching_docs(const Query& query) const;

    // New index over the documents whose source_name matches the glob
    // (fnmatch syntax, '*' also crosses '/').  doc_ids are re-densified in
    // the original order.  A pattern matching nothing yields an empty index.
    PositionalIndex subset(const std::string& source_pattern) const;

    // Versioned binary snapshot ("SOIX"); see docs/formats.md.
    void save(const std::string& path) const;
    static PositionalIndex load(const std::string& path);

private:
    std::vector<std::string> source_names_;       // doc_id -> source
    std::vector<std::string> terms_;              // term_id -> term
    std::vector<std::vector<Posting>> postings_;  // term_id -> postings
    std::unordered_map<std::string, std::uint32_t> vocab_;  // term -> term_id

    std::int64_t term_id(const std::string& term) const;  // -1 if unknown
    std::vector<std::uint32_t> eval(const Query& q) const;
    std::vector<std::uint32_t> eval_near(const Query& q) const;
    void rebuild_vocab();  // vocab_ from terms_; call after terms_ changes
};

}  // namespace so
