#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "so/index.hpp"
#include "so/orientation.hpp"
#include "so/query.hpp"

namespace so {

// Anything that can answer document-hit-count queries.  The local index is
// the only implementation shipped; the interface keeps the door open for a
// remote engine.  Answers must be consistent for the provider's lifetime
// and hits() must be callable concurrently.
class HitProvider {
public:
    virtual ~HitProvider() = default;
    virtual std::size_t hits(const Query& query) const = 0;
    virtual std::size_t doc_count() const = 0;
};

class IndexHitProvider final : public HitProvider {
public:
    explicit IndexHitProvider(const PositionalIndex& index) : index_(&index) {}
    std::size_t hits(const Query& query) const override {
        return index_->hits(query);
    }
    std::size_t doc_count() const override { return index_->doc_count(); }

private:
    const PositionalIndex* index_;
};

struct PmiConfig {
    double smoothing = 0.01;  // added to every raw hit count
    int near_window = kDefaultNearWindow;

    void validate() const;
};

// Smoothed hit counts of the two paradigm disjunction queries; computed
// once per provider+paradigms+config and reused across words.
struct PmiCache {
    double p_query_hits = 0.0;
    double n_query_hits = 0.0;

    static PmiCache compute(const HitProvider& provider,
                            const ParadigmSet& paradigms,
                            const PmiConfig& config);
};

// Pointwise mutual information between two words with hit-fraction
// probability estimates:
//   log2( (h12/N) / ((h1/N) * (h2/N)) )
// where h12 counts documents matching word1 NEAR word2 and each count has
// config.smoothing added.  May return +-inf when smoothing is 0 and a count
// is zero.  Throws EmptyCorpusError on an empty corpus and ValidationError
// if either word does not tokenize to a single term.
double pmi(const HitProvider& provider, const std::string& word1,
           const std::string& word2, const PmiConfig& config = {});

// SO-PMI:
//   log2( (hits(word NEAR p_query) * n_query_hits)
//       / (hits(word NEAR n_query) * p_query_hits) )
// with every count smoothed.  The single-word form throws on unscoreable
// words; score_word_pmi reports per-word failure instead and carries the
// "low-evidence" flag (both raw NEAR counts zero) and the "zero" flag.
SOScore so_pmi(const HitProvider& provider, const std::string& word,
               const ParadigmSet& paradigms, const PmiConfig& config,
               const PmiCache& cache);

WordOutcome score_word_pmi(const HitProvider& provider, const std::string& word,
                           const ParadigmSet& paradigms, const PmiConfig& config,
                           const PmiCache& cache);

// Computes the cache once (two provider queries), then scores each word with
// exactly two queries.  Output order matches input order regardless of the
// thread count; per-word failures become failure records, not aborts.
std::vector<WordOutcome> so_pmi_batch(const HitProvider& provider,
                                      const std::vector<std::string>& words,
                                      const ParadigmSet& paradigms,
                                      const PmiConfig& config = {},
                                      unsigned threads = 0);

}  // namespace so
