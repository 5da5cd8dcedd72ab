#include "so/pmi.hpp"

#include <cmath>
#include <optional>
#include <thread>

#include "so/errors.hpp"
#include "so/tokenize.hpp"

namespace so {

namespace {

std::optional<std::string> single_term_of(const std::string& word) {
    std::vector<Token> toks;
    try {
        toks = tokenize(word, "<word>");
    } catch (const EncodingError&) {
        return std::nullopt;
    }
    if (toks.size() != 1) return std::nullopt;
    return std::move(toks[0].text);
}

std::string require_single_term(const std::string& word) {
    auto term = single_term_of(word);
    if (!term)
        throw ValidationError("word does not tokenize to a single term: '" +
                              word + "'");
    return *term;
}

Query paradigm_disjunction(const std::vector<std::string>& words) {
    std::vector<Query> terms;
    terms.reserve(words.size());
    for (const auto& w : words) terms.push_back(Query::Term(w));
    return Query::Or(std::move(terms));
}

}  // namespace

void PmiConfig::validate() const {
    if (smoothing < 0.0)
        throw ValidationError("smoothing must be >= 0");
    if (!(smoothing == smoothing))
        throw ValidationError("smoothing must not be NaN");
    if (near_window < 1)
        throw ValidationError("NEAR window must be >= 1");
}

PmiCache PmiCache::compute(const HitProvider& provider,
                           const ParadigmSet& paradigms,
                           const PmiConfig& config) {
    config.validate();
    if (provider.doc_count() == 0)
        throw EmptyCorpusError("cannot score against an empty corpus");
    PmiCache cache;
    cache.p_query_hits =
        config.smoothing +
        static_cast<double>(provider.hits(paradigm_disjunction(paradigms.positives())));
    cache.n_query_hits =
        config.smoothing +
        static_cast<double>(provider.hits(paradigm_disjunction(paradigms.negatives())));
    if (cache.p_query_hits <= 0.0 || cache.n_query_hits <= 0.0)
        throw ValidationError(
            "paradigm disjunction has zero hits and smoothing is 0; "
            "increase smoothing or use a corpus containing the paradigm words");
    return cache;
}

double pmi(const HitProvider& provider, const std::string& word1,
           const std::string& word2, const PmiConfig& config) {
    config.validate();
    const double n = static_cast<double>(provider.doc_count());
    if (n == 0.0) throw EmptyCorpusError("cannot score against an empty corpus");
    const std::string t1 = require_single_term(word1);
    const std::string t2 = require_single_term(word2);

    const double h12 =
        config.smoothing +
        static_cast<double>(provider.hits(
            Query::Near(Query::Term(t1), Query::Term(t2), config.near_window)));
    const double h1 =
        config.smoothing + static_cast<double>(provider.hits(Query::Term(t1)));
    const double h2 =
        config.smoothing + static_cast<double>(provider.hits(Query::Term(t2)));
    return std::log2((h12 / n) / ((h1 / n) * (h2 / n)));
}

namespace {

// Shared by so_pmi and score_word_pmi: the Eq.-3 ratio plus the raw counts
// needed for flagging.
struct PmiParts {
    double value;
    std::size_t raw_hp;
    std::size_t raw_hn;
};

PmiParts so_pmi_parts(const HitProvider& provider, const std::string& term,
                      const ParadigmSet& paradigms, const PmiConfig& config,
                      const PmiCache& cache) {
    const Query word_q = Query::Term(term);
    const std::size_t raw_hp = provider.hits(Query::Near(
        word_q, paradigm_disjunction(paradigms.positives()), config.near_window));
    const std::size_t raw_hn = provider.hits(Query::Near(
        word_q, paradigm_disjunction(paradigms.negatives()), config.near_window));
    const double hp = config.smoothing + static_cast<double>(raw_hp);
    const double hn = config.smoothing + static_cast<double>(raw_hn);
    // Single-rounding ratio: corpus duplication scales all four counts by a
    // power of two and leaves the quotient bit-identical.
    const double value = std::log2((hp * cache.n_query_hits) /
                                   (hn * cache.p_query_hits));
    return {value, raw_hp, raw_hn};
}

}  // namespace

SOScore so_pmi(const HitProvider& provider, const std::string& word,
               const ParadigmSet& paradigms, const PmiConfig& config,
               const PmiCache& cache) {
    config.validate();
    if (provider.doc_count() == 0)
        throw EmptyCorpusError("cannot score against an empty corpus");
    const std::string term = require_single_term(word);
    return {word, so_pmi_parts(provider, term, paradigms, config, cache).value,
            Method::pmi};
}

WordOutcome score_word_pmi(const HitProvider& provider, const std::string& word,
                           const ParadigmSet& paradigms, const PmiConfig& config,
                           const PmiCache& cache) {
    WordOutcome outcome;
    outcome.word = word;
    auto term = single_term_of(word);
    if (!term) {
        outcome.error = "does not tokenize to a single term";
        return outcome;
    }
    const auto parts = so_pmi_parts(provider, *term, paradigms, config, cache);
    outcome.score = SOScore{word, parts.value, Method::pmi};
    if (parts.raw_hp + parts.raw_hn == 0)
        outcome.flags.push_back("low-evidence");
    if (classify(parts.value).zero_flag) outcome.flags.push_back("zero");
    return outcome;
}

std::vector<WordOutcome> so_pmi_batch(const HitProvider& provider,
                                      const std::vector<std::string>& words,
                                      const ParadigmSet& paradigms,
                                      const PmiConfig& config, unsigned threads) {
    config.validate();
    if (words.empty())
        throw ValidationError("so_pmi_batch requires a non-empty word list");
    const PmiCache cache = PmiCache::compute(provider, paradigms, config);

    std::vector<WordOutcome> outcomes(words.size());
    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            outcomes[i] =
                score_word_pmi(provider, words[i], paradigms, config, cache);
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned t = threads == 0 ? hw : threads;
    if (t > words.size()) t = static_cast<unsigned>(words.size());
    if (t <= 1) {
        worker(0, words.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (words.size() + t - 1) / t;
        for (unsigned i = 0; i < t; ++i) {
            std::size_t begin = i * chunk;
            std::size_t end = std::min(words.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return outcomes;
}

}  // namespace so
