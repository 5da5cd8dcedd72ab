#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "so/corpus.hpp"
#include "so/lsa.hpp"
#include "so/orientation.hpp"
#include "so/pmi.hpp"

namespace so {

struct LexiconEntry {
    std::string word;  // lowercase, sense suffixes stripped
    Polarity label;
};

// Reads a TSV lexicon (`word<TAB>label`, label Positiv/Negativ
// case-insensitive).  Sense suffixes (#n) are stripped, words lowercased,
// duplicates merged; words left with conflicting labels are dropped and
// reported to `dropped` (word, reason).  Throws on malformed rows (with the
// line number) and when nothing is left after deduplication.
std::vector<LexiconEntry> load_lexicon(
    const std::string& path,
    std::vector<std::pair<std::string, std::string>>* dropped = nullptr);

struct EvalRow {
    double percent;    // share of the scored set, in (0, 100]
    std::size_t size;  // floor(percent * total / 100)
    double accuracy;   // correct / size over the top-`size` ranked words
};

struct EvalReport {
    std::vector<EvalRow> rows;  // by descending percent
    std::size_t total_scored = 0;
    std::vector<std::pair<std::string, std::string>> skipped;  // word, reason
    Method method = Method::pmi;
    std::size_t zero_flag_count = 0;
};

inline const std::vector<double> kDefaultPercents = {100.0, 75.0, 50.0, 25.0};

// Confidence-sliced accuracy: words ranked by |value| descending (ties by
// word ascending); each percent p keeps the top floor(p*total/100).
// Throws if a scored word is missing from the lexicon, appears twice, or a
// percent lies outside (0, 100].
EvalReport evaluate(const std::vector<SOScore>& scores,
                    const std::vector<LexiconEntry>& lexicon,
                    const std::vector<double>& percents = kDefaultPercents);

struct ExperimentConfig {
    Method method = Method::pmi;
    ParadigmSet paradigms = ParadigmSet::defaults();
    std::vector<double> percents = kDefaultPercents;
    // Lexicon words with fewer corpus occurrences are skipped, not scored.
    std::uint64_t min_occurrences = 0;
    unsigned threads = 0;

    PmiConfig pmi;

    Chunking chunking = Chunking::document;
    int k = kDefaultLsaRank;
    std::uint64_t seed = 0;
    MissingPolicy missing_policy = MissingPolicy::error;
    LsaSpaceOptions space;
};

// End-to-end protocol: build the index (PMI) or LSA space, batch-score
// every scoreable lexicon word, and slice.  Unscoreable words (LSA
// out-of-vocabulary, multi-token forms, below min_occurrences) are listed
// in the report's skipped section and excluded from the totals.
EvalReport run_experiment(const std::vector<RawDocument>& corpus,
                          const std::vector<LexiconEntry>& lexicon,
                          const ExperimentConfig& config = {});

// Deterministic renderings; eval CLI `--format` picks one.
std::string format_report_tsv(const EvalReport& report);
std::string format_report_json(const EvalReport& report);

}  // namespace so
