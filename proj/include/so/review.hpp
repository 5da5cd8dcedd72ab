#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "so/lsa.hpp"
#include "so/orientation.hpp"
#include "so/pmi.hpp"

namespace so {

// Returns a word's orientation score, or nullopt when the backend cannot
// score it (e.g. out of the LSA vocabulary).
using WordScorer = std::function<std::optional<SOScore>(const std::string&)>;

// Words dropped before averaging.  Paradigm words are never stoplisted;
// they are removed on load with a warning.
class Stoplist {
public:
    static Stoplist load(const std::string& path, const ParadigmSet& paradigms);
    bool contains(const std::string& word) const { return words_.count(word) != 0; }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

struct ScoredToken {
    std::string word;
    std::optional<double> value;  // nullopt = unscored
};

struct TextVerdict {
    std::string text;
    double average_so = 0.0;  // mean over scored tokens only
    Polarity polarity = Polarity::negative;
    bool zero_flag = false;
    std::optional<std::string> strongest_word;  // max |value|, ties by word
    std::vector<ScoredToken> per_word;          // kept tokens, in text order
};

// Average-orientation text classification: tokenize, drop stoplisted
// tokens, score the rest, average.  Every token occurrence contributes to
// the mean.  Throws EmptyVerdictError when nothing could be scored.
TextVerdict score_text(const std::string& text, const WordScorer& scorer,
                       const Stoplist* stoplist = nullptr);

// Backend adapters; the referenced provider/space/cache must outlive the
// returned scorer.
WordScorer make_pmi_scorer(const HitProvider& provider,
                           const ParadigmSet& paradigms, const PmiConfig& config,
                           const PmiCache& cache);
WordScorer make_lsa_scorer(const LsaSpace& space, const ParadigmSet& paradigms);

}  // namespace so
