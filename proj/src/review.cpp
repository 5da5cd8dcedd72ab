#include "so/review.hpp"

#include <cmath>
#include <fstream>

#include "so/errors.hpp"
#include "so/log.hpp"
#include "so/tokenize.hpp"

namespace so {

Stoplist Stoplist::load(const std::string& path, const ParadigmSet& paradigms) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stoplist: " + path);
    Stoplist list;
    std::string word;
    while (in >> word) {
        if (word[0] == '#') {
            std::getline(in, word);  // comment to end of line
            continue;
        }
        list.words_.insert(lower_word(word));
    }
    for (const auto* side : {&paradigms.positives(), &paradigms.negatives()}) {
        for (const auto& p : *side) {
            if (list.words_.erase(p))
                log::warn("stoplist entry '", p,
                          "' is a paradigm word; keeping it scoreable");
        }
    }
    return list;
}

TextVerdict score_text(const std::string& text, const WordScorer& scorer,
                       const Stoplist* stoplist) {
    TextVerdict verdict;
    verdict.text = text;

    double sum = 0.0;
    std::size_t scored = 0;
    for (const Token& tok : tokenize(text, "<text>")) {
        if (stoplist && stoplist->contains(tok.text)) continue;
        ScoredToken st{tok.text, std::nullopt};
        if (auto score = scorer(tok.text)) {
            st.value = score->value;
            sum += score->value;
            ++scored;
        }
        verdict.per_word.push_back(std::move(st));
    }
    if (scored == 0)
        throw EmptyVerdictError("no scoreable words in text");

    verdict.average_so = sum / static_cast<double>(scored);
    const Verdict v = classify(verdict.average_so);
    verdict.polarity = v.polarity;
    verdict.zero_flag = v.zero_flag;

    double best_magnitude = -1.0;
    for (const auto& st : verdict.per_word) {
        if (!st.value) continue;
        const double magnitude = std::fabs(*st.value);
        if (magnitude > best_magnitude ||
            (magnitude == best_magnitude && st.word < *verdict.strongest_word)) {
            verdict.strongest_word = st.word;
            best_magnitude = magnitude;
        }
    }
    return verdict;
}

WordScorer make_pmi_scorer(const HitProvider& provider,
                           const ParadigmSet& paradigms, const PmiConfig& config,
                           const PmiCache& cache) {
    return [&provider, &paradigms, config,
            cache](const std::string& word) -> std::optional<SOScore> {
        return so_pmi(provider, word, paradigms, config, cache);
    };
}

WordScorer make_lsa_scorer(const LsaSpace& space, const ParadigmSet& paradigms) {
    return [&space, &paradigms](const std::string& word)
               -> std::optional<SOScore> {
        if (!space.contains(word)) return std::nullopt;
        return so_lsa(space, word, paradigms, MissingPolicy::zero);
    };
}

}  // namespace so
