#pragma once

#include <optional>
#include <string>
#include <vector>

namespace so {

enum class Polarity { negative = 0, positive = 1 };

std::string to_string(Polarity p);

enum class Method { pmi, lsa };

std::string to_string(Method m);

// A word's semantic orientation: association with the positive paradigms
// minus association with the negative paradigms.  Finite for any word the
// scorer accepts (PMI guarantees this only for smoothing > 0).
struct SOScore {
    std::string word;
    double value = 0.0;
    Method method = Method::pmi;
};

struct Verdict {
    Polarity polarity;
    bool zero_flag;  // value was exactly zero; the negative call is a tie-break
};

// Positive iff value > 0, negative otherwise; exactly-zero values are
// negative with the zero flag set so reports can surface the tie-break.
Verdict classify(double value);
inline Verdict classify(const SOScore& score) { return classify(score.value); }

// The anchor words defining the orientation axis.
class ParadigmSet {
public:
    // Validates: both lists non-empty, no duplicates, no overlap, every word
    // a single lowercase term.  Throws ValidationError naming the offender.
    ParadigmSet(std::vector<std::string> positives,
                std::vector<std::string> negatives);

    // good/nice/excellent/positive/fortunate/correct/superior vs
    // bad/nasty/poor/negative/unfortunate/wrong/inferior.
    static ParadigmSet defaults();

    const std::vector<std::string>& positives() const { return positives_; }
    const std::vector<std::string>& negatives() const { return negatives_; }

    ParadigmSet swapped() const { return ParadigmSet(negatives_, positives_); }

private:
    std::vector<std::string> positives_;
    std::vector<std::string> negatives_;
};

// Reads a paradigm file: lines `positive: w1 w2 ...` and
// `negative: w1 w2 ...` (blank lines and #-comments ignored; words
// lowercase-normalized).  A missing file yields the defaults.
ParadigmSet load_paradigms(const std::string& path);

// Per-word scoring outcome used by batch scoring, the CLI and the eval
// harness.  `error` is set (and `score` empty) when the word could not be
// scored; `flags` carries "zero", "low-evidence" and "missing-paradigm:w".
struct WordOutcome {
    std::string word;
    std::optional<SOScore> score;
    std::vector<std::string> flags;
    std::string error;
};

}  // namespace so
