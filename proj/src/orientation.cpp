#include "so/orientation.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "so/errors.hpp"
#include "so/log.hpp"
#include "so/tokenize.hpp"

namespace so {

std::string to_string(Polarity p) {
    return p == Polarity::positive ? "positive" : "negative";
}

std::string to_string(Method m) { return m == Method::pmi ? "PMI" : "LSA"; }

Verdict classify(double value) {
    if (value > 0.0) return {Polarity::positive, false};
    if (value < 0.0) return {Polarity::negative, false};
    return {Polarity::negative, true};
}

ParadigmSet::ParadigmSet(std::vector<std::string> positives,
                         std::vector<std::string> negatives)
    : positives_(std::move(positives)), negatives_(std::move(negatives)) {
    if (positives_.empty())
        throw ValidationError("paradigm set: positive list is empty");
    if (negatives_.empty())
        throw ValidationError("paradigm set: negative list is empty");
    std::unordered_set<std::string> seen;
    for (const auto* list : {&positives_, &negatives_}) {
        for (const auto& w : *list) {
            if (!is_single_term(w))
                throw ValidationError(
                    "paradigm word is not a single lowercase term: '" + w + "'");
            if (!seen.insert(w).second)
                throw ValidationError("paradigm word appears twice: '" + w + "'");
        }
    }
}

ParadigmSet ParadigmSet::defaults() {
    return ParadigmSet(
        {"good", "nice", "excellent", "positive", "fortunate", "correct",
         "superior"},
        {"bad", "nasty", "poor", "negative", "unfortunate", "wrong",
         "inferior"});
}

ParadigmSet load_paradigms(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        log::warn("paradigm file not found, using the default fourteen words: ",
                  path);
        return ParadigmSet::defaults();
    }
    std::ifstream in(path);
    if (!in) throw IoError("cannot open paradigm file: " + path);

    std::vector<std::string> positives, negatives;
    bool saw_positive = false, saw_negative = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head) || head[0] == '#') continue;
        std::vector<std::string>* target = nullptr;
        if (head == "positive:") { target = &positives; saw_positive = true; }
        else if (head == "negative:") { target = &negatives; saw_negative = true; }
        else
            throw ValidationError("paradigm file " + path + " line " +
                                  std::to_string(line_no) +
                                  ": expected 'positive:' or 'negative:'");
        std::string word;
        while (ss >> word) target->push_back(lower_word(word));
    }
    if (!saw_positive || !saw_negative)
        throw ValidationError("paradigm file " + path +
                              " must contain both a positive: and a negative: line");
    return ParadigmSet(std::move(positives), std::move(negatives));
}

}  // namespace so
