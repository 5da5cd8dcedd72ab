#include "so/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "so/errors.hpp"
#include "so/log.hpp"
#include "so/tokenize.hpp"

namespace so {

namespace {

std::optional<Polarity> parse_label(std::string label) {
    for (auto& c : label)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (label == "positiv") return Polarity::positive;
    if (label == "negativ") return Polarity::negative;
    return std::nullopt;
}

}  // namespace

std::vector<LexiconEntry> load_lexicon(
    const std::string& path,
    std::vector<std::pair<std::string, std::string>>* dropped) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon: " + path);

    // word -> (has positive sense, has negative sense), first-seen order
    std::vector<std::string> order;
    std::unordered_map<std::string, std::pair<bool, bool>> senses;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ValidationError("lexicon " + path + " line " +
                                  std::to_string(line_no) +
                                  ": expected word<TAB>label");
        std::string word = line.substr(0, tab);
        const auto hash = word.find('#');
        if (hash != std::string::npos) word.erase(hash);
        if (word.empty())
            throw ValidationError("lexicon " + path + " line " +
                                  std::to_string(line_no) + ": empty word");
        word = lower_word(word);
        const auto label = parse_label(line.substr(tab + 1));
        if (!label)
            throw ValidationError("lexicon " + path + " line " +
                                  std::to_string(line_no) +
                                  ": label must be Positiv or Negativ");
        auto [it, inserted] = senses.try_emplace(word, false, false);
        if (inserted) order.push_back(word);
        (*label == Polarity::positive ? it->second.first : it->second.second) =
            true;
    }
    if (in.bad()) throw IoError("cannot read lexicon: " + path);

    std::vector<LexiconEntry> entries;
    entries.reserve(order.size());
    for (const auto& word : order) {
        const auto [pos, neg] = senses[word];
        if (pos && neg) {
            log::info("dropping lexicon word with conflicting labels: ", word);
            if (dropped) dropped->emplace_back(word, "conflicting labels");
            continue;
        }
        entries.push_back({word, pos ? Polarity::positive : Polarity::negative});
    }
    if (entries.empty())
        throw ValidationError("lexicon is empty after deduplication: " + path);
    return entries;
}

EvalReport evaluate(const std::vector<SOScore>& scores,
                    const std::vector<LexiconEntry>& lexicon,
                    const std::vector<double>& percents) {
    if (scores.empty()) throw ValidationError("no scores to evaluate");
    for (double p : percents)
        if (!(p > 0.0 && p <= 100.0))
            throw ValidationError("percent out of (0, 100]: " +
                                  std::to_string(p));

    std::unordered_map<std::string, Polarity> labels;
    labels.reserve(lexicon.size());
    for (const auto& e : lexicon) labels.emplace(e.word, e.label);

    std::unordered_set<std::string> seen;
    std::vector<const SOScore*> ranked;
    ranked.reserve(scores.size());
    EvalReport report;
    report.method = scores.front().method;
    for (const auto& s : scores) {
        if (!labels.count(s.word))
            throw ValidationError("scored word not in lexicon: " + s.word);
        if (!seen.insert(s.word).second)
            throw ValidationError("word scored twice: " + s.word);
        if (s.value == 0.0) ++report.zero_flag_count;
        ranked.push_back(&s);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const SOScore* a, const SOScore* b) {
                  const double ma = std::fabs(a->value);
                  const double mb = std::fabs(b->value);
                  if (ma != mb) return ma > mb;
                  return a->word < b->word;
              });

    // How many of the top `size` calls match the labels; one pass, then
    // prefix sums by slice.
    std::vector<std::size_t> correct_prefix(ranked.size() + 1, 0);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const bool correct = classify(ranked[i]->value).polarity ==
                             labels.at(ranked[i]->word);
        correct_prefix[i + 1] = correct_prefix[i] + (correct ? 1 : 0);
    }

    std::vector<double> ps(percents);
    std::sort(ps.begin(), ps.end(), std::greater<>());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());

    report.total_scored = ranked.size();
    const double total = static_cast<double>(ranked.size());
    for (double p : ps) {
        const auto size =
            static_cast<std::size_t>(std::floor(p * total / 100.0));
        // size 0 can only happen for tiny corpora slices; report it honestly
        const double accuracy =
            size == 0 ? 0.0
                      : static_cast<double>(correct_prefix[size]) /
                            static_cast<double>(size);
        report.rows.push_back({p, size, accuracy});
    }
    return report;
}

EvalReport run_experiment(const std::vector<RawDocument>& corpus,
                          const std::vector<LexiconEntry>& lexicon,
                          const ExperimentConfig& config) {
    if (corpus.empty()) throw EmptyCorpusError("corpus has no documents");
    if (lexicon.empty()) throw ValidationError("lexicon is empty");

    std::vector<std::string> words;
    words.reserve(lexicon.size());
    for (const auto& e : lexicon) words.push_back(e.word);

    std::vector<std::pair<std::string, std::string>> skipped;
    std::vector<WordOutcome> outcomes;

    if (config.method == Method::pmi) {
        IndexBuildOptions build_opts;
        build_opts.threads = config.threads;
        const PositionalIndex index = PositionalIndex::build(corpus, build_opts);
        const IndexHitProvider provider(index);

        std::vector<std::string> kept;
        kept.reserve(words.size());
        for (const auto& w : words) {
            if (config.min_occurrences > 0 &&
                index.collection_frequency(w) < config.min_occurrences) {
                skipped.emplace_back(
                    w, "fewer than " + std::to_string(config.min_occurrences) +
                           " occurrences");
                continue;
            }
            kept.push_back(w);
        }
        if (kept.empty())
            throw ValidationError(
                "no lexicon word meets the occurrence threshold");
        outcomes =
            so_pmi_batch(provider, kept, config.paradigms, config.pmi,
                         config.threads);
    } else {
        const TermDocMatrix matrix = build_matrix(corpus, config.chunking);
        const SvdFactors factors = truncated_svd(matrix.a, config.k, config.seed);
        if (factors.k < config.k)
            log::info("LSA rank clamped from ", config.k, " to ", factors.k);
        const LsaSpace space = make_space(factors, matrix.row_labels, config.space);

        std::vector<std::string> kept;
        if (config.min_occurrences > 0) {
            std::unordered_map<std::string, std::uint64_t> occurrences;
            for (const auto& doc : corpus)
                for (const Token& tok : tokenize(doc.text, doc.source_name))
                    ++occurrences[tok.text];
            for (const auto& w : words) {
                auto it = occurrences.find(w);
                if (it == occurrences.end() ||
                    it->second < config.min_occurrences) {
                    skipped.emplace_back(
                        w, "fewer than " +
                               std::to_string(config.min_occurrences) +
                               " occurrences");
                    continue;
                }
                kept.push_back(w);
            }
        } else {
            kept = words;
        }
        outcomes = score_words_lsa(space, kept, config.paradigms,
                                   config.missing_policy);
    }

    std::vector<SOScore> scores;
    scores.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (o.score) scores.push_back(*o.score);
        else skipped.emplace_back(o.word, o.error);
    }
    if (scores.empty())
        throw ValidationError("no lexicon word could be scored");

    EvalReport report = evaluate(scores, lexicon, config.percents);
    report.method = config.method;
    report.skipped = std::move(skipped);
    return report;
}

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string format_report_tsv(const EvalReport& report) {
    std::string out;
    for (const auto& row : report.rows) {
        out += format_double("%g", row.percent);
        out += '\t';
        out += std::to_string(row.size);
        out += '\t';
        out += format_double("%.4f", row.accuracy);
        out += '\n';
    }
    return out;
}

std::string format_report_json(const EvalReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"percent", row.percent},
                        {"size", row.size},
                        {"accuracy", row.accuracy}});
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& [word, reason] : report.skipped)
        skipped.push_back({{"word", word}, {"reason", reason}});
    nlohmann::json j{{"method", to_string(report.method)},
                     {"total_scored", report.total_scored},
                     {"zero_flag_count", report.zero_flag_count},
                     {"rows", rows},
                     {"skipped", skipped}};
    return j.dump(2) + "\n";
}

}  // namespace so
