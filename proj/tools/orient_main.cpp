// orient: semantic-orientation toolkit CLI.
//
// Subcommands: index, query, score-pmi, score-lsa, eval, classify.
// Diagnostics go to stderr, data to stdout.  Exit codes: 0 success,
// 1 usage error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "so/corpus.hpp"
#include "so/errors.hpp"
#include "so/eval.hpp"
#include "so/index.hpp"
#include "so/log.hpp"
#include "so/lsa.hpp"
#include "so/orientation.hpp"
#include "so/pmi.hpp"
#include "so/query.hpp"
#include "so/review.hpp"
#include "so/svd.hpp"

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string log_level = "warn";
};

std::vector<std::string> read_word_list(const std::string& path) {
    std::vector<std::string> words;
    std::string line;
    const auto consume = [&](std::istream& in) {
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) words.push_back(line);
        }
    };
    if (path == "-") {
        consume(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) throw so::IoError("cannot open word list: " + path);
        consume(in);
    }
    if (words.empty()) throw so::ValidationError("word list is empty: " + path);
    return words;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string format_flags(const std::vector<std::string>& flags) {
    if (flags.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) out += ',';
        out += flags[i];
    }
    return out;
}

void print_outcomes(const std::vector<so::WordOutcome>& outcomes) {
    std::string block;
    for (const auto& o : outcomes) {
        if (!o.score) {
            so::log::warn("cannot score '", o.word, "': ", o.error);
            continue;
        }
        block += o.word;
        block += '\t';
        block += format_value(o.score->value);
        block += '\t';
        block += to_string(so::classify(*o.score).polarity);
        block += '\t';
        block += format_flags(o.flags);
        block += '\n';
    }
    std::cout << block;
}

so::ParadigmSet paradigms_from(const std::string& path) {
    return path.empty() ? so::ParadigmSet::defaults() : so::load_paradigms(path);
}

std::vector<so::RawDocument> load_and_filter(const std::string& corpus_path,
                                             const std::string& format,
                                             const std::string& subset,
                                             bool skip_bad) {
    auto docs = so::load_corpus(corpus_path, so::parse_corpus_format(format),
                                skip_bad);
    if (!subset.empty()) docs = so::filter_corpus(std::move(docs), subset);
    return docs;
}

// Commands that accept either a prebuilt snapshot or a raw corpus.
so::PositionalIndex obtain_index(const std::string& index_path,
                                 const std::string& corpus_path,
                                 const std::string& format,
                                 const std::string& subset, bool skip_bad,
                                 unsigned threads) {
    so::PositionalIndex index;
    if (!index_path.empty()) {
        index = so::PositionalIndex::load(index_path);
        if (!subset.empty()) index = index.subset(subset);
    } else {
        so::IndexBuildOptions opts;
        opts.skip_bad_docs = skip_bad;
        opts.threads = threads;
        index = so::PositionalIndex::build(
            load_and_filter(corpus_path, format, subset, skip_bad), opts);
    }
    return index;
}

int run(int argc, char** argv) {
    CLI::App app{"orient: learn and apply the semantic orientation of words "
                 "from a plain-text corpus"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", "orient 0.1.0");
    app.set_config("--config")->description(
        "file with key=value lines mirroring flags (flags win)");

    GlobalOptions global;
    app.add_option("--seed", global.seed, "seed for all randomized steps")
        ->capture_default_str();
    app.add_option("--threads", global.threads,
                   "worker thread cap (0 = hardware concurrency)")
        ->capture_default_str();
    app.add_option("--log-level", global.log_level,
                   "stderr verbosity: error|warn|info|debug")
        ->capture_default_str();

    // ---- index ----
    auto* cmd_index = app.add_subcommand("index", "build an index snapshot");
    struct {
        std::string corpus, format = "auto", out, subset;
        bool skip_bad = false;
    } ix;
    cmd_index->add_option("--corpus", ix.corpus, "corpus directory or line file")
        ->required();
    cmd_index->add_option("--corpus-format", ix.format, "auto|dir|lines")
        ->capture_default_str();
    cmd_index->add_option("--out", ix.out, "snapshot output path")->required();
    cmd_index->add_option("--subset", ix.subset,
                          "keep only documents whose source matches this glob");
    cmd_index->add_flag("--skip-bad-docs", ix.skip_bad,
                        "skip undecodable documents instead of failing");

    // ---- query ----
    auto* cmd_query = app.add_subcommand(
        "query", "hit counts for the query syntax: a OR b, a NEAR b, a AND b");
    struct {
        std::string index, corpus, format = "auto", subset, text;
        int near_window = so::kDefaultNearWindow;
    } qr;
    cmd_query->add_option("--index", qr.index, "index snapshot path");
    cmd_query->add_option("--corpus", qr.corpus, "corpus to index on the fly");
    cmd_query->add_option("--corpus-format", qr.format, "auto|dir|lines");
    cmd_query->add_option("--subset", qr.subset, "document source glob");
    cmd_query->add_option("--near-window", qr.near_window,
                          "default NEAR window")
        ->capture_default_str();
    cmd_query->add_option("query", qr.text,
                          "query text (omit to read one query per stdin line)");

    // ---- score-pmi ----
    auto* cmd_pmi = app.add_subcommand(
        "score-pmi", "SO-PMI scores; TSV word, value, polarity, flags");
    struct {
        std::string index, corpus, format = "auto", subset, words, paradigms;
        double smoothing = 0.01;
        int near_window = so::kDefaultNearWindow;
        bool skip_bad = false;
    } sp;
    cmd_pmi->add_option("--index", sp.index, "index snapshot path");
    cmd_pmi->add_option("--corpus", sp.corpus, "corpus to index on the fly");
    cmd_pmi->add_option("--corpus-format", sp.format, "auto|dir|lines");
    cmd_pmi->add_option("--subset", sp.subset, "document source glob");
    cmd_pmi->add_option("--words", sp.words, "word list file, or - for stdin")
        ->required();
    cmd_pmi->add_option("--paradigms", sp.paradigms,
                        "paradigm file (missing file = the default fourteen)");
    cmd_pmi->add_option("--smoothing", sp.smoothing, "Laplace smoothing")
        ->capture_default_str();
    cmd_pmi->add_option("--near-window", sp.near_window, "NEAR window")
        ->capture_default_str();
    cmd_pmi->add_flag("--skip-bad-docs", sp.skip_bad,
                      "skip undecodable documents instead of failing");

    // ---- score-lsa ----
    auto* cmd_lsa = app.add_subcommand(
        "score-lsa", "SO-LSA scores; TSV word, value, polarity, flags");
    struct {
        std::string corpus, format = "auto", subset, words, paradigms;
        std::string chunking = "document";
        std::string missing_policy = "error";
        std::string space_in, space_out;
        int k = so::kDefaultLsaRank;
        bool skip_bad = false;
        bool raw_u = false;
    } sl;
    cmd_lsa->add_option("--corpus", sl.corpus, "corpus directory or line file");
    cmd_lsa->add_option("--corpus-format", sl.format, "auto|dir|lines");
    cmd_lsa->add_option("--subset", sl.subset, "document source glob");
    cmd_lsa->add_option("--chunking", sl.chunking, "document|paragraph")
        ->capture_default_str();
    cmd_lsa->add_option("--k", sl.k, "SVD rank (clamped to the matrix rank)")
        ->capture_default_str();
    cmd_lsa->add_option("--words", sl.words, "word list file, or - for stdin")
        ->required();
    cmd_lsa->add_option("--paradigms", sl.paradigms, "paradigm file");
    cmd_lsa->add_option("--missing-policy", sl.missing_policy,
                        "absent paradigm words: error|zero")
        ->capture_default_str();
    cmd_lsa->add_option("--space-in", sl.space_in, "load an LsaSpace snapshot");
    cmd_lsa->add_option("--space-out", sl.space_out, "save the LsaSpace snapshot");
    cmd_lsa->add_flag("--raw-u", sl.raw_u,
                      "use bare U_k rows instead of U_k*Sigma_k");
    cmd_lsa->add_flag("--skip-bad-docs", sl.skip_bad,
                      "skip undecodable documents instead of failing");

    // ---- eval ----
    auto* cmd_eval = app.add_subcommand(
        "eval", "confidence-sliced accuracy against a labeled lexicon");
    struct {
        std::string method, corpus, format = "auto", subset, lexicon, paradigms;
        std::vector<double> percents = {100.0, 75.0, 50.0, 25.0};
        std::string out_format = "tsv";
        std::string chunking = "document";
        std::string missing_policy = "error";
        double smoothing = 0.01;
        int near_window = so::kDefaultNearWindow;
        int k = so::kDefaultLsaRank;
        std::uint64_t min_occurrences = 0;
        bool skip_bad = false;
    } ev;
    cmd_eval->add_option("--method", ev.method, "pmi|lsa")->required();
    cmd_eval->add_option("--corpus", ev.corpus, "corpus directory or line file")
        ->required();
    cmd_eval->add_option("--corpus-format", ev.format, "auto|dir|lines");
    cmd_eval->add_option("--subset", ev.subset, "document source glob");
    cmd_eval->add_option("--lexicon", ev.lexicon, "TSV word<TAB>Positiv|Negativ")
        ->required();
    cmd_eval->add_option("--percents", ev.percents, "comma-separated slices")
        ->delimiter(',')
        ->capture_default_str();
    cmd_eval->add_option("--format", ev.out_format, "tsv|json")
        ->capture_default_str();
    cmd_eval->add_option("--paradigms", ev.paradigms, "paradigm file");
    cmd_eval->add_option("--min-occurrences", ev.min_occurrences,
                         "skip lexicon words with fewer corpus occurrences")
        ->capture_default_str();
    cmd_eval->add_option("--smoothing", ev.smoothing, "PMI smoothing")
        ->capture_default_str();
    cmd_eval->add_option("--near-window", ev.near_window, "PMI NEAR window")
        ->capture_default_str();
    cmd_eval->add_option("--chunking", ev.chunking, "LSA chunking")
        ->capture_default_str();
    cmd_eval->add_option("--k", ev.k, "LSA rank")->capture_default_str();
    cmd_eval->add_option("--missing-policy", ev.missing_policy,
                         "LSA absent paradigm words: error|zero")
        ->capture_default_str();
    cmd_eval->add_flag("--skip-bad-docs", ev.skip_bad,
                       "skip undecodable documents instead of failing");

    // ---- classify ----
    auto* cmd_classify = app.add_subcommand(
        "classify", "average-orientation polarity of texts, one per line");
    struct {
        std::string method, index, corpus, format = "auto", subset, space;
        std::string paradigms, stoplist, input = "-";
        std::string chunking = "document";
        double smoothing = 0.01;
        int near_window = so::kDefaultNearWindow;
        int k = so::kDefaultLsaRank;
        bool skip_bad = false;
    } cl;
    cmd_classify->add_option("--method", cl.method, "pmi|lsa")->required();
    cmd_classify->add_option("--index", cl.index, "index snapshot (pmi)");
    cmd_classify->add_option("--corpus", cl.corpus, "corpus to build from");
    cmd_classify->add_option("--corpus-format", cl.format, "auto|dir|lines");
    cmd_classify->add_option("--subset", cl.subset, "document source glob");
    cmd_classify->add_option("--space", cl.space, "LsaSpace snapshot (lsa)");
    cmd_classify->add_option("--paradigms", cl.paradigms, "paradigm file");
    cmd_classify->add_option("--stoplist", cl.stoplist,
                             "words to drop before averaging");
    cmd_classify->add_option("--smoothing", cl.smoothing, "PMI smoothing")
        ->capture_default_str();
    cmd_classify->add_option("--near-window", cl.near_window, "PMI NEAR window")
        ->capture_default_str();
    cmd_classify->add_option("--chunking", cl.chunking, "LSA chunking")
        ->capture_default_str();
    cmd_classify->add_option("--k", cl.k, "LSA rank")->capture_default_str();
    cmd_classify->add_option("input", cl.input,
                             "text file, one text per line (- for stdin)");
    cmd_classify->add_flag("--skip-bad-docs", cl.skip_bad,
                           "skip undecodable documents instead of failing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // help/version exit 0; every other parse problem is a usage error
        return app.exit(e) == 0 ? 0 : 1;
    }
    so::log::set_threshold(so::log::parse_level(global.log_level));

    if (*cmd_index) {
        auto docs = load_and_filter(ix.corpus, ix.format, ix.subset, ix.skip_bad);
        so::IndexBuildOptions opts;
        opts.skip_bad_docs = ix.skip_bad;
        opts.threads = global.threads;
        const auto index = so::PositionalIndex::build(docs, opts);
        index.save(ix.out);
        so::log::info("indexed ", index.doc_count(), " documents, ",
                      index.vocab_size(), " terms -> ", ix.out);
        return 0;
    }

    if (*cmd_query) {
        if (qr.index.empty() == qr.corpus.empty())
            throw CLI::ValidationError("query",
                                       "give exactly one of --index/--corpus");
        const auto index = obtain_index(qr.index, qr.corpus, qr.format,
                                        qr.subset, false, global.threads);
        const auto run_one = [&](const std::string& text) {
            std::cout << index.hits(so::parse_query(text, qr.near_window))
                      << '\n';
        };
        if (!qr.text.empty()) {
            run_one(qr.text);
        } else {
            std::string line;
            while (std::getline(std::cin, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (line.empty()) continue;
                try {
                    run_one(line);
                } catch (const so::Error& e) {
                    so::log::error(e.what());
                }
            }
        }
        return 0;
    }

    if (*cmd_pmi) {
        if (sp.index.empty() == sp.corpus.empty())
            throw CLI::ValidationError("score-pmi",
                                       "give exactly one of --index/--corpus");
        const auto index = obtain_index(sp.index, sp.corpus, sp.format,
                                        sp.subset, sp.skip_bad, global.threads);
        const so::IndexHitProvider provider(index);
        const auto paradigms = paradigms_from(sp.paradigms);
        so::PmiConfig config;
        config.smoothing = sp.smoothing;
        config.near_window = sp.near_window;
        const auto words = read_word_list(sp.words);
        print_outcomes(so::so_pmi_batch(provider, words, paradigms, config,
                                        global.threads));
        return 0;
    }

    if (*cmd_lsa) {
        if (sl.space_in.empty() == sl.corpus.empty())
            throw CLI::ValidationError(
                "score-lsa", "give exactly one of --space-in/--corpus");
        so::LsaSpace space;
        if (!sl.space_in.empty()) {
            space = so::LsaSpace::load(sl.space_in);
        } else {
            const auto docs =
                load_and_filter(sl.corpus, sl.format, sl.subset, sl.skip_bad);
            const auto matrix =
                so::build_matrix(docs, so::parse_chunking(sl.chunking));
            const auto factors =
                so::truncated_svd(matrix.a, sl.k, global.seed);
            if (factors.k < sl.k)
                so::log::info("rank clamped from ", sl.k, " to ", factors.k);
            so::LsaSpaceOptions space_opts;
            space_opts.scale_by_sigma = !sl.raw_u;
            space = so::make_space(factors, matrix.row_labels, space_opts);
        }
        if (!sl.space_out.empty()) space.save(sl.space_out);
        const auto paradigms = paradigms_from(sl.paradigms);
        const auto words = read_word_list(sl.words);
        print_outcomes(so::score_words_lsa(
            space, words, paradigms, so::parse_missing_policy(sl.missing_policy)));
        return 0;
    }

    if (*cmd_eval) {
        so::ExperimentConfig config;
        if (ev.method == "pmi") config.method = so::Method::pmi;
        else if (ev.method == "lsa") config.method = so::Method::lsa;
        else throw CLI::ValidationError("eval", "--method must be pmi or lsa");
        config.paradigms = paradigms_from(ev.paradigms);
        config.percents = ev.percents;
        config.min_occurrences = ev.min_occurrences;
        config.threads = global.threads;
        config.pmi.smoothing = ev.smoothing;
        config.pmi.near_window = ev.near_window;
        config.chunking = so::parse_chunking(ev.chunking);
        config.k = ev.k;
        config.seed = global.seed;
        config.missing_policy = so::parse_missing_policy(ev.missing_policy);

        const auto docs =
            load_and_filter(ev.corpus, ev.format, ev.subset, ev.skip_bad);
        std::vector<std::pair<std::string, std::string>> dropped;
        const auto lexicon = so::load_lexicon(ev.lexicon, &dropped);
        auto report = so::run_experiment(docs, lexicon, config);
        report.skipped.insert(report.skipped.begin(), dropped.begin(),
                              dropped.end());
        if (ev.out_format == "tsv") std::cout << so::format_report_tsv(report);
        else if (ev.out_format == "json")
            std::cout << so::format_report_json(report);
        else throw CLI::ValidationError("eval", "--format must be tsv or json");
        return 0;
    }

    if (*cmd_classify) {
        so::PositionalIndex index;
        so::LsaSpace space;
        std::unique_ptr<so::IndexHitProvider> provider;
        const auto paradigms = paradigms_from(cl.paradigms);
        so::WordScorer scorer;
        so::PmiConfig config;
        so::PmiCache cache;
        if (cl.method == "pmi") {
            if (cl.index.empty() == cl.corpus.empty())
                throw CLI::ValidationError(
                    "classify", "pmi needs exactly one of --index/--corpus");
            index = obtain_index(cl.index, cl.corpus, cl.format, cl.subset,
                                 cl.skip_bad, global.threads);
            provider = std::make_unique<so::IndexHitProvider>(index);
            config.smoothing = cl.smoothing;
            config.near_window = cl.near_window;
            cache = so::PmiCache::compute(*provider, paradigms, config);
            scorer = so::make_pmi_scorer(*provider, paradigms, config, cache);
        } else if (cl.method == "lsa") {
            if (cl.space.empty() == cl.corpus.empty())
                throw CLI::ValidationError(
                    "classify", "lsa needs exactly one of --space/--corpus");
            if (!cl.space.empty()) {
                space = so::LsaSpace::load(cl.space);
            } else {
                const auto docs = load_and_filter(cl.corpus, cl.format,
                                                  cl.subset, cl.skip_bad);
                const auto matrix =
                    so::build_matrix(docs, so::parse_chunking(cl.chunking));
                const auto factors =
                    so::truncated_svd(matrix.a, cl.k, global.seed);
                space = so::make_space(factors, matrix.row_labels);
            }
            scorer = so::make_lsa_scorer(space, paradigms);
        } else {
            throw CLI::ValidationError("classify", "--method must be pmi or lsa");
        }

        std::optional<so::Stoplist> stoplist;
        if (!cl.stoplist.empty())
            stoplist = so::Stoplist::load(cl.stoplist, paradigms);

        std::ifstream file;
        std::istream* in = &std::cin;
        if (cl.input != "-") {
            file.open(cl.input);
            if (!file) throw so::IoError("cannot open input: " + cl.input);
            in = &file;
        }
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(*in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            try {
                const auto verdict = so::score_text(
                    line, scorer, stoplist ? &*stoplist : nullptr);
                std::cout << line_no << '\t' << format_value(verdict.average_so)
                          << '\t' << to_string(verdict.polarity) << '\t'
                          << (verdict.strongest_word ? *verdict.strongest_word
                                                     : "-")
                          << '\n';
            } catch (const so::Error& e) {
                so::log::warn("line ", line_no, ": ", e.what());
            }
        }
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        // post-parse flag validation (e.g. --index vs --corpus)
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const so::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
