#include "so/lsa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

#include "so/errors.hpp"
#include "so/log.hpp"
#include "so/tokenize.hpp"

namespace so {

Chunking parse_chunking(const std::string& name) {
    if (name == "document") return Chunking::document;
    if (name == "paragraph") return Chunking::paragraph;
    throw ValidationError("unknown chunking mode: " + name);
}

MissingPolicy parse_missing_policy(const std::string& name) {
    if (name == "error") return MissingPolicy::error;
    if (name == "zero") return MissingPolicy::zero;
    throw ValidationError("unknown missing policy: " + name);
}

TermDocMatrix build_matrix(const std::vector<RawDocument>& corpus,
                           Chunking chunking) {
    struct Chunk {
        std::string label;
        std::unordered_map<std::string, std::uint32_t> tf;
    };
    std::vector<Chunk> chunks;
    std::vector<std::string> term_order;  // first-occurrence order
    std::unordered_map<std::string, std::uint32_t> df;

    const auto add_chunk = [&](std::string label, const std::string& text) {
        Chunk chunk;
        chunk.label = std::move(label);
        for (const Token& tok : tokenize(text, chunk.label))
            ++chunk.tf[tok.text];
        if (chunk.tf.empty()) return;  // token-free chunks carry no signal
        for (const auto& [term, tf] : chunk.tf) {
            auto [it, inserted] = df.try_emplace(term, 0);
            if (inserted) term_order.push_back(term);
            ++it->second;
        }
        chunks.push_back(std::move(chunk));
    };

    for (const auto& doc : corpus) {
        if (chunking == Chunking::document) {
            add_chunk(doc.source_name, doc.text);
        } else {
            const auto paragraphs = split_paragraphs(doc.text);
            for (std::size_t p = 0; p < paragraphs.size(); ++p)
                add_chunk(doc.source_name + "#p" + std::to_string(p + 1),
                          paragraphs[p]);
        }
    }
    if (chunks.empty())
        throw EmptyCorpusError("no token-bearing chunks in the corpus");

    const auto n_chunks = static_cast<double>(chunks.size());
    std::vector<std::string> kept;
    std::unordered_map<std::string, std::size_t> row_of;
    std::size_t dropped = 0;
    for (const auto& term : term_order) {
        if (df[term] == chunks.size()) {
            ++dropped;
            log::debug("dropping idf-0 term occurring in every chunk: ", term);
            continue;
        }
        row_of.emplace(term, kept.size());
        kept.push_back(term);
    }
    if (dropped)
        log::warn("dropped ", dropped, " term(s) occurring in every chunk (idf 0)");
    if (kept.empty())
        throw ValidationError(
            "degenerate corpus: every term occurs in every chunk (idf 0)");

    TermDocMatrix matrix;
    matrix.row_labels = std::move(kept);
    matrix.col_labels.reserve(chunks.size());

    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t c = 0; c < chunks.size(); ++c) {
        matrix.col_labels.push_back(chunks[c].label);
        for (const auto& [term, tf] : chunks[c].tf) {
            auto it = row_of.find(term);
            if (it == row_of.end()) continue;
            const double weight = (1.0 + std::log2(static_cast<double>(tf))) *
                                  std::log2(n_chunks / df[term]);
            triplets.emplace_back(static_cast<int>(it->second),
                                  static_cast<int>(c), weight);
        }
    }
    matrix.a.resize(static_cast<int>(matrix.row_labels.size()),
                    static_cast<int>(matrix.col_labels.size()));
    matrix.a.setFromTriplets(triplets.begin(), triplets.end());
    matrix.a.makeCompressed();
    return matrix;
}

LsaSpace::LsaSpace(const SvdFactors& factors,
                   std::vector<std::string> row_labels,
                   const LsaSpaceOptions& options)
    : terms_(std::move(row_labels)) {
    if (static_cast<Eigen::Index>(terms_.size()) != factors.u.rows())
        throw ValidationError("row labels do not match factor dimensions");
    vectors_ = options.scale_by_sigma
                   ? Eigen::MatrixXd(factors.u * factors.sigma.asDiagonal())
                   : factors.u;
    vocab_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) vocab_.emplace(terms_[i], i);
}

LsaSpace make_space(const SvdFactors& factors,
                    std::vector<std::string> row_labels,
                    const LsaSpaceOptions& options) {
    return LsaSpace(factors, std::move(row_labels), options);
}

bool LsaSpace::contains(const std::string& word) const {
    return vocab_.count(word) != 0;
}

Eigen::VectorXd LsaSpace::vector_of(const std::string& word) const {
    auto it = vocab_.find(word);
    if (it == vocab_.end()) throw MissingWordError(word);
    return vectors_.row(static_cast<Eigen::Index>(it->second));
}

double lsa_similarity(const LsaSpace& space, const std::string& word1,
                      const std::string& word2) {
    auto it1 = space.vocab_.find(word1);
    if (it1 == space.vocab_.end()) throw MissingWordError(word1);
    auto it2 = space.vocab_.find(word2);
    if (it2 == space.vocab_.end()) throw MissingWordError(word2);
    const auto row1 = space.vectors_.row(static_cast<Eigen::Index>(it1->second));
    const auto row2 = space.vectors_.row(static_cast<Eigen::Index>(it2->second));
    const double n1 = row1.norm();
    const double n2 = row2.norm();
    if (n1 == 0.0)
        throw UndefinedSimilarityError("zero vector for word '" + word1 + "'");
    if (n2 == 0.0)
        throw UndefinedSimilarityError("zero vector for word '" + word2 + "'");
    const double cosine = row1.dot(row2) / (n1 * n2);
    return std::clamp(cosine, -1.0, 1.0);
}

SOScore so_lsa(const LsaSpace& space, const std::string& word,
               const ParadigmSet& paradigms, MissingPolicy missing_policy,
               std::vector<std::string>* flags) {
    if (!space.contains(word)) throw MissingWordError(word);

    if (missing_policy == MissingPolicy::error) {
        std::vector<std::string> absent;
        for (const auto* list : {&paradigms.positives(), &paradigms.negatives()})
            for (const auto& p : *list)
                if (!space.contains(p)) absent.push_back(p);
        if (!absent.empty()) throw MissingWordError(absent);
    }

    // Separate sums keep swap antisymmetry exact.
    const auto side_sum = [&](const std::vector<std::string>& side) {
        double sum = 0.0;
        for (const auto& p : side) {
            if (!space.contains(p)) {
                if (flags) flags->push_back("missing-paradigm:" + p);
                continue;
            }
            sum += lsa_similarity(space, word, p);
        }
        return sum;
    };
    const double positive_sum = side_sum(paradigms.positives());
    const double negative_sum = side_sum(paradigms.negatives());
    return {word, positive_sum - negative_sum, Method::lsa};
}

WordOutcome score_word_lsa(const LsaSpace& space, const std::string& word,
                           const ParadigmSet& paradigms,
                           MissingPolicy missing_policy) {
    WordOutcome outcome;
    outcome.word = word;
    try {
        outcome.score =
            so_lsa(space, word, paradigms, missing_policy, &outcome.flags);
        if (classify(outcome.score->value).zero_flag)
            outcome.flags.push_back("zero");
    } catch (const Error& e) {
        outcome.flags.clear();
        outcome.error = e.what();
    }
    return outcome;
}

std::vector<WordOutcome> score_words_lsa(const LsaSpace& space,
                                         const std::vector<std::string>& words,
                                         const ParadigmSet& paradigms,
                                         MissingPolicy missing_policy) {
    std::vector<WordOutcome> outcomes;
    outcomes.reserve(words.size());
    for (const auto& w : words)
        outcomes.push_back(score_word_lsa(space, w, paradigms, missing_policy));
    return outcomes;
}

namespace {

constexpr char kSpaceMagic[4] = {'S', 'O', 'L', 'S'};
constexpr std::uint8_t kSpaceVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

template <typename T>
void write_le(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::string& path) {
    T value;
    if (!in.read(reinterpret_cast<char*>(&value), sizeof(T)))
        throw IoError("truncated space snapshot: " + path);
    return value;
}

}  // namespace

void LsaSpace::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(kSpaceMagic, 4);
    write_le<std::uint8_t>(out, kSpaceVersion);
    write_le<std::uint64_t>(out, terms_.size());
    for (const auto& term : terms_) {
        write_le<std::uint32_t>(out, static_cast<std::uint32_t>(term.size()));
        out.write(term.data(), static_cast<std::streamsize>(term.size()));
    }
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(vectors_.cols()));
    for (Eigen::Index i = 0; i < vectors_.rows(); ++i)
        for (Eigen::Index j = 0; j < vectors_.cols(); ++j)
            write_le<double>(out, vectors_(i, j));
    if (!out) throw IoError("write failed: " + path);
}

LsaSpace LsaSpace::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kSpaceMagic))
        throw IoError("not a space snapshot (bad magic): " + path);
    auto version = read_le<std::uint8_t>(in, path);
    if (version != kSpaceVersion)
        throw IoError("unsupported space snapshot version " +
                      std::to_string(version) + ": " + path);

    LsaSpace space;
    auto term_count = read_le<std::uint64_t>(in, path);
    space.terms_.reserve(term_count);
    for (std::uint64_t t = 0; t < term_count; ++t) {
        auto len = read_le<std::uint32_t>(in, path);
        std::string term(len, '\0');
        if (len && !in.read(term.data(), len))
            throw IoError("truncated space snapshot: " + path);
        space.terms_.push_back(std::move(term));
    }
    auto k = read_le<std::uint32_t>(in, path);
    space.vectors_.resize(static_cast<Eigen::Index>(term_count),
                          static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < space.vectors_.rows(); ++i)
        for (Eigen::Index j = 0; j < space.vectors_.cols(); ++j)
            space.vectors_(i, j) = read_le<double>(in, path);
    space.vocab_.reserve(space.terms_.size());
    for (std::size_t i = 0; i < space.terms_.size(); ++i)
        space.vocab_.emplace(space.terms_[i], i);
    return space;
}

}  // namespace so
