#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "so/corpus.hpp"
#include "so/orientation.hpp"
#include "so/svd.hpp"

namespace so {

inline constexpr int kDefaultLsaRank = 300;

enum class Chunking { document, paragraph };

Chunking parse_chunking(const std::string& name);

// Sparse term-chunk matrix with log-TF * IDF weights:
//   entry(t, c) = (1 + log2 tf(t, c)) * log2(N / df(t))   when tf > 0.
// Terms occurring in every chunk have idf 0 and are dropped (warned).
struct TermDocMatrix {
    Eigen::SparseMatrix<double> a;        // rows = terms, cols = chunks
    std::vector<std::string> row_labels;  // term per row
    std::vector<std::string> col_labels;  // chunk id per column
    std::string weighting = "log-tf.idf";
};

// Splits the corpus into chunks (whole documents or blank-line paragraphs),
// tokenizes, and weights.  Throws EmptyCorpusError when no chunk has a
// token and ValidationError("degenerate corpus...") when every term occurs
// in every chunk (e.g. a single-chunk corpus).
TermDocMatrix build_matrix(const std::vector<RawDocument>& corpus,
                           Chunking chunking = Chunking::document);

struct LsaSpaceOptions {
    // Rows of U_k * Sigma_k by default; bare U_k rows for comparison runs.
    bool scale_by_sigma = true;
};

// Vocabulary plus compressed row vectors.  Immutable after construction;
// similarity queries are concurrent-read safe.
class LsaSpace {
public:
    LsaSpace() = default;
    LsaSpace(const SvdFactors& factors, std::vector<std::string> row_labels,
             const LsaSpaceOptions& options = {});

    int k() const { return static_cast<int>(vectors_.cols()); }
    std::size_t vocab_size() const { return terms_.size(); }
    bool contains(const std::string& word) const;
    const std::vector<std::string>& terms() const { return terms_; }

    // Row vector of a vocabulary word; throws MissingWordError otherwise.
    Eigen::VectorXd vector_of(const std::string& word) const;

    // Versioned binary snapshot ("SOLS"); see docs/formats.md.
    void save(const std::string& path) const;
    static LsaSpace load(const std::string& path);

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, std::size_t> vocab_;
    Eigen::MatrixXd vectors_;  // vocab_size x k

    friend double lsa_similarity(const LsaSpace&, const std::string&,
                                 const std::string&);
};

LsaSpace make_space(const SvdFactors& factors,
                    std::vector<std::string> row_labels,
                    const LsaSpaceOptions& options = {});

// Cosine between two words' compressed vectors, clamped to [-1, 1].
// Throws MissingWordError for out-of-vocabulary words and
// UndefinedSimilarityError when either vector is zero.
double lsa_similarity(const LsaSpace& space, const std::string& word1,
                      const std::string& word2);

enum class MissingPolicy { error, zero };

MissingPolicy parse_missing_policy(const std::string& name);

// SO-LSA: sum of cosines to the positive paradigm words minus the sum to
// the negative ones.  An out-of-vocabulary paradigm word aborts under
// MissingPolicy::error (listing every absent paradigm) and contributes 0
// with a "missing-paradigm:<w>" flag under MissingPolicy::zero.  The target
// word must be in the vocabulary.
SOScore so_lsa(const LsaSpace& space, const std::string& word,
               const ParadigmSet& paradigms,
               MissingPolicy missing_policy = MissingPolicy::error,
               std::vector<std::string>* flags = nullptr);

WordOutcome score_word_lsa(const LsaSpace& space, const std::string& word,
                           const ParadigmSet& paradigms,
                           MissingPolicy missing_policy = MissingPolicy::error);

std::vector<WordOutcome> score_words_lsa(
    const LsaSpace& space, const std::vector<std::string>& words,
    const ParadigmSet& paradigms,
    MissingPolicy missing_policy = MissingPolicy::error);

}  // namespace so
