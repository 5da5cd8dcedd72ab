#pragma once

#include <string>
#include <vector>

namespace so {

// A document before tokenization.  `source_name` is the file path relative
// to the corpus root, or "<file>:<line>" for line corpora; it is what
// subset globs match against.
struct RawDocument {
    std::string source_name;
    std::string text;
};

enum class CorpusFormat {
    auto_detect,  // directory -> dir, regular file -> lines
    dir,          // one document per file, walked recursively, sorted by path
    lines,        // one document per non-blank line
};

// Loads a corpus from disk.  Unreadable files throw IoError unless
// `skip_bad` is set, in which case they are reported to `skipped` (if given)
// and logged.  Document order is deterministic: sorted relative paths for
// directories, line order for line files.
std::vector<RawDocument> load_corpus(
    const std::string& path, CorpusFormat format = CorpusFormat::auto_detect,
    bool skip_bad = false, std::vector<std::string>* skipped = nullptr);

// Splits a document into paragraphs on runs of blank (whitespace-only)
// lines.  Used by the LSA paragraph chunking mode.
std::vector<std::string> split_paragraphs(const std::string& text);

// Keeps only documents whose source_name matches the glob (fnmatch syntax,
// '*' also crosses '/').  Order is preserved.
std::vector<RawDocument> filter_corpus(std::vector<RawDocument> docs,
                                       const std::string& source_pattern);

CorpusFormat parse_corpus_format(const std::string& name);

}  // namespace so
