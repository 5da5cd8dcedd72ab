#include "so/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "so/errors.hpp"
#include "so/log.hpp"

namespace fs = std::filesystem;

namespace so {

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path.string());
    return std::move(buf).str();
}

bool is_blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) {
        return std::isspace(c);
    });
}

std::vector<RawDocument> load_dir(const fs::path& root, bool skip_bad,
                                  std::vector<std::string>* skipped) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    // Directory iteration order is unspecified; sort for determinism.
    std::sort(files.begin(), files.end());

    std::vector<RawDocument> docs;
    docs.reserve(files.size());
    for (const auto& file : files) {
        std::string rel = fs::relative(file, root).generic_string();
        try {
            docs.push_back({rel, read_file(file)});
        } catch (const IoError& e) {
            if (!skip_bad) throw;
            log::warn("skipping document: ", e.what());
            if (skipped) skipped->push_back(rel);
        }
    }
    return docs;
}

std::vector<RawDocument> load_lines(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string base = path.filename().string();
    std::vector<RawDocument> docs;
    std::string line;
    std::size_t line_no = 0;
    std::size_t blank = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) {
            ++blank;
            continue;
        }
        docs.push_back({base + ":" + std::to_string(line_no), std::move(line)});
        line.clear();
    }
    if (in.bad()) throw IoError("cannot read " + path.string());
    if (blank) log::info("skipped ", blank, " blank line(s) in ", base);
    return docs;
}

}  // namespace

std::vector<RawDocument> load_corpus(const std::string& path,
                                     CorpusFormat format, bool skip_bad,
                                     std::vector<std::string>* skipped) {
    fs::path p(path);
    if (!fs::exists(p)) throw IoError("corpus path does not exist: " + path);
    if (format == CorpusFormat::auto_detect)
        format = fs::is_directory(p) ? CorpusFormat::dir : CorpusFormat::lines;
    if (format == CorpusFormat::dir) {
        if (!fs::is_directory(p))
            throw IoError("corpus format 'dir' requires a directory: " + path);
        return load_dir(p, skip_bad, skipped);
    }
    if (fs::is_directory(p))
        throw IoError("corpus format 'lines' requires a file: " + path);
    return load_lines(p);
}

std::vector<std::string> split_paragraphs(const std::string& text) {
    std::vector<std::string> paragraphs;
    std::string current;
    std::istringstream in(text);
    std::string line;
    const auto flush = [&] {
        if (!current.empty()) paragraphs.push_back(std::move(current));
        current.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) {
            flush();
        } else {
            if (!current.empty()) current += '\n';
            current += line;
        }
    }
    flush();
    return paragraphs;
}

std::vector<RawDocument> filter_corpus(std::vector<RawDocument> docs,
                                       const std::string& source_pattern) {
    std::erase_if(docs, [&](const RawDocument& d) {
        return fnmatch(source_pattern.c_str(), d.source_name.c_str(), 0) != 0;
    });
    return docs;
}

CorpusFormat parse_corpus_format(const std::string& name) {
    if (name == "auto") return CorpusFormat::auto_detect;
    if (name == "dir") return CorpusFormat::dir;
    if (name == "lines") return CorpusFormat::lines;
    throw ValidationError("unknown corpus format: " + name);
}

}  // namespace so
