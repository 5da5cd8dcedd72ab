#include "so/index.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <thread>

#include "so/errors.hpp"
#include "so/log.hpp"
#include "so/tokenize.hpp"

namespace so {

namespace {

unsigned effective_threads(unsigned requested, std::size_t work_items) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned t = requested == 0 ? hw : requested;
    if (work_items < t) t = static_cast<unsigned>(work_items);
    return t == 0 ? 1 : t;
}

std::vector<std::uint32_t> union_sorted(
    std::vector<std::vector<std::uint32_t>>&& lists) {
    if (lists.empty()) return {};
    if (lists.size() == 1) return std::move(lists[0]);
    std::size_t total = 0;
    for (const auto& l : lists) total += l.size();
    std::vector<std::uint32_t> out;
    out.reserve(total);
    for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint32_t> intersect_sorted(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(std::min(a.size(), b.size()));
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { out.push_back(a[i]); ++i; ++j; }
    }
    return out;
}

// Merge the sorted position lists of several terms within one document.
std::vector<std::uint32_t> merge_positions(
    const std::vector<const std::vector<std::uint32_t>*>& lists) {
    if (lists.size() == 1) return *lists[0];
    std::vector<std::uint32_t> out;
    std::size_t total = 0;
    for (const auto* l : lists) total += l->size();
    out.reserve(total);
    for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
    std::sort(out.begin(), out.end());
    return out;
}

// True if some p in `left` and q in `right` satisfy |p - q| <= window and
// p != q.  Both lists are sorted.
bool near_match(const std::vector<std::uint32_t>& left,
                const std::vector<std::uint32_t>& right, int window) {
    const auto w = static_cast<std::uint32_t>(window);
    std::size_t j = 0;
    for (std::uint32_t p : left) {
        const std::uint32_t lo = p > w ? p - w : 0;
        while (j < right.size() && right[j] < lo) ++j;
        if (j == right.size()) return false;
        if (right[j] != p) {
            if (right[j] <= p + w) return true;
        } else if (j + 1 < right.size() && right[j + 1] <= p + w) {
            return true;
        }
    }
    return false;
}

// NEAR operands must be Term or Or-of-Terms; returns the term words.
std::vector<const std::string*> near_operand_terms(const Query& q) {
    std::vector<const std::string*> words;
    if (q.kind() == Query::Kind::term) {
        words.push_back(&q.word());
        return words;
    }
    if (q.kind() == Query::Kind::any) {
        for (const auto& child : q.children()) {
            if (child.kind() != Query::Kind::term)
                throw UnsupportedQueryError(
                    "NEAR operand must be a term or a disjunction of terms: " +
                    q.to_string());
            words.push_back(&child.word());
        }
        return words;
    }
    throw UnsupportedQueryError(
        "NEAR operand must be a term or a disjunction of terms: " +
        q.to_string());
}

}  // namespace

PositionalIndex PositionalIndex::build(const std::vector<RawDocument>& docs,
                                       const IndexBuildOptions& opts,
                                       std::vector<std::string>* skipped) {
    // Tokenize in parallel into per-document slots, then assemble postings
    // sequentially in doc order so the result does not depend on the thread
    // count.
    std::vector<std::vector<Token>> tokenized(docs.size());
    std::vector<std::string> errors(docs.size());
    const unsigned threads = effective_threads(opts.threads, docs.size());

    const auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                tokenized[i] = tokenize(docs[i].text, docs[i].source_name);
            } catch (const EncodingError& e) {
                errors[i] = e.what();
            }
        }
    };
    if (threads <= 1) {
        worker(0, docs.size());
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::size_t chunk = (docs.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t begin = t * chunk;
            std::size_t end = std::min(docs.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    PositionalIndex index;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (!errors[i].empty()) {
            if (!opts.skip_bad_docs)
                tokenize(docs[i].text, docs[i].source_name);  // rethrows with details
            log::warn("skipping document: ", errors[i]);
            if (skipped) skipped->push_back(docs[i].source_name);
            continue;
        }
        const auto doc_id = static_cast<std::uint32_t>(index.source_names_.size());
        index.source_names_.push_back(docs[i].source_name);
        for (const Token& tok : tokenized[i]) {
            auto [it, inserted] = index.vocab_.try_emplace(
                tok.text, static_cast<std::uint32_t>(index.terms_.size()));
            if (inserted) {
                index.terms_.push_back(tok.text);
                index.postings_.emplace_back();
            }
            auto& plist = index.postings_[it->second];
            if (plist.empty() || plist.back().doc_id != doc_id)
                plist.push_back({doc_id, {}});
            plist.back().positions.push_back(tok.position);
        }
    }
    return index;
}

std::int64_t PositionalIndex::term_id(const std::string& term) const {
    auto it = vocab_.find(term);
    if (it == vocab_.end()) return -1;
    return it->second;
}

bool PositionalIndex::has_term(const std::string& term) const {
    return vocab_.count(term) != 0;
}

std::size_t PositionalIndex::doc_frequency(const std::string& term) const {
    auto id = term_id(term);
    return id < 0 ? 0 : postings_[static_cast<std::size_t>(id)].size();
}

std::uint64_t PositionalIndex::collection_frequency(
    const std::string& term) const {
    auto id = term_id(term);
    if (id < 0) return 0;
    std::uint64_t total = 0;
    for (const auto& p : postings_[static_cast<std::size_t>(id)])
        total += p.positions.size();
    return total;
}

std::size_t PositionalIndex::hits(const Query& query) const {
    return eval(query).size();
}

std::vector<std::uint32_t> PositionalIndex::matching_docs(
    const Query& query) const {
    return eval(query);
}

std::vector<std::uint32_t> PositionalIndex::eval(const Query& q) const {
    switch (q.kind()) {
        case Query::Kind::term: {
            auto id = term_id(q.word());
            if (id < 0) return {};
            const auto& plist = postings_[static_cast<std::size_t>(id)];
            std::vector<std::uint32_t> out;
            out.reserve(plist.size());
            for (const auto& p : plist) out.push_back(p.doc_id);
            return out;
        }
        case Query::Kind::any: {
            std::vector<std::vector<std::uint32_t>> lists;
            lists.reserve(q.children().size());
            for (const auto& child : q.children()) lists.push_back(eval(child));
            return union_sorted(std::move(lists));
        }
        case Query::Kind::all:
            return intersect_sorted(eval(q.left()), eval(q.right()));
        case Query::Kind::near:
            return eval_near(q);
    }
    return {};
}

std::vector<std::uint32_t> PositionalIndex::eval_near(const Query& q) const {
    const auto left_words = near_operand_terms(q.left());
    const auto right_words = near_operand_terms(q.right());

    const auto resolve = [&](const std::vector<const std::string*>& words) {
        std::vector<const std::vector<Posting>*> lists;
        for (const auto* w : words) {
            auto id = term_id(*w);
            if (id >= 0) lists.push_back(&postings_[static_cast<std::size_t>(id)]);
        }
        return lists;
    };
    const auto left_lists = resolve(left_words);
    const auto right_lists = resolve(right_words);
    if (left_lists.empty() || right_lists.empty()) return {};

    const auto doc_union = [](const std::vector<const std::vector<Posting>*>& ls) {
        std::vector<std::vector<std::uint32_t>> ids;
        ids.reserve(ls.size());
        for (const auto* l : ls) {
            std::vector<std::uint32_t> v;
            v.reserve(l->size());
            for (const auto& p : *l) v.push_back(p.doc_id);
            ids.push_back(std::move(v));
        }
        return union_sorted(std::move(ids));
    };
    const auto candidates =
        intersect_sorted(doc_union(left_lists), doc_union(right_lists));

    // Positions of any constituent term within one document.
    const auto positions_in_doc =
        [](const std::vector<const std::vector<Posting>*>& ls,
           std::uint32_t doc) {
            std::vector<const std::vector<std::uint32_t>*> found;
            for (const auto* plist : ls) {
                auto it = std::lower_bound(
                    plist->begin(), plist->end(), doc,
                    [](const Posting& p, std::uint32_t d) { return p.doc_id < d; });
                if (it != plist->end() && it->doc_id == doc)
                    found.push_back(&it->positions);
            }
            return found;
        };

    std::vector<std::uint32_t> out;
    for (std::uint32_t doc : candidates) {
        auto lp = positions_in_doc(left_lists, doc);
        auto rp = positions_in_doc(right_lists, doc);
        if (lp.empty() || rp.empty()) continue;
        if (near_match(merge_positions(lp), merge_positions(rp), q.window()))
            out.push_back(doc);
    }
    return out;
}

PositionalIndex PositionalIndex::subset(const std::string& source_pattern) const {
    std::vector<std::int64_t> remap(source_names_.size(), -1);
    PositionalIndex out;
    for (std::size_t doc = 0; doc < source_names_.size(); ++doc) {
        if (fnmatch(source_pattern.c_str(), source_names_[doc].c_str(), 0) == 0) {
            remap[doc] = static_cast<std::int64_t>(out.source_names_.size());
            out.source_names_.push_back(source_names_[doc]);
        }
    }
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        std::vector<Posting> kept;
        for (const auto& p : postings_[t]) {
            if (remap[p.doc_id] >= 0)
                kept.push_back({static_cast<std::uint32_t>(remap[p.doc_id]),
                                p.positions});
        }
        if (!kept.empty()) {
            out.terms_.push_back(terms_[t]);
            out.postings_.push_back(std::move(kept));
        }
    }
    out.rebuild_vocab();
    return out;
}

void PositionalIndex::rebuild_vocab() {
    vocab_.clear();
    vocab_.reserve(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i)
        vocab_.emplace(terms_[i], static_cast<std::uint32_t>(i));
}

namespace {

constexpr char kIndexMagic[4] = {'S', 'O', 'I', 'X'};
constexpr std::uint8_t kIndexVersion = 1;

// Little-endian fixed-width writers/readers; the on-disk layout is
// documented in docs/formats.md.
template <typename T>
void write_le(std::ostream& out, T value) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<unsigned char>((value >> (8 * i)) & 0xFF);
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::string& path) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T)))
        throw IoError("truncated index snapshot: " + path);
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        value |= static_cast<T>(buf[i]) << (8 * i);
    return value;
}

void write_string(std::ostream& out, const std::string& s) {
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in, const std::string& path) {
    auto len = read_le<std::uint32_t>(in, path);
    std::string s(len, '\0');
    if (len && !in.read(s.data(), len))
        throw IoError("truncated index snapshot: " + path);
    return s;
}

}  // namespace

void PositionalIndex::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(kIndexMagic, 4);
    write_le<std::uint8_t>(out, kIndexVersion);
    write_le<std::uint64_t>(out, source_names_.size());
    for (const auto& name : source_names_) write_string(out, name);
    write_le<std::uint64_t>(out, terms_.size());
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        write_string(out, terms_[t]);
        write_le<std::uint64_t>(out, postings_[t].size());
        for (const auto& p : postings_[t]) {
            write_le<std::uint32_t>(out, p.doc_id);
            write_le<std::uint32_t>(out,
                                    static_cast<std::uint32_t>(p.positions.size()));
            for (auto pos : p.positions) write_le<std::uint32_t>(out, pos);
        }
    }
    if (!out) throw IoError("write failed: " + path);
}

PositionalIndex PositionalIndex::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    char magic[4];
    if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kIndexMagic))
        throw IoError("not an index snapshot (bad magic): " + path);
    auto version = read_le<std::uint8_t>(in, path);
    if (version != kIndexVersion)
        throw IoError("unsupported index snapshot version " +
                      std::to_string(version) + ": " + path);

    PositionalIndex index;
    auto doc_count = read_le<std::uint64_t>(in, path);
    index.source_names_.reserve(doc_count);
    for (std::uint64_t d = 0; d < doc_count; ++d)
        index.source_names_.push_back(read_string(in, path));
    auto term_count = read_le<std::uint64_t>(in, path);
    index.terms_.reserve(term_count);
    index.postings_.reserve(term_count);
    for (std::uint64_t t = 0; t < term_count; ++t) {
        index.terms_.push_back(read_string(in, path));
        auto n_postings = read_le<std::uint64_t>(in, path);
        std::vector<Posting> plist;
        plist.reserve(n_postings);
        for (std::uint64_t p = 0; p < n_postings; ++p) {
            Posting posting;
            posting.doc_id = read_le<std::uint32_t>(in, path);
            auto n_pos = read_le<std::uint32_t>(in, path);
            posting.positions.reserve(n_pos);
            for (std::uint32_t k = 0; k < n_pos; ++k)
                posting.positions.push_back(read_le<std::uint32_t>(in, path));
            plist.push_back(std::move(posting));
        }
        index.postings_.push_back(std::move(plist));
    }
    index.rebuild_vocab();
    return index;
}

}  // namespace so
