#include "so/query.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "so/errors.hpp"
#include "so/tokenize.hpp"

namespace so {

Query Query::Term(std::string word) {
    Query q;
    q.kind_ = Kind::term;
    q.word_ = std::move(word);
    return q;
}

Query Query::Or(std::vector<Query> items) {
    if (items.empty())
        throw ValidationError("Or query requires at least one subquery");
    Query q;
    q.kind_ = Kind::any;
    for (auto& item : items) {
        if (item.kind_ == Kind::any) {
            for (auto& sub : item.children_) {
                if (std::find(q.children_.begin(), q.children_.end(), sub) ==
                    q.children_.end())
                    q.children_.push_back(std::move(sub));
            }
        } else if (std::find(q.children_.begin(), q.children_.end(), item) ==
                   q.children_.end()) {
            q.children_.push_back(std::move(item));
        }
    }
    return q;
}

Query Query::Near(Query left, Query right, int window) {
    if (window < 1) throw ValidationError("NEAR window must be >= 1");
    Query q;
    q.kind_ = Kind::near;
    q.children_.push_back(std::move(left));
    q.children_.push_back(std::move(right));
    q.window_ = window;
    return q;
}

Query Query::And(Query left, Query right) {
    Query q;
    q.kind_ = Kind::all;
    q.children_.push_back(std::move(left));
    q.children_.push_back(std::move(right));
    return q;
}

bool Query::operator==(const Query& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::term:
            return word_ == other.word_;
        case Kind::near:
            if (window_ != other.window_) return false;
            [[fallthrough]];
        case Kind::any:
        case Kind::all:
            return children_ == other.children_;
    }
    return false;
}

std::string Query::to_string() const {
    switch (kind_) {
        case Kind::term:
            return word_;
        case Kind::any: {
            std::string out = "(";
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i) out += " OR ";
                out += children_[i].to_string();
            }
            return out + ")";
        }
        case Kind::near:
            return "(" + left().to_string() + " NEAR/" +
                   std::to_string(window_) + " " + right().to_string() + ")";
        case Kind::all:
            return "(" + left().to_string() + " AND " + right().to_string() +
                   ")";
    }
    return {};
}

namespace {

struct Lexer {
    enum class Tok { word, op_or, op_and, op_near, lparen, rparen, end };

    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    Tok tok = Tok::end;
    std::string word;   // for Tok::word
    int near_window = 0;  // for Tok::op_near, 0 = use default

    void advance() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ >= text_.size()) {
            tok = Tok::end;
            return;
        }
        char c = text_[pos_];
        if (c == '(') { ++pos_; tok = Tok::lparen; return; }
        if (c == ')') { ++pos_; tok = Tok::rparen; return; }
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(
                                          text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            ++pos_;
        std::string raw = text_.substr(start, pos_ - start);
        if (raw == "OR") { tok = Tok::op_or; return; }
        if (raw == "AND") { tok = Tok::op_and; return; }
        if (raw == "NEAR" || raw.rfind("NEAR/", 0) == 0) {
            tok = Tok::op_near;
            near_window = 0;
            if (raw.size() > 5) {
                try {
                    std::size_t used = 0;
                    near_window = std::stoi(raw.substr(5), &used);
                    if (used != raw.size() - 5 || near_window < 1)
                        throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw QueryParseError("bad NEAR window in '" + raw + "'");
                }
            }
            return;
        }
        tok = Tok::word;
        word = std::move(raw);
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(const std::string& text, int near_window)
        : lex_(text), default_window_(near_window) {}

    Query parse() {
        Query q = parse_or();
        if (lex_.tok != Lexer::Tok::end)
            throw QueryParseError("unexpected trailing input in query");
        return q;
    }

private:
    Query parse_or() {
        std::vector<Query> items;
        items.push_back(parse_and());
        while (lex_.tok == Lexer::Tok::op_or) {
            lex_.advance();
            items.push_back(parse_and());
        }
        if (items.size() == 1) return std::move(items[0]);
        return Query::Or(std::move(items));
    }

    Query parse_and() {
        Query q = parse_near();
        while (lex_.tok == Lexer::Tok::op_and) {
            lex_.advance();
            q = Query::And(std::move(q), parse_near());
        }
        return q;
    }

    Query parse_near() {
        Query q = parse_atom();
        while (lex_.tok == Lexer::Tok::op_near) {
            int window = lex_.near_window ? lex_.near_window : default_window_;
            lex_.advance();
            q = Query::Near(std::move(q), parse_atom(), window);
        }
        return q;
    }

    Query parse_atom() {
        switch (lex_.tok) {
            case Lexer::Tok::lparen: {
                lex_.advance();
                Query q = parse_or();
                if (lex_.tok != Lexer::Tok::rparen)
                    throw QueryParseError("missing ')' in query");
                lex_.advance();
                return q;
            }
            case Lexer::Tok::word: {
                std::string w = std::move(lex_.word);
                lex_.advance();
                // Index terms are tokenizer output; normalize the query word
                // the same way.  Words that split (e.g. "can't") are not
                // phrase queries and are rejected.
                auto toks = tokenize(w, "<query>");
                if (toks.size() != 1)
                    throw QueryParseError("not a single term: '" + w + "'");
                return Query::Term(std::move(toks[0].text));
            }
            default:
                throw QueryParseError("expected term or '(' in query");
        }
    }

    Lexer lex_;
    int default_window_;
};

}  // namespace

Query parse_query(const std::string& text, int near_window) {
    if (near_window < 1) throw ValidationError("NEAR window must be >= 1");
    return Parser(text, near_window).parse();
}

}  // namespace so
