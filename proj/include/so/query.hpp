#pragma once

#include <string>
#include <vector>

namespace so {

inline constexpr int kDefaultNearWindow = 10;

// Hit-count query tree: Term(word), Or(subqueries), Near(left, right,
// window) and And(left, right).  Queries are immutable values; build them
// with the static factories.  Or construction normalizes: nested Ors are
// flattened one level and structurally equal children are dropped.
class Query {
public:
    enum class Kind { term, any, near, all };

    static Query Term(std::string word);
    static Query Or(std::vector<Query> items);          // items must be non-empty
    static Query Near(Query left, Query right, int window = kDefaultNearWindow);
    static Query And(Query left, Query right);

    Kind kind() const { return kind_; }
    const std::string& word() const { return word_; }          // term only
    const std::vector<Query>& children() const { return children_; }
    const Query& left() const { return children_[0]; }         // near/and
    const Query& right() const { return children_[1]; }        // near/and
    int window() const { return window_; }                     // near only

    bool operator==(const Query& other) const;

    // Round-trippable through parse_query: `good`, `(a OR b)`,
    // `(a NEAR/5 b)`, `(a AND b)`.
    std::string to_string() const;

private:
    Query() = default;

    Kind kind_ = Kind::term;
    std::string word_;
    std::vector<Query> children_;
    int window_ = kDefaultNearWindow;
};

// Parses the CLI query syntax: terms, OR, NEAR, AND (operators uppercase;
// lowercase forms are ordinary terms), parentheses for grouping.  Binding
// tightness: NEAR > AND > OR, all left-associative.  `NEAR/k` overrides the
// window for one operator; `near_window` sets the default for the rest.
// Throws QueryParseError on malformed input.
Query parse_query(const std::string& text, int near_window = kDefaultNearWindow);

}  // namespace so
