// Lightweight class taxonomy: a single-rooted acyclic parent map plus
// synonym aliases. File format is two-column TSV:
//
//   child<TAB>parent          (before the %% synonyms marker)
//   %% synonyms
//   synonym<TAB>class         (after it)
//
// '%' starts a comment elsewhere.

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace relex {

class Taxonomy {
public:
    // empty taxonomy: no classes, every resolve fails
    Taxonomy() = default;

    void add_class(const std::string& child, const std::string& parent);
    void add_synonym(const std::string& synonym, const std::string& cls);

    // Validates acyclicity and the single-root invariant. Throws DataError.
    void validate();

    bool has_class(const std::string& cls) const;
    bool empty() const { return parent_.empty(); }

    // Canonical class for a label (identity for classes, alias lookup for
    // synonyms). Throws DataError for unknown labels.
    std::string resolve(const std::string& label) const;

    // Chain from `cls` (exclusive) to the root (inclusive).
    std::vector<std::string> ancestors(const std::string& cls) const;

    const std::string& root() const { return root_; }

private:
    std::map<std::string, std::string> parent_;  // class -> parent ("" for root)
    std::map<std::string, std::string> synonym_;
    std::string root_;
};

Taxonomy parse_taxonomy(const std::string& text);
Taxonomy load_taxonomy(const std::string& path);

}  // namespace relex
