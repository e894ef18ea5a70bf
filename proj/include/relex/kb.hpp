// Ground-fact base with (predicate, arity) and first-argument indexes, plus
// non-recursive intensional clauses whose bodies may use integer comparisons.
// Immutable once built; concurrent readers need no synchronization.

#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "relex/term.hpp"

namespace relex {

struct SolveBounds {
    int max_depth = 12;        // nesting of intensional-clause expansions
    int max_solutions = 500;   // distinct solutions returned
    long max_steps = 1000000;  // total resolution steps

    void validate() const;  // all bounds >= 1
};

class KnowledgeBase {
public:
    KnowledgeBase() = default;

    // Adds a ground fact. Throws DataError on non-ground literal or on an
    // arity conflict with an existing predicate.
    void add_fact(const Literal& fact);

    // Adds an intensional clause (head :- body). Arity conflicts checked
    // against facts and other clause heads.
    void add_clause(const Clause& c);

    // Validates that the intensional predicate dependency graph is acyclic.
    // Throws DataError on a cycle. Called by loaders after the last add.
    void seal();

    bool has_fact(const Literal& ground) const;

    // Facts under `pred/arity` in insertion order.
    const std::vector<Literal>& facts_for(const std::string& key) const;

    // Insertion-order positions of facts whose first argument equals `first`
    // (both under key). Used when the goal's first argument is ground.
    const std::vector<std::size_t>* first_arg_positions(const std::string& key, const Term& first) const;

    const std::vector<Clause>& intensional() const { return intensional_; }
    const std::vector<std::size_t>* intensional_for(const std::string& key) const;

    std::size_t fact_count() const { return fact_count_; }

    // Distinct ground terms appearing anywhere in the facts, in first-seen
    // order (the Herbrand universe for oracle enumeration and typing checks).
    const std::vector<Term>& ground_terms() const { return universe_; }

    // All (predicate, arity) fact keys in first-seen order.
    const std::vector<std::string>& fact_keys() const { return fact_key_order_; }

private:
    struct FactGroup {
        std::size_t arity = 0;
        std::vector<Literal> facts;
        std::map<Term, std::vector<std::size_t>> by_first_arg;
        std::unordered_set<std::string> printed;  // exact-duplicate / membership check
    };

    void check_arity(const std::string& pred, std::size_t arity);

    std::unordered_map<std::string, FactGroup> groups_;
    std::vector<std::string> fact_key_order_;
    std::unordered_map<std::string, std::size_t> pred_arity_;  // predicate -> fixed arity
    std::vector<Clause> intensional_;
    std::unordered_map<std::string, std::vector<std::size_t>> intensional_index_;
    std::vector<Term> universe_;
    std::unordered_set<std::string> universe_seen_;
    std::size_t fact_count_ = 0;
};

// Parses fact-file text (one ground fact per line, '%' comments). Rejects
// clauses with bodies, non-ground facts and arity conflicts.
KnowledgeBase parse_fact_base(const std::string& text);

// Parses a program that may mix ground facts and intensional clauses.
KnowledgeBase parse_kb_program(const std::string& text);

}  // namespace relex
