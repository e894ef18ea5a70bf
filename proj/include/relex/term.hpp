// First-order terms, literals and definite clauses over a flat term algebra:
// variables, constants, integers and strings (no function symbols).

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace relex {

enum class TermKind { Variable, Constant, Int, Str };

struct Term {
    TermKind kind = TermKind::Constant;
    std::string name;       // Variable / Constant / Str payload
    std::int64_t ival = 0;  // Int payload

    static Term var(std::string n) { return {TermKind::Variable, std::move(n), 0}; }
    static Term constant(std::string n) { return {TermKind::Constant, std::move(n), 0}; }
    static Term integer(std::int64_t v) { return {TermKind::Int, {}, v}; }
    static Term str(std::string s) { return {TermKind::Str, std::move(s), 0}; }
    // Constant when `n` is atom-shaped (lowercase start, [a-z0-9_-]*), Str otherwise.
    static Term atom_or_str(const std::string& n);

    bool is_var() const { return kind == TermKind::Variable; }
    bool is_ground() const { return kind != TermKind::Variable; }

    bool operator==(const Term& o) const {
        return kind == o.kind && name == o.name && ival == o.ival;
    }
    bool operator!=(const Term& o) const { return !(*this == o); }
    bool operator<(const Term& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (name != o.name) return name < o.name;
        return ival < o.ival;
    }
};

// True when `s` parses as a bare atom: [a-z][a-zA-Z0-9_]* with single '-'
// runs allowed between alphanumerics (state-or-province).
bool is_atom_shaped(const std::string& s);
bool is_variable_name(const std::string& s);

struct Literal {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const { return args.size(); }
    bool is_ground() const;
    // "pred/2" — the knowledge-base indexing key.
    std::string key() const { return predicate + "/" + std::to_string(args.size()); }

    bool operator==(const Literal& o) const { return predicate == o.predicate && args == o.args; }
    bool operator!=(const Literal& o) const { return !(*this == o); }
    bool operator<(const Literal& o) const {
        if (predicate != o.predicate) return predicate < o.predicate;
        return args < o.args;
    }
};

struct Clause {
    Literal head;
    std::vector<Literal> body;  // empty => fact

    bool is_fact() const { return body.empty() && head.is_ground(); }
    bool operator==(const Clause& o) const { return head == o.head && body == o.body; }
    bool operator!=(const Clause& o) const { return !(*this == o); }
};

// Idempotent variable binding map. Terms are flat, so the only chains are
// variable -> variable -> ... -> ground; `walk` resolves them.
class Substitution {
public:
    Substitution() = default;

    bool contains(const std::string& var) const { return bindings_.count(var) != 0; }
    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }

    // Dereferences `t` through the binding chain.
    Term walk(const Term& t) const;

    // Binds var -> walk(value). Fails (returns false) only on a genuine
    // conflict; binding a variable to itself is a no-op success.
    bool bind(const std::string& var, const Term& value);

    Term apply(const Term& t) const { return walk(t); }
    Literal apply(const Literal& l) const;
    Clause apply(const Clause& c) const;

    // Restriction to the given variable names (after walking).
    Substitution restrict_to(const std::vector<std::string>& vars) const;

    const std::map<std::string, Term>& bindings() const { return bindings_; }

    bool operator==(const Substitution& o) const { return bindings_ == o.bindings_; }

private:
    std::map<std::string, Term> bindings_;
};

// Most general unifier of two literals extending `start`; nullopt on failure.
std::optional<Substitution> unify(const Literal& a, const Literal& b, const Substitution& start = {});
std::optional<Substitution> unify_terms(const Term& a, const Term& b, Substitution s);

// Collects variable names in first-occurrence order.
void collect_vars(const Term& t, std::vector<std::string>& out);
void collect_vars(const Literal& l, std::vector<std::string>& out);
std::vector<std::string> clause_vars(const Clause& c);

// Printing. Terms print as bare atoms, integers, quoted strings (with \" and
// \\ escapes) or variable names. Clauses print as
//   head :- lit1, lit2.     (facts as "head.")
// print_clause canonicalizes variables to A, B, ..., Z, A1, B1, ... by first
// occurrence; print_clause_raw keeps stored names.
std::string print_term(const Term& t);
std::string print_literal(const Literal& l);
std::string print_clause(const Clause& c);
std::string print_clause_raw(const Clause& c);
std::string print_substitution(const Substitution& s);
std::string canonical_var_name(std::size_t index);

// Renames variables to the canonical A, B, C... scheme by first occurrence.
Clause canonicalize(const Clause& c);

// Equality modulo variable renaming.
bool alpha_equal(const Clause& a, const Clause& b);

}  // namespace relex
