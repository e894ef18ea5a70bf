#include "relex/term.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace relex {

bool is_atom_shaped(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        unsigned char c = s[i];
        if (std::isalnum(c) || c == '_') continue;
        if (c == '-') {
            // hyphen must sit between alphanumerics
            if (i + 1 >= s.size()) return false;
            unsigned char nxt = s[i + 1];
            if (!std::isalnum(nxt)) return false;
            continue;
        }
        return false;
    }
    return true;
}

bool is_variable_name(const std::string& s) {
    if (s.empty()) return false;
    unsigned char c = s[0];
    if (!(std::isupper(c) || c == '_')) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        unsigned char x = s[i];
        if (!(std::isalnum(x) || x == '_')) return false;
    }
    return true;
}

Term Term::atom_or_str(const std::string& n) {
    return is_atom_shaped(n) ? constant(n) : str(n);
}

bool Literal::is_ground() const {
    for (const auto& a : args)
        if (a.is_var()) return false;
    return true;
}

Term Substitution::walk(const Term& t) const {
    Term cur = t;
    while (cur.is_var()) {
        auto it = bindings_.find(cur.name);
        if (it == bindings_.end()) break;
        cur = it->second;
    }
    return cur;
}

bool Substitution::bind(const std::string& var, const Term& value) {
    Term v = walk(value);
    if (v.is_var() && v.name == var) return true;  // X -> X: nothing to record
    bindings_[var] = v;
    return true;
}

Literal Substitution::apply(const Literal& l) const {
    Literal out;
    out.predicate = l.predicate;
    out.args.reserve(l.args.size());
    for (const auto& a : l.args) out.args.push_back(walk(a));
    return out;
}

Clause Substitution::apply(const Clause& c) const {
    Clause out;
    out.head = apply(c.head);
    out.body.reserve(c.body.size());
    for (const auto& l : c.body) out.body.push_back(apply(l));
    return out;
}

Substitution Substitution::restrict_to(const std::vector<std::string>& vars) const {
    Substitution out;
    for (const auto& v : vars) {
        Term w = walk(Term::var(v));
        if (!(w.is_var() && w.name == v)) out.bindings_[v] = w;
    }
    return out;
}

std::optional<Substitution> unify_terms(const Term& a, const Term& b, Substitution s) {
    Term x = s.walk(a);
    Term y = s.walk(b);
    if (x.is_var()) {
        s.bind(x.name, y);
        return s;
    }
    if (y.is_var()) {
        s.bind(y.name, x);
        return s;
    }
    if (x == y) return s;
    return std::nullopt;
}

std::optional<Substitution> unify(const Literal& a, const Literal& b, const Substitution& start) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) return std::nullopt;
    Substitution s = start;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        auto next = unify_terms(a.args[i], b.args[i], std::move(s));
        if (!next) return std::nullopt;
        s = std::move(*next);
    }
    return s;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
    if (!t.is_var()) return;
    for (const auto& v : out)
        if (v == t.name) return;
    out.push_back(t.name);
}

void collect_vars(const Literal& l, std::vector<std::string>& out) {
    for (const auto& a : l.args) collect_vars(a, out);
}

std::vector<std::string> clause_vars(const Clause& c) {
    std::vector<std::string> out;
    collect_vars(c.head, out);
    for (const auto& l : c.body) collect_vars(l, out);
    return out;
}

std::string print_term(const Term& t) {
    switch (t.kind) {
        case TermKind::Variable:
            return t.name;
        case TermKind::Constant:
            return t.name;
        case TermKind::Int:
            return std::to_string(t.ival);
        case TermKind::Str: {
            std::string out = "\"";
            for (char c : t.name) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += '"';
            return out;
        }
    }
    return {};
}

std::string print_literal(const Literal& l) {
    std::string out = l.predicate;
    if (!l.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < l.args.size(); ++i) {
            if (i) out += ',';
            out += print_term(l.args[i]);
        }
        out += ')';
    }
    return out;
}

std::string canonical_var_name(std::size_t index) {
    std::string base(1, static_cast<char>('A' + index % 26));
    std::size_t round = index / 26;
    if (round == 0) return base;
    return base + std::to_string(round);
}

Clause canonicalize(const Clause& c) {
    std::vector<std::string> vars = clause_vars(c);
    Substitution ren;
    for (std::size_t i = 0; i < vars.size(); ++i) ren.bind(vars[i], Term::var(canonical_var_name(i)));
    return ren.apply(c);
}

std::string print_clause_raw(const Clause& c) {
    std::string out = print_literal(c.head);
    if (!c.body.empty()) {
        out += " :- ";
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            if (i) out += ", ";
            out += print_literal(c.body[i]);
        }
    }
    out += '.';
    return out;
}

std::string print_clause(const Clause& c) { return print_clause_raw(canonicalize(c)); }

std::string print_substitution(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += v + "->" + print_term(t);
    }
    out += "}";
    return out;
}

bool alpha_equal(const Clause& a, const Clause& b) {
    return canonicalize(a) == canonicalize(b);
}

}  // namespace relex
