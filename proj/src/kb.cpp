#include "relex/kb.hpp"

#include <functional>

#include "relex/errors.hpp"
#include "relex/parse.hpp"

namespace relex {

void SolveBounds::validate() const {
    if (max_depth < 1 || max_solutions < 1 || max_steps < 1)
        throw ConfigError("solve bounds must all be >= 1");
}

void KnowledgeBase::check_arity(const std::string& pred, std::size_t arity) {
    auto [it, inserted] = pred_arity_.emplace(pred, arity);
    if (!inserted && it->second != arity)
        throw DataError("arity conflict for predicate '" + pred + "': " + std::to_string(arity) +
                        " vs existing " + std::to_string(it->second));
}

void KnowledgeBase::add_fact(const Literal& fact) {
    if (!fact.is_ground()) throw DataError("non-ground fact: " + print_literal(fact));
    check_arity(fact.predicate, fact.args.size());
    const std::string key = fact.key();
    auto [it, inserted] = groups_.emplace(key, FactGroup{});
    FactGroup& g = it->second;
    if (inserted) {
        g.arity = fact.args.size();
        fact_key_order_.push_back(key);
    }
    if (!g.printed.insert(print_literal(fact)).second) return;  // set semantics
    const std::size_t pos = g.facts.size();
    g.facts.push_back(fact);
    if (!fact.args.empty()) g.by_first_arg[fact.args[0]].push_back(pos);
    ++fact_count_;
    for (const auto& a : fact.args) {
        if (universe_seen_.insert(print_term(a)).second) universe_.push_back(a);
    }
}

void KnowledgeBase::add_clause(const Clause& c) {
    if (c.body.empty() && c.head.is_ground()) {
        add_fact(c.head);
        return;
    }
    check_arity(c.head.predicate, c.head.args.size());
    for (const auto& l : c.body)
        if (!is_comparison_builtin(l.predicate)) check_arity(l.predicate, l.args.size());
    intensional_index_[c.head.key()].push_back(intensional_.size());
    intensional_.push_back(c);
}

void KnowledgeBase::seal() {
    // cycle check over the predicate dependency graph of intensional clauses
    std::unordered_map<std::string, std::vector<std::string>> deps;
    for (const auto& c : intensional_) {
        auto& ds = deps[c.head.key()];
        for (const auto& l : c.body)
            if (intensional_index_.count(l.key())) ds.push_back(l.key());
    }
    std::unordered_map<std::string, int> state;  // 0=unvisited 1=open 2=done
    std::function<void(const std::string&)> visit = [&](const std::string& key) {
        int& st = state[key];
        if (st == 1) throw DataError("recursive intensional predicate: " + key);
        if (st == 2) return;
        st = 1;
        for (const auto& d : deps[key]) visit(d);
        st = 2;
    };
    for (const auto& [key, _] : deps) visit(key);
}

static const std::vector<Literal> kNoFacts;

bool KnowledgeBase::has_fact(const Literal& ground) const {
    auto it = groups_.find(ground.key());
    return it != groups_.end() && it->second.printed.count(print_literal(ground)) != 0;
}

const std::vector<Literal>& KnowledgeBase::facts_for(const std::string& key) const {
    auto it = groups_.find(key);
    return it == groups_.end() ? kNoFacts : it->second.facts;
}

const std::vector<std::size_t>* KnowledgeBase::first_arg_positions(const std::string& key,
                                                                   const Term& first) const {
    auto it = groups_.find(key);
    if (it == groups_.end()) return nullptr;
    auto jt = it->second.by_first_arg.find(first);
    static const std::vector<std::size_t> kEmpty;
    return jt == it->second.by_first_arg.end() ? &kEmpty : &jt->second;
}

const std::vector<std::size_t>* KnowledgeBase::intensional_for(const std::string& key) const {
    auto it = intensional_index_.find(key);
    return it == intensional_index_.end() ? nullptr : &it->second;
}

KnowledgeBase parse_fact_base(const std::string& text) {
    KnowledgeBase kb;
    std::vector<Clause> clauses = parse_program(text);
    for (const auto& c : clauses) {
        if (!c.body.empty()) throw DataError("rule found in fact file: " + print_clause_raw(c));
        if (!c.head.is_ground()) throw DataError("non-ground fact: " + print_literal(c.head));
        kb.add_fact(c.head);
    }
    kb.seal();
    return kb;
}

KnowledgeBase parse_kb_program(const std::string& text) {
    KnowledgeBase kb;
    for (const auto& c : parse_program(text)) kb.add_clause(c);
    kb.seal();
    return kb;
}

}  // namespace relex
