#include "relex/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "relex/errors.hpp"

namespace relex {

std::size_t SentenceGraph::alive_token_count() const {
    std::size_t n = 0;
    for (char a : token_alive) n += a ? 1 : 0;
    return n;
}

std::vector<std::size_t> SentenceGraph::alive_tokens() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < token_alive.size(); ++i)
        if (token_alive[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> SentenceGraph::alive_chunks() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < chunk_alive.size(); ++i)
        if (chunk_alive[i]) out.push_back(i);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> SentenceGraph::next_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    auto alive = alive_tokens();
    for (std::size_t i = 1; i < alive.size(); ++i) out.emplace_back(alive[i - 1], alive[i]);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> SentenceGraph::next_head_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    auto chunks = alive_chunks();
    for (std::size_t i = 1; i < chunks.size(); ++i)
        out.emplace_back(sentence->chunks[chunks[i - 1]].head_index,
                         sentence->chunks[chunks[i]].head_index);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> SentenceGraph::chunk_succ_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    auto chunks = alive_chunks();
    for (std::size_t i = 1; i < chunks.size(); ++i) out.emplace_back(chunks[i - 1], chunks[i]);
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> SentenceGraph::membership_edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t ci = 0; ci < chunk_alive.size(); ++ci) {
        if (!chunk_alive[ci]) continue;
        const Chunk& ck = sentence->chunks[ci];
        for (std::size_t t : ck.token_indexes)
            if (token_alive[t] && t != ck.head_index) out.emplace_back(t, ck.head_index);
    }
    return out;
}

std::size_t SentenceGraph::edge_count() const {
    return deps.size() + next_edges().size() + membership_edges().size() + chunk_succ_edges().size();
}

long SentenceGraph::chunk_of(std::size_t token_index) const {
    for (std::size_t ci = 0; ci < sentence->chunks.size(); ++ci) {
        const Chunk& ck = sentence->chunks[ci];
        for (std::size_t t : ck.token_indexes)
            if (t == token_index) return static_cast<long>(ci);
    }
    return -1;
}

SentenceGraph build_graph(const Sentence& s) {
    SentenceGraph g;
    g.sentence = &s;
    g.token_alive.assign(s.tokens.size(), 1);
    g.chunk_alive.assign(s.chunks.size(), 1);
    g.deps = s.deps;
    // root: first token governing an edge and depending on none
    std::vector<char> is_gov(s.tokens.size(), 0), is_dep(s.tokens.size(), 0);
    for (const auto& e : s.deps) {
        is_gov[e.governor] = 1;
        is_dep[e.dependent] = 1;
    }
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        if (is_gov[i] && !is_dep[i]) {
            g.root_index = static_cast<long>(i);
            break;
        }
    }
    return g;
}

std::vector<long> pair_hop_distances(const SentenceGraph& g, const EntityMention& ent1,
                                     const EntityMention& ent2) {
    const std::size_t n = g.token_alive.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.deps) {
        adj[e.governor].push_back(e.dependent);
        adj[e.dependent].push_back(e.governor);
    }
    std::vector<long> dist(n, -1);
    std::deque<std::size_t> queue;
    for (std::size_t h : {ent1.head_index, ent2.head_index}) {
        if (h < n && dist[h] != 0) {
            dist[h] = 0;
            queue.push_back(h);
        }
    }
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t w : adj[v]) {
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

namespace {

bool token_in_mention(const EntityMention& e, std::size_t token_index) {
    for (std::size_t t : e.token_indexes)
        if (t == token_index) return true;
    return false;
}

struct Matcher {
    const SentenceGraph& g;
    const EntityMention& ent1;
    const EntityMention& ent2;
    std::vector<long> dist;  // filled lazily per pass when a Dist cond exists

    bool in_set(const std::vector<std::string>& labels, const std::string& v) const {
        return std::find(labels.begin(), labels.end(), v) != labels.end();
    }

    bool holds(const RuleCond& c, std::size_t t) const {
        bool v = false;
        switch (c.kind) {
            case CondKind::Pos:
                v = in_set(c.labels, g.sentence->tokens[t].pos);
                break;
            case CondKind::EdgeAny:
                for (const auto& e : g.deps)
                    if ((e.governor == t || e.dependent == t) && in_set(c.labels, e.label)) {
                        v = true;
                        break;
                    }
                break;
            case CondKind::EdgeIn:  // node is the dependent
                for (const auto& e : g.deps)
                    if (e.dependent == t && in_set(c.labels, e.label)) {
                        v = true;
                        break;
                    }
                break;
            case CondKind::EdgeOut:  // node is the governor
                for (const auto& e : g.deps)
                    if (e.governor == t && in_set(c.labels, e.label)) {
                        v = true;
                        break;
                    }
                break;
            case CondKind::InEntity:
                v = token_in_mention(ent1, t) || token_in_mention(ent2, t);
                break;
            case CondKind::Dist:
                v = dist[t] < 0 || dist[t] > c.dist_bound;
                break;
        }
        return c.negated ? !v : v;
    }

    bool matches(const ReductionRule& r, std::size_t t) const {
        for (const auto& c : r.conds)
            if (!holds(c, t)) return false;
        return true;
    }
};

// labels of the rule's edge conditions (union), empty = no edge condition
std::vector<std::string> edge_label_set(const ReductionRule& r) {
    std::vector<std::string> out;
    for (const auto& c : r.conds)
        if (c.kind == CondKind::EdgeAny || c.kind == CondKind::EdgeIn || c.kind == CondKind::EdgeOut)
            out.insert(out.end(), c.labels.begin(), c.labels.end());
    return out;
}

std::string graph_signature(const SentenceGraph& g) {
    std::string sig;
    for (char a : g.token_alive) sig += a ? '1' : '0';
    sig += '|';
    for (const auto& e : g.deps)
        sig += e.label + ":" + std::to_string(e.governor) + ">" + std::to_string(e.dependent) + ";";
    return sig;
}

bool dep_exists(const std::vector<DependencyEdge>& deps, const DependencyEdge& e) {
    for (const auto& d : deps)
        if (d.label == e.label && d.governor == e.governor && d.dependent == e.dependent) return true;
    return false;
}

void delete_token(SentenceGraph& g, std::size_t t) {
    g.token_alive[t] = 0;
    std::vector<DependencyEdge> kept;
    for (const auto& e : g.deps)
        if (e.governor != t && e.dependent != t) kept.push_back(e);
    g.deps = std::move(kept);
    for (std::size_t ci = 0; ci < g.chunk_alive.size(); ++ci)
        if (g.chunk_alive[ci] && g.sentence->chunks[ci].head_index == t) g.chunk_alive[ci] = 0;
}

}  // namespace

SentenceGraph reduce_graph(const SentenceGraph& g, const std::vector<ReductionRule>& rules,
                           const EntityMention& ent1, const EntityMention& ent2) {
    SentenceGraph cur = g;
    const std::size_t protect1 = ent1.head_index;
    const std::size_t protect2 = ent2.head_index;

    std::string sig = graph_signature(cur);
    for (;;) {
        for (const auto& rule : rules) {
            Matcher m{cur, ent1, ent2, {}};
            bool needs_dist = false;
            for (const auto& c : rule.conds)
                if (c.kind == CondKind::Dist) needs_dist = true;
            if (needs_dist) m.dist = pair_hop_distances(cur, ent1, ent2);

            std::vector<std::size_t> matched;
            for (std::size_t t = 0; t < cur.token_alive.size(); ++t)
                if (cur.token_alive[t] && m.matches(rule, t)) matched.push_back(t);

            const std::vector<std::string> labels = edge_label_set(rule);
            for (std::size_t t : matched) {
                switch (rule.action) {
                    case RuleAction::DeleteNode:
                        if (t == protect1 || t == protect2) break;  // entity heads survive
                        delete_token(cur, t);
                        break;
                    case RuleAction::DeleteEdge: {
                        std::vector<DependencyEdge> kept;
                        for (const auto& e : cur.deps) {
                            bool incident = e.governor == t || e.dependent == t;
                            bool labelled = std::find(labels.begin(), labels.end(), e.label) != labels.end();
                            if (!(incident && labelled)) kept.push_back(e);
                        }
                        cur.deps = std::move(kept);
                        break;
                    }
                    case RuleAction::RedirectToChunkHead: {
                        long ci = cur.chunk_of(t);
                        if (ci < 0 || !cur.chunk_alive[static_cast<std::size_t>(ci)]) break;
                        std::size_t head = cur.sentence->chunks[static_cast<std::size_t>(ci)].head_index;
                        if (head == t || !cur.token_alive[head]) break;
                        std::vector<DependencyEdge> next;
                        for (const auto& e : cur.deps) {
                            bool incident = e.governor == t || e.dependent == t;
                            bool labelled =
                                labels.empty() ||
                                std::find(labels.begin(), labels.end(), e.label) != labels.end();
                            if (!incident || !labelled) {
                                next.push_back(e);
                                continue;
                            }
                            DependencyEdge r = e;
                            if (r.governor == t) r.governor = head;
                            if (r.dependent == t) r.dependent = head;
                            // a self-loop would lose the edge: keep the original
                            next.push_back(r.governor == r.dependent ? e : r);
                        }
                        // duplicates merge, first occurrence wins
                        std::vector<DependencyEdge> deduped;
                        for (const auto& e : next)
                            if (!dep_exists(deduped, e)) deduped.push_back(e);
                        cur.deps = std::move(deduped);
                        break;
                    }
                }
            }
        }
        std::string next_sig = graph_signature(cur);
        if (next_sig == sig) break;
        sig = std::move(next_sig);
    }
    return cur;
}

namespace {

class RuleLineParser {
public:
    RuleLineParser(const std::string& line, std::size_t line_no) : s_(line), line_(line_no) {}

    ReductionRule parse() {
        ReductionRule r;
        r.name = ident();
        require(":");
        keyword("IF");
        r.conds.push_back(cond());
        while (try_keyword("AND")) r.conds.push_back(cond());
        keyword("THEN");
        std::string act = ident();
        if (act == "delete-node") r.action = RuleAction::DeleteNode;
        else if (act == "delete-edge") r.action = RuleAction::DeleteEdge;
        else if (act == "redirect-to-chunk-head") r.action = RuleAction::RedirectToChunkHead;
        else throw ParseError("unknown action '" + act + "'", line_);
        ws();
        if (pos_ != s_.size()) throw ParseError("trailing input in reduction rule", line_);
        if (r.action == RuleAction::DeleteEdge) {
            bool has_edge = false;
            for (const auto& c : r.conds)
                if (c.kind == CondKind::EdgeAny || c.kind == CondKind::EdgeIn || c.kind == CondKind::EdgeOut)
                    has_edge = true;
            if (!has_edge) throw ParseError("delete-edge requires an edge condition", line_);
        }
        return r;
    }

private:
    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    void require(const char* lit) {
        ws();
        std::size_t n = std::string(lit).size();
        if (s_.compare(pos_, n, lit) != 0) throw ParseError(std::string("expected '") + lit + "'", line_);
        pos_ += n;
    }

    bool try_keyword(const char* kw) {
        ws();
        std::size_t save = pos_;
        std::size_t n = std::string(kw).size();
        if (s_.compare(pos_, n, kw) == 0 &&
            (pos_ + n == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + n])))) {
            pos_ += n;
            return true;
        }
        pos_ = save;
        return false;
    }

    void keyword(const char* kw) {
        if (!try_keyword(kw)) throw ParseError(std::string("expected '") + kw + "'", line_);
    }

    std::string ident() {
        ws();
        std::size_t start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ++pos_;
            else break;
        }
        if (start == pos_) throw ParseError("expected identifier", line_);
        return s_.substr(start, pos_ - start);
    }

    std::string set_element() {
        ws();
        if (pos_ < s_.size() && s_[pos_] == '"') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && s_[pos_] != '"') ++pos_;
            if (pos_ >= s_.size()) throw ParseError("unterminated quoted tag", line_);
            std::string out = s_.substr(start, pos_ - start);
            ++pos_;
            return out;
        }
        // bare tags may contain punctuation chars up to , or }
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != '}' &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_) throw ParseError("expected tag", line_);
        return s_.substr(start, pos_ - start);
    }

    std::vector<std::string> tag_set() {
        require("{");
        std::vector<std::string> out{set_element()};
        ws();
        while (pos_ < s_.size() && s_[pos_] == ',') {
            ++pos_;
            out.push_back(set_element());
            ws();
        }
        require("}");
        return out;
    }

    RuleCond cond() {
        RuleCond c;
        if (try_keyword("not")) c.negated = true;
        ws();
        std::string head = ident();
        if (head == "pos") {
            c.kind = CondKind::Pos;
            keyword("in");
            c.labels = tag_set();
        } else if (head == "edge") {
            c.kind = CondKind::EdgeAny;
            keyword("in");
            c.labels = tag_set();
        } else if (head == "in-edge") {
            c.kind = CondKind::EdgeIn;
            keyword("in");
            c.labels = tag_set();
        } else if (head == "out-edge") {
            c.kind = CondKind::EdgeOut;
            keyword("in");
            c.labels = tag_set();
        } else if (head == "in-entity") {
            c.kind = CondKind::InEntity;
        } else if (head == "dist") {
            c.kind = CondKind::Dist;
            require(">");
            ws();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("expected distance bound", line_);
            c.dist_bound = std::stoi(s_.substr(start, pos_ - start));
        } else {
            throw ParseError("unknown condition '" + head + "'", line_);
        }
        return c;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

}  // namespace

std::vector<ReductionRule> parse_reduction_rules(const std::string& text) {
    std::vector<ReductionRule> out;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        auto cut = line.find('%');
        if (cut != std::string::npos) line = line.substr(0, cut);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        out.push_back(RuleLineParser(line, line_no).parse());
    }
    return out;
}

std::vector<ReductionRule> load_reduction_rules(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open reduction rules file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_reduction_rules(ss.str());
}

std::string default_reduction_rules_text() {
    return "drop_punct: IF pos in {\".\", \",\", \":\", \";\", \"!\", \"?\", \"``\", \"''\", "
           "\"-lrb-\", \"-rrb-\", sym, hyph, punct} THEN delete-node\n"
           "drop_det: IF in-edge in {det, predet} AND not in-entity THEN delete-node\n"
           "fold_nn: IF out-edge in {nn} THEN redirect-to-chunk-head\n"
           "prune_far: IF dist > 3 THEN delete-node\n";
}

std::vector<ReductionRule> default_reduction_rules() {
    return parse_reduction_rules(default_reduction_rules_text());
}

}  // namespace relex
