#include "relex/bk.hpp"

#include <array>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "relex/errors.hpp"

namespace relex {

void BkThresholds::validate() const {
    if (len_short > len_medium) throw ConfigError("length thresholds must satisfy short <= medium");
    if (!(0 < dist_near && dist_near < dist_far))
        throw ConfigError("distance thresholds must satisfy 0 < near < far");
}

std::string orth_class(const std::string& s) {
    bool any_alpha = false, any_digit = false, any_other = false;
    bool all_upper = true, all_lower = true;
    for (unsigned char c : s) {
        if (std::isalpha(c)) {
            any_alpha = true;
            if (!std::isupper(c)) all_upper = false;
            if (!std::islower(c)) all_lower = false;
        } else if (std::isdigit(c)) {
            any_digit = true;
        } else {
            any_other = true;
        }
    }
    if (!any_alpha && !any_digit) return "punct";
    if (any_digit) return "hasDigit";
    if (all_upper) return s.size() == 1 ? "upperInit" : "allCaps";
    if (all_lower && !any_other) return "allLower";
    if (std::isupper(static_cast<unsigned char>(s[0]))) {
        bool rest_lower = true;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (std::isupper(static_cast<unsigned char>(s[i]))) rest_lower = false;
        if (rest_lower) return "upperInit";
    }
    return "mixedCaps";
}

std::string morph_type(const std::string& s) {
    bool any_alpha = false, any_digit = false;
    for (unsigned char c : s) {
        if (std::isalpha(c)) any_alpha = true;
        else if (std::isdigit(c)) any_digit = true;
    }
    if (any_alpha) return "word";
    if (any_digit) return "number";
    return "symbol";
}

std::string coarse_pos(const std::string& pos) {
    std::string prefix;
    for (unsigned char c : pos) {
        if (!std::isalpha(c)) break;
        prefix += static_cast<char>(c);
        if (prefix.size() == 2) break;
    }
    return prefix.empty() ? pos : prefix;
}

namespace {

// predicate emission groups, in file order
enum Group : int {
    kEntities = 0,   // doc, sent, chunk, token
    kLexical,        // t_stem, t_length, t_orth, t_morph_type
    kSyntactic,      // t_pos, t_gpos, POS n-grams
    kChunking,       // ck_hasHead, ck_hasType, t_isHeadNP, t_ck_tag_type, ck_posRelPred
    kSemantic,       // t_ner
    kAnnotation,     // t_type, t_subtype, t_mtype
    kStructural,     // t_next, t_next_head, ck_hasToken, ck_hasSucc, t_hasDep, t_root
    kGroupCount
};

class SentenceFacts {
public:
    void add(Group g, const Literal& fact) {
        std::string key = print_literal(fact);
        if (!seen_.insert(std::move(key)).second) return;
        groups_[g].push_back(fact);
    }

    void write(std::ostream& os) const {
        for (const auto& group : groups_)
            for (const auto& f : group) os << print_literal(f) << ".\n";
    }

    bool empty() const {
        for (const auto& g : groups_)
            if (!g.empty()) return false;
        return true;
    }

private:
    std::array<std::vector<Literal>, kGroupCount> groups_;
    std::unordered_set<std::string> seen_;
};

std::string pos_ngram(const Sentence& s, long from, long count) {
    std::string out;
    for (long i = from; i < from + count; ++i) {
        if (!out.empty()) out += '-';
        if (i < 0) out += "bos";
        else if (i >= static_cast<long>(s.tokens.size())) out += "eos";
        else out += s.tokens[static_cast<std::size_t>(i)].pos;
    }
    return out;
}

Term tok(const Sentence& s, std::size_t i) { return Term::constant(s.tokens[i].id); }
Term chk(const Sentence& s, std::size_t i) { return Term::constant(s.chunks[i].id); }

void emit_typing_fact(SentenceFacts& out, const char* pred, const Term& t, const std::string& label,
                      const Taxonomy& tax) {
    if (tax.empty()) {
        out.add(kAnnotation, Literal{pred, {t, Term::atom_or_str(label)}});
        return;
    }
    const std::string cls = tax.resolve(label);  // throws on unknown class
    out.add(kAnnotation, Literal{pred, {t, Term::atom_or_str(cls)}});
    for (const auto& anc : tax.ancestors(cls))
        out.add(kAnnotation, Literal{pred, {t, Term::atom_or_str(anc)}});
}

void emit_graph_facts(const SentenceGraph& g, const Taxonomy& tax, SentenceFacts& out) {
    const Sentence& s = *g.sentence;
    const auto alive = g.alive_tokens();
    const auto chunks = g.alive_chunks();

    // corpus entities
    out.add(kEntities, Literal{"sent", {Term::constant(s.id)}});
    for (std::size_t ci : chunks) out.add(kEntities, Literal{"chunk", {chk(s, ci)}});
    for (std::size_t ti : alive) out.add(kEntities, Literal{"token", {tok(s, ti)}});

    // lexical
    for (std::size_t ti : alive) {
        const Token& t = s.tokens[ti];
        out.add(kLexical, Literal{"t_stem", {tok(s, ti), Term::str(t.lemma)}});
        out.add(kLexical,
                Literal{"t_length", {tok(s, ti), Term::integer(static_cast<std::int64_t>(t.surface.size()))}});
        out.add(kLexical, Literal{"t_orth", {tok(s, ti), Term::constant(orth_class(t.surface))}});
        out.add(kLexical, Literal{"t_morph_type", {tok(s, ti), Term::constant(morph_type(t.surface))}});
    }

    // syntactic
    for (std::size_t ti : alive) {
        const Token& t = s.tokens[ti];
        const long i = static_cast<long>(ti);
        out.add(kSyntactic, Literal{"t_pos", {tok(s, ti), Term::atom_or_str(t.pos)}});
        out.add(kSyntactic, Literal{"t_gpos", {tok(s, ti), Term::atom_or_str(coarse_pos(t.pos))}});
        out.add(kSyntactic, Literal{"t_bigPosBef", {tok(s, ti), Term::atom_or_str(pos_ngram(s, i - 2, 2))}});
        out.add(kSyntactic, Literal{"t_bigPosAft", {tok(s, ti), Term::atom_or_str(pos_ngram(s, i + 1, 2))}});
        out.add(kSyntactic, Literal{"t_trigPosBef", {tok(s, ti), Term::atom_or_str(pos_ngram(s, i - 3, 3))}});
        out.add(kSyntactic, Literal{"t_trigPosAft", {tok(s, ti), Term::atom_or_str(pos_ngram(s, i + 1, 3))}});
    }

    // chunking
    for (std::size_t ci : chunks) {
        const Chunk& ck = s.chunks[ci];
        out.add(kChunking, Literal{"ck_hasHead", {chk(s, ci), tok(s, ck.head_index)}});
        out.add(kChunking, Literal{"ck_hasType", {chk(s, ci), Term::constant(ck.type)}});
    }
    for (std::size_t ti : alive) {
        long ci = g.chunk_of(ti);
        if (ci < 0 || !g.chunk_alive[static_cast<std::size_t>(ci)]) continue;
        const Chunk& ck = s.chunks[static_cast<std::size_t>(ci)];
        if (ck.type == "np" && ck.head_index == ti)
            out.add(kChunking, Literal{"t_isHeadNP", {tok(s, ti)}});
        out.add(kChunking, Literal{"t_ck_tag_type", {tok(s, ti), Term::constant(ck.type)}});
    }
    if (g.root_index >= 0) {
        long root_chunk = g.chunk_of(static_cast<std::size_t>(g.root_index));
        if (root_chunk >= 0) {
            for (std::size_t ci : chunks)
                out.add(kChunking,
                        Literal{"ck_posRelPred",
                                {chk(s, ci), Term::integer(static_cast<long>(ci) - root_chunk)}});
        }
    }

    // semantic
    for (std::size_t ti : alive) {
        const Token& t = s.tokens[ti];
        if (!t.ner.empty()) out.add(kSemantic, Literal{"t_ner", {tok(s, ti), Term::atom_or_str(t.ner)}});
    }

    // annotation types from entity mentions, over surviving member tokens
    for (const auto& ent : s.entities) {
        for (std::size_t ti : ent.token_indexes) {
            if (!g.token_alive[ti]) continue;
            emit_typing_fact(out, "t_type", tok(s, ti), ent.type, tax);
            if (ent.subtype.empty()) {
                out.add(kAnnotation, Literal{"t_subtype", {tok(s, ti), Term::constant("none")}});
            } else {
                emit_typing_fact(out, "t_subtype", tok(s, ti), ent.subtype, tax);
            }
            out.add(kAnnotation, Literal{"t_mtype", {tok(s, ti), Term::atom_or_str(ent.mention_type)}});
        }
    }

    // structural
    for (const auto& [a, b] : g.next_edges())
        out.add(kStructural, Literal{"t_next", {tok(s, a), tok(s, b)}});
    for (const auto& [a, b] : g.next_head_edges())
        out.add(kStructural, Literal{"t_next_head", {tok(s, a), tok(s, b)}});
    for (std::size_t ci : chunks) {
        const Chunk& ck = s.chunks[ci];
        for (std::size_t ti : ck.token_indexes)
            if (g.token_alive[ti]) out.add(kStructural, Literal{"ck_hasToken", {chk(s, ci), tok(s, ti)}});
    }
    for (const auto& [a, b] : g.chunk_succ_edges())
        out.add(kStructural, Literal{"ck_hasSucc", {chk(s, a), chk(s, b)}});
    for (const auto& e : g.deps)
        out.add(kStructural, Literal{"t_hasDep",
                                     {Term::constant(e.label), tok(s, e.governor), tok(s, e.dependent)}});
    if (g.root_index >= 0 && g.token_alive[static_cast<std::size_t>(g.root_index)])
        out.add(kStructural, Literal{"t_root", {tok(s, static_cast<std::size_t>(g.root_index))}});
}

}  // namespace

std::string emit_bk(const Corpus& c, const Taxonomy& taxonomy,
                    const std::vector<ReductionRule>& rules, const std::string& relation) {
    std::ostringstream os;
    auto candidates = generate_candidates(c, relation);
    std::size_t cand_at = 0;
    std::size_t ordinal = 0;
    for (const auto& d : c.documents) {
        bool doc_written = false;
        for (const auto& s : d.sentences) {
            SentenceFacts facts;
            SentenceGraph full = build_graph(s);
            while (cand_at < candidates.size() && candidates[cand_at].sentence_ordinal == ordinal) {
                const Candidate& cand = candidates[cand_at++];
                const EntityMention* e1 = s.entity_by_id(cand.entity1);
                const EntityMention* e2 = s.entity_by_id(cand.entity2);
                SentenceGraph reduced = reduce_graph(full, rules, *e1, *e2);
                emit_graph_facts(reduced, taxonomy, facts);
            }
            if (!facts.empty()) {
                if (!doc_written) {
                    os << "doc(" << d.id << ").\n";
                    doc_written = true;
                }
                facts.write(os);
            }
            ++ordinal;
        }
    }
    return os.str();
}

std::vector<Clause> emit_intentional_bk(const BkThresholds& t) {
    t.validate();
    std::vector<Clause> out;
    const Term T = Term::var("T");
    const Term CK = Term::var("CK");
    const Term X = Term::var("X");
    auto cmp = [&](const char* op, std::int64_t v) { return Literal{op, {X, Term::integer(v)}}; };

    for (const char* lt : {"short", "medium", "long"})
        out.push_back(Clause{Literal{"length_type", {Term::constant(lt)}}, {}});

    const Literal tok_len{"t_length", {T, X}};
    const Literal tok_ty{"token", {T}};
    out.push_back(Clause{Literal{"tok_length", {T, Term::constant("short")}},
                         {tok_ty, tok_len, cmp("=<", t.len_short)}});
    out.push_back(Clause{Literal{"tok_length", {T, Term::constant("medium")}},
                         {tok_ty, tok_len, cmp(">", t.len_short), cmp("=<", t.len_medium)}});
    out.push_back(Clause{Literal{"tok_length", {T, Term::constant("long")}},
                         {tok_ty, tok_len, cmp(">", t.len_medium)}});

    const Literal pos_rel{"ck_posRelPred", {CK, X}};
    out.push_back(Clause{Literal{"ck_dist_root", {CK, Term::constant("near")}},
                         {pos_rel, cmp(">=", -t.dist_near), cmp("=<", t.dist_near)}});
    out.push_back(Clause{Literal{"ck_dist_root", {CK, Term::constant("far")}},
                         {pos_rel, cmp(">=", -t.dist_far), cmp("<", -t.dist_near)}});
    out.push_back(Clause{Literal{"ck_dist_root", {CK, Term::constant("far")}},
                         {pos_rel, cmp(">", t.dist_near), cmp("=<", t.dist_far)}});
    out.push_back(Clause{Literal{"ck_dist_root", {CK, Term::constant("very_far")}},
                         {pos_rel, cmp("<", -t.dist_far)}});
    out.push_back(Clause{Literal{"ck_dist_root", {CK, Term::constant("very_far")}},
                         {pos_rel, cmp(">", t.dist_far)}});
    return out;
}

std::string emit_bk_program(const Corpus& c, const Taxonomy& taxonomy,
                            const std::vector<ReductionRule>& rules, const std::string& relation,
                            const BkThresholds& t) {
    std::string out = emit_bk(c, taxonomy, rules, relation);
    out += "% intensional\n";
    for (const auto& cl : emit_intentional_bk(t)) out += print_clause(cl) + "\n";
    return out;
}

}  // namespace relex
