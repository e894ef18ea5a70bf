#include "relex/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "relex/errors.hpp"

namespace relex {

using nlohmann::json;

const EntityMention* Sentence::entity_by_id(const std::string& eid) const {
    for (const auto& e : entities)
        if (e.id == eid) return &e;
    return nullptr;
}

std::size_t Corpus::sentence_count() const {
    std::size_t n = 0;
    for (const auto& d : documents) n += d.sentences.size();
    return n;
}

namespace {

class CorpusReader {
public:
    Corpus read(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            ++line_;
            if (line.empty()) continue;
            json rec;
            try {
                rec = json::parse(line);
            } catch (const json::exception& e) {
                throw ParseError(std::string("bad corpus record: ") + e.what(), line_);
            }
            dispatch(rec);
        }
        finish_sentence();
        return std::move(corpus_);
    }

private:
    std::string str_field(const json& rec, const char* key, bool required = true,
                          const std::string& fallback = {}) {
        if (!rec.contains(key)) {
            if (required) throw ParseError(std::string("missing field '") + key + "'", line_);
            return fallback;
        }
        if (!rec[key].is_string()) throw ParseError(std::string("field '") + key + "' must be a string", line_);
        return rec[key].get<std::string>();
    }

    long int_field(const json& rec, const char* key) {
        if (!rec.contains(key) || !rec[key].is_number_integer())
            throw ParseError(std::string("field '") + key + "' must be an integer", line_);
        return rec[key].get<long>();
    }

    void dispatch(const json& rec) {
        const std::string type = str_field(rec, "type");
        if (type == "deptags") {
            if (!rec.contains("tags") || !rec["tags"].is_array())
                throw ParseError("deptags record needs a 'tags' array", line_);
            for (const auto& t : rec["tags"]) dep_inventory_.insert(t.get<std::string>());
            has_inventory_ = true;
        } else if (type == "doc") {
            on_doc(rec);
        } else if (type == "sent") {
            on_sent(rec);
        } else if (type == "tok") {
            on_tok(rec);
        } else if (type == "chunk") {
            on_chunk(rec);
        } else if (type == "dep") {
            on_dep(rec);
        } else if (type == "ent") {
            on_ent(rec);
        } else if (type == "rel") {
            on_rel(rec);
        } else {
            throw ParseError("unknown record type '" + type + "'", line_);
        }
    }

    void unique_id(const char* kind, const std::string& id) {
        // ids become Prolog constants, so they must be atom-shaped
        if (!is_atom_shaped(id))
            throw ParseError(std::string(kind) + " id '" + id +
                                 "' is not a lowercase atom ([a-z][a-z0-9_-]*)",
                             line_);
        if (!ids_.insert(std::string(kind) + "\x1f" + id).second)
            throw ParseError(std::string("duplicate ") + kind + " id '" + id + "'", line_);
    }

    void on_doc(const json& rec) {
        finish_sentence();
        Document d;
        d.id = str_field(rec, "id");
        unique_id("doc", d.id);
        corpus_.documents.push_back(std::move(d));
    }

    void on_sent(const json& rec) {
        finish_sentence();
        if (corpus_.documents.empty()) throw ParseError("sentence before any document", line_);
        const std::string doc = str_field(rec, "doc");
        if (doc != corpus_.documents.back().id)
            throw ParseError("sentence doc '" + doc + "' is not the current document '" +
                                 corpus_.documents.back().id + "'",
                             line_);
        cur_ = Sentence{};
        cur_.id = str_field(rec, "id");
        unique_id("sent", cur_.id);
        in_sentence_ = true;
    }

    void require_sentence(const json& rec) {
        if (!in_sentence_) throw ParseError("record outside any sentence", line_);
        const std::string sid = str_field(rec, "sent");
        if (sid != cur_.id)
            throw ParseError("record sentence '" + sid + "' is not the current sentence '" + cur_.id + "'",
                             line_);
    }

    void on_tok(const json& rec) {
        require_sentence(rec);
        Token t;
        t.id = str_field(rec, "id");
        unique_id("tok", t.id);
        t.surface = str_field(rec, "surface");
        t.lemma = str_field(rec, "lemma", false, t.surface);
        t.pos = str_field(rec, "pos");
        t.char_start = int_field(rec, "start");
        t.char_end = int_field(rec, "end");
        t.ner = str_field(rec, "ner", false);
        if (t.char_end <= t.char_start)
            throw ParseError("token '" + t.id + "' has empty or inverted offsets", line_);
        if (!cur_.tokens.empty() && t.char_start < cur_.tokens.back().char_end)
            throw ParseError("token '" + t.id + "' overlaps the previous token", line_);
        token_index_[t.id] = cur_.tokens.size();
        cur_.tokens.push_back(std::move(t));
    }

    std::size_t token_ref(const std::string& id) {
        auto it = token_index_.find(id);
        if (it == token_index_.end())
            throw ParseError("reference to token '" + id + "' outside the current sentence", line_);
        return it->second;
    }

    std::vector<std::size_t> token_span(const json& rec) {
        if (!rec.contains("tokens") || !rec["tokens"].is_array() || rec["tokens"].empty())
            throw ParseError("missing or empty 'tokens' array", line_);
        std::vector<std::size_t> out;
        for (const auto& t : rec["tokens"]) out.push_back(token_ref(t.get<std::string>()));
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i] <= out[i - 1]) throw ParseError("token span must be ascending", line_);
        return out;
    }

    void on_chunk(const json& rec) {
        require_sentence(rec);
        Chunk c;
        c.id = str_field(rec, "id");
        unique_id("chunk", c.id);
        c.type = str_field(rec, "ctype");
        if (c.type != "np" && c.type != "vp" && c.type != "pp")
            throw ParseError("chunk type must be np|vp|pp, got '" + c.type + "'", line_);
        c.token_indexes = token_span(rec);
        for (std::size_t i = 1; i < c.token_indexes.size(); ++i)
            if (c.token_indexes[i] != c.token_indexes[i - 1] + 1)
                throw ParseError("chunk '" + c.id + "' tokens are not contiguous", line_);
        for (std::size_t idx : c.token_indexes)
            if (!chunked_tokens_.insert(idx).second)
                throw ParseError("chunk '" + c.id + "' overlaps another chunk", line_);
        c.head_index = c.token_indexes.back();
        cur_.chunks.push_back(std::move(c));
    }

    void on_dep(const json& rec) {
        require_sentence(rec);
        DependencyEdge e;
        e.label = str_field(rec, "label");
        if (has_inventory_ && !dep_inventory_.count(e.label))
            throw ParseError("dependency label '" + e.label + "' is not in the declared inventory",
                             line_);
        if (!is_atom_shaped(e.label))
            throw ParseError("dependency label '" + e.label + "' is not atom-shaped", line_);
        e.governor = token_ref(str_field(rec, "gov"));
        e.dependent = token_ref(str_field(rec, "dep"));
        if (e.governor == e.dependent)
            throw ParseError("dependency governor equals dependent", line_);
        cur_.deps.push_back(std::move(e));
    }

    void on_ent(const json& rec) {
        require_sentence(rec);
        EntityMention e;
        e.id = str_field(rec, "id");
        unique_id("ent", e.id);
        e.token_indexes = token_span(rec);
        e.head_index = e.token_indexes.back();
        e.type = str_field(rec, "etype");
        e.subtype = str_field(rec, "subtype", false);
        if (e.subtype == "none") e.subtype.clear();
        e.mention_type = str_field(rec, "mtype", false, "name");
        e.ref = str_field(rec, "ref", false, e.id);
        cur_.entities.push_back(std::move(e));
    }

    void on_rel(const json& rec) {
        require_sentence(rec);
        RelationInstance r;
        r.relation = str_field(rec, "rtype");
        r.arg1 = str_field(rec, "arg1");
        r.arg2 = str_field(rec, "arg2");
        r.sentence_id = cur_.id;
        if (r.arg1 == r.arg2) throw ParseError("relation arguments must differ", line_);
        if (r.arg2 < r.arg1) std::swap(r.arg1, r.arg2);  // canonical order
        pending_rel_lines_.push_back(line_);
        cur_.relations.push_back(std::move(r));
    }

    void finish_sentence() {
        if (!in_sentence_) return;
        // relations must reference entities of their own sentence
        for (std::size_t i = 0; i < cur_.relations.size(); ++i) {
            const auto& r = cur_.relations[i];
            if (!cur_.entity_by_id(r.arg1) || !cur_.entity_by_id(r.arg2))
                throw ParseError("relation references unknown entity '" +
                                     (cur_.entity_by_id(r.arg1) ? r.arg2 : r.arg1) + "'",
                                 pending_rel_lines_[i]);
        }
        corpus_.documents.back().sentences.push_back(std::move(cur_));
        cur_ = Sentence{};
        token_index_.clear();
        chunked_tokens_.clear();
        pending_rel_lines_.clear();
        in_sentence_ = false;
    }

    Corpus corpus_;
    Sentence cur_;
    bool in_sentence_ = false;
    std::size_t line_ = 0;
    std::unordered_map<std::string, std::size_t> token_index_;
    std::unordered_set<std::size_t> chunked_tokens_;
    std::unordered_set<std::string> ids_;
    std::unordered_set<std::string> dep_inventory_;
    bool has_inventory_ = false;
    std::vector<std::size_t> pending_rel_lines_;
};

}  // namespace

Corpus parse_corpus(const std::string& text) { return CorpusReader().read(text); }

Corpus load_corpus(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open corpus file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_corpus(ss.str());
}

std::string print_corpus(const Corpus& c) {
    std::ostringstream os;
    for (const auto& d : c.documents) {
        os << json{{"type", "doc"}, {"id", d.id}}.dump() << "\n";
        for (const auto& s : d.sentences) {
            os << json{{"type", "sent"}, {"id", s.id}, {"doc", d.id}}.dump() << "\n";
            for (const auto& t : s.tokens) {
                json rec{{"type", "tok"},   {"id", t.id},          {"sent", s.id},
                         {"surface", t.surface}, {"lemma", t.lemma}, {"pos", t.pos},
                         {"start", t.char_start}, {"end", t.char_end}};
                if (!t.ner.empty()) rec["ner"] = t.ner;
                os << rec.dump() << "\n";
            }
            for (const auto& ck : s.chunks) {
                json toks = json::array();
                for (std::size_t i : ck.token_indexes) toks.push_back(s.tokens[i].id);
                os << json{{"type", "chunk"}, {"id", ck.id}, {"sent", s.id}, {"ctype", ck.type}, {"tokens", toks}}
                          .dump()
                   << "\n";
            }
            for (const auto& e : s.deps) {
                os << json{{"type", "dep"},
                           {"sent", s.id},
                           {"label", e.label},
                           {"gov", s.tokens[e.governor].id},
                           {"dep", s.tokens[e.dependent].id}}
                          .dump()
                   << "\n";
            }
            for (const auto& e : s.entities) {
                json toks = json::array();
                for (std::size_t i : e.token_indexes) toks.push_back(s.tokens[i].id);
                json rec{{"type", "ent"}, {"id", e.id}, {"sent", s.id}, {"tokens", toks}, {"etype", e.type}};
                rec["subtype"] = e.subtype.empty() ? "none" : e.subtype;
                rec["mtype"] = e.mention_type;
                if (e.ref != e.id) rec["ref"] = e.ref;
                os << rec.dump() << "\n";
            }
            for (const auto& r : s.relations) {
                os << json{{"type", "rel"}, {"sent", s.id}, {"rtype", r.relation}, {"arg1", r.arg1}, {"arg2", r.arg2}}
                          .dump()
                   << "\n";
            }
        }
    }
    return os.str();
}

void save_corpus(const Corpus& c, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write corpus file: " + path);
    f << print_corpus(c);
}

std::vector<Candidate> generate_candidates(const Corpus& c, const std::string& relation) {
    std::vector<Candidate> out;
    std::size_t ordinal = 0;
    for (const auto& d : c.documents) {
        for (const auto& s : d.sentences) {
            std::vector<const EntityMention*> ents;
            for (const auto& e : s.entities) ents.push_back(&e);
            std::sort(ents.begin(), ents.end(),
                      [](const EntityMention* a, const EntityMention* b) { return a->id < b->id; });
            for (std::size_t i = 0; i < ents.size(); ++i) {
                for (std::size_t j = i + 1; j < ents.size(); ++j) {
                    if (ents[i]->ref == ents[j]->ref) continue;  // self-interaction
                    Candidate cand;
                    cand.sentence_id = s.id;
                    cand.entity1 = ents[i]->id;
                    cand.entity2 = ents[j]->id;
                    cand.sentence_ordinal = ordinal;
                    cand.lit.predicate = relation;
                    cand.lit.args.push_back(Term::constant(s.tokens[ents[i]->head_index].id));
                    cand.lit.args.push_back(Term::constant(s.tokens[ents[j]->head_index].id));
                    for (const auto& r : s.relations) {
                        if (r.relation == relation && r.arg1 == cand.entity1 && r.arg2 == cand.entity2) {
                            cand.gold = true;
                            break;
                        }
                    }
                    out.push_back(std::move(cand));
                }
            }
            ++ordinal;
        }
    }
    return out;
}

void generate_examples(const Corpus& c, const std::string& relation, std::vector<Literal>& pos,
                       std::vector<Literal>& neg) {
    pos.clear();
    neg.clear();
    for (const auto& cand : generate_candidates(c, relation))
        (cand.gold ? pos : neg).push_back(cand.lit);
}

CorpusStats corpus_stats(const Corpus& c, const std::string& relation) {
    std::vector<Literal> pos, neg;
    generate_examples(c, relation, pos, neg);
    return CorpusStats{c.sentence_count(), pos.size(), neg.size()};
}

}  // namespace relex
