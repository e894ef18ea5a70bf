// Pre-parsed corpus ingestion. The corpus file is UTF-8 JSON Lines, one
// record per line, in document order:
//
//   {"type":"doc","id":"d1"}
//   {"type":"sent","id":"s1","doc":"d1"}
//   {"type":"tok","id":"t1","sent":"s1","surface":"Myron","lemma":"myron",
//    "pos":"nnp","start":0,"end":5,"ner":"person"}
//   {"type":"chunk","id":"ck1","sent":"s1","ctype":"np","tokens":["t1","t2"]}
//   {"type":"dep","sent":"s1","label":"nn","gov":"t2","dep":"t1"}
//   {"type":"ent","id":"e1","sent":"s1","tokens":["t1","t2"],"etype":"person",
//    "subtype":"none","mtype":"name","ref":"e1"}
//   {"type":"rel","sent":"s1","rtype":"located","arg1":"e1","arg2":"e2"}
//
// Optional header record {"type":"deptags","tags":[...]} pins the dependency
// label inventory; without it any atom-shaped label is accepted. All ids are
// globally unique. See data/corpus-schema.md for the full contract.

#pragma once

#include <string>
#include <vector>

#include "relex/term.hpp"

namespace relex {

struct Token {
    std::string id;
    std::string surface;
    std::string lemma;
    std::string pos;
    long char_start = 0;
    long char_end = 0;
    std::string ner;  // empty = not annotated
};

struct Chunk {
    std::string id;
    std::string type;  // np | vp | pp
    std::vector<std::size_t> token_indexes;  // contiguous, ascending
    std::size_t head_index = 0;              // rightmost member
};

struct DependencyEdge {
    std::string label;
    std::size_t governor = 0;   // token index within the sentence
    std::size_t dependent = 0;
};

struct EntityMention {
    std::string id;
    std::vector<std::size_t> token_indexes;  // ascending, within one sentence
    std::size_t head_index = 0;              // rightmost member
    std::string type;
    std::string subtype;  // empty = none
    std::string mention_type = "name";
    std::string ref;      // entity identity; mentions sharing a ref are
                          // self-interaction partners and are never paired
};

struct RelationInstance {
    std::string relation;
    std::string arg1;  // entity id, canonical arg1 < arg2
    std::string arg2;
    std::string sentence_id;
    bool gold = true;
};

struct Sentence {
    std::string id;
    std::vector<Token> tokens;
    std::vector<Chunk> chunks;
    std::vector<DependencyEdge> deps;
    std::vector<EntityMention> entities;
    std::vector<RelationInstance> relations;

    const EntityMention* entity_by_id(const std::string& id) const;
};

struct Document {
    std::string id;
    std::vector<Sentence> sentences;
};

struct Corpus {
    std::vector<Document> documents;

    std::size_t sentence_count() const;
};

Corpus parse_corpus(const std::string& text);
Corpus load_corpus(const std::string& path);
std::string print_corpus(const Corpus& c);
void save_corpus(const Corpus& c, const std::string& path);

// One candidate pair of entity mentions (unordered, canonical by entity id).
struct Candidate {
    Literal lit;           // relation(head_token_1, head_token_2)
    std::string sentence_id;
    std::string entity1;   // entity1 < entity2 (mention ids)
    std::string entity2;
    bool gold = false;
    std::size_t sentence_ordinal = 0;  // corpus-order position of the sentence
};

// Every unordered pair of distinct entity mentions per sentence, in sentence
// order then (entity1, entity2) id order; pairs of mentions sharing a `ref`
// (self-interactions) are excluded. A pair is gold iff the sentence carries a
// gold RelationInstance of `relation` for it.
std::vector<Candidate> generate_candidates(const Corpus& c, const std::string& relation);

// Gold pairs -> pos, other co-occurring pairs -> neg.
void generate_examples(const Corpus& c, const std::string& relation, std::vector<Literal>& pos,
                       std::vector<Literal>& neg);

struct CorpusStats {
    std::size_t sentences = 0;
    std::size_t pos = 0;
    std::size_t neg = 0;
};

CorpusStats corpus_stats(const Corpus& c, const std::string& relation);

}  // namespace relex
