// Graph model of one sentence: token nodes carrying all annotations, with
// dependency edges, the nextToken chain, chunk membership and chunk
// succession. Entity-oriented reduction prunes the graph around a candidate
// mention pair with declarative rules.
//
// Reduction semantics:
//  - deleting a node removes its dependency edges and contracts the
//    nextToken and chunk-succession chains over the survivors;
//  - a chunk survives while its (original, rightmost) head token survives;
//  - the candidate pair's entity head tokens are never deleted;
//  - redirecting an edge re-points its endpoint at the matched node to that
//    node's chunk head; a redirect that would produce a self-loop keeps the
//    original edge, one that duplicates an existing edge merges into it.

#pragma once

#include <string>
#include <vector>

#include "relex/corpus.hpp"

namespace relex {

struct SentenceGraph {
    const Sentence* sentence = nullptr;        // source annotations (not owned)
    std::vector<char> token_alive;             // by token index
    std::vector<char> chunk_alive;             // by chunk index
    std::vector<DependencyEdge> deps;          // current dependency edges
    long root_index = -1;                      // original root token, -1 = none

    std::size_t alive_token_count() const;
    std::vector<std::size_t> alive_tokens() const;        // ascending
    std::vector<std::size_t> alive_chunks() const;        // ascending
    // contracted chains over survivors
    std::vector<std::pair<std::size_t, std::size_t>> next_edges() const;
    std::vector<std::pair<std::size_t, std::size_t>> next_head_edges() const;
    std::vector<std::pair<std::size_t, std::size_t>> chunk_succ_edges() const;  // chunk idx pairs
    // member -> chunk head, head itself excluded
    std::vector<std::pair<std::size_t, std::size_t>> membership_edges() const;
    std::size_t edge_count() const;  // deps + next + membership + succession

    // chunk index containing a token, -1 if none
    long chunk_of(std::size_t token_index) const;
};

// Full (unreduced) graph of a sentence. The root is the first token that
// governs at least one edge and depends on none; -1 when the sentence has no
// dependency edges or no such token.
SentenceGraph build_graph(const Sentence& s);

enum class CondKind { Pos, EdgeAny, EdgeIn, EdgeOut, InEntity, Dist };
enum class RuleAction { DeleteNode, DeleteEdge, RedirectToChunkHead };

struct RuleCond {
    CondKind kind = CondKind::Pos;
    bool negated = false;
    std::vector<std::string> labels;  // Pos / Edge* sets
    int dist_bound = 0;               // Dist: matches nodes with hop distance > bound
};

struct ReductionRule {
    std::string name;
    std::vector<RuleCond> conds;  // conjunction
    RuleAction action = RuleAction::DeleteNode;
};

// Rules file, one rule per line:
//   name: IF <cond> [AND <cond>]... THEN <action>
// conds:  pos in {nnp, "."} | edge in {...} | in-edge in {...} |
//         out-edge in {...} | in-entity | dist > N     (each may be
//         prefixed with `not`); actions: delete-node | delete-edge |
//         redirect-to-chunk-head. '%' starts a comment.
std::vector<ReductionRule> parse_reduction_rules(const std::string& text);
std::vector<ReductionRule> load_reduction_rules(const std::string& path);

// The shipped defaults: drop punctuation nodes, drop det/predet dependents
// outside the entity spans, fold nn edges onto chunk heads, prune nodes more
// than 3 dependency hops away from both entity heads.
std::vector<ReductionRule> default_reduction_rules();
std::string default_reduction_rules_text();

// Applies the rules in order until a fixpoint. `pair` are the candidate
// mentions; their head tokens always survive.
SentenceGraph reduce_graph(const SentenceGraph& g, const std::vector<ReductionRule>& rules,
                           const EntityMention& ent1, const EntityMention& ent2);

// Undirected hop distances over the graph's current dependency edges from
// the nearest of the two entity heads; -1 = unreachable.
std::vector<long> pair_hop_distances(const SentenceGraph& g, const EntityMention& ent1,
                                     const EntityMention& ent2);

}  // namespace relex
