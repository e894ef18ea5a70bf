// Background-knowledge generation: converts entity-pair-reduced sentence
// graphs into a ground fact base (one fact per line), and builds the
// intensional discretization clauses (token length classes, chunk distance
// to the root verb).

#pragma once

#include <string>
#include <vector>

#include "relex/corpus.hpp"
#include "relex/graph.hpp"
#include "relex/taxonomy.hpp"
#include "relex/term.hpp"

namespace relex {

struct BkThresholds {
    int len_short = 5;    // tok_length: short iff length =< len_short
    int len_medium = 15;  // medium iff in (len_short, len_medium], long above
    int dist_near = 3;    // ck_dist_root: near iff |pos| =< dist_near
    int dist_far = 8;     // far iff in (dist_near, dist_far], very_far above

    void validate() const;
};

// Fact-file text for the whole corpus: per sentence, the union of facts over
// all candidate-pair reduced graphs, ordered by (document, sentence,
// predicate group, id) and de-duplicated. Parseable by parse_fact_base.
std::string emit_bk(const Corpus& c, const Taxonomy& taxonomy,
                    const std::vector<ReductionRule>& rules, const std::string& relation);

// The discretization clause set with `;` compiled away, plus the three
// length_type class facts. Thresholds substituted from `t`.
std::vector<Clause> emit_intentional_bk(const BkThresholds& t);

// emit_bk plus the printed intensional clauses; what `bkgen` writes.
std::string emit_bk_program(const Corpus& c, const Taxonomy& taxonomy,
                            const std::vector<ReductionRule>& rules, const std::string& relation,
                            const BkThresholds& t);

// Orthography class of a surface form: upperInit, allCaps, allLower,
// mixedCaps, hasDigit or punct.
std::string orth_class(const std::string& surface);

// Morphological type: word, number or symbol.
std::string morph_type(const std::string& surface);

// Coarse POS tag: leading alphabetic prefix truncated to 2 chars; the tag
// itself when it has no alphabetic prefix.
std::string coarse_pos(const std::string& pos);

}  // namespace relex
