// Bottom-up rule induction: asymmetric relative minimal generalization
// (ARMG), beam-searched generalization of a seed's bottom clause,
// negative-based reduction, and the covering loop that assembles a Theory.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relex/kb.hpp"
#include "relex/modes.hpp"
#include "relex/rng.hpp"
#include "relex/solve.hpp"
#include "relex/term.hpp"

namespace relex {

enum class EvalFn { Coverage, Precision, Laplace };
enum class TheoryConstruction { Incremental, Global };

EvalFn parse_evalfn(const std::string& s);
const char* evalfn_name(EvalFn f);
TheoryConstruction parse_theory_construction(const std::string& s);
const char* theory_construction_name(TheoryConstruction t);

struct LearnParams {
    int depth_i = 3;
    int recall_cap = 100;
    int beam_width = 5;
    int sample_size = 10;
    EvalFn evalfn = EvalFn::Coverage;
    int minpos = 3;
    double minprec = 0.5;
    double noise = 0.3;                  // max fraction of covered examples that may be negative
    std::optional<int> noise_count;      // absolute-count override for `noise`
    TheoryConstruction theory_construction = TheoryConstruction::Global;
    std::uint64_t rng_seed = 1;
    SolveBounds bounds;

    void validate() const;
};

struct ScoredClause {
    Clause clause;
    int pos_cov = 0;
    int neg_cov = 0;
    double score = 0.0;
};

struct TheoryRule {
    ScoredClause scored;
    std::string seed_id;  // printed seed example
};

struct Theory {
    std::vector<TheoryRule> rules;
    LearnParams params_used;

    std::size_t size() const { return rules.size(); }
};

double eval_score(EvalFn f, int pos_cov, int neg_cov);
double laplace_confidence(int pos_cov, int neg_cov);

ScoredClause clause_score(const Clause& c, const std::vector<Literal>& pos,
                          const std::vector<Literal>& neg, const KnowledgeBase& kb, EvalFn evalfn,
                          const SolveBounds& bounds);

bool is_acceptable(const ScoredClause& sc, const LearnParams& p);

// Generalizes `c` just enough to cover `e`: repeatedly deletes the first
// blocking body literal (the earliest prefix with no solution extending the
// head unification) plus any later literals whose input variables are no
// longer supplied. The result body is a subset of the input body.
Clause armg(const Clause& c, const Literal& e, const KnowledgeBase& kb, const SolveBounds& bounds);

// Beam search over iterated ARMGs of the seed's bottom clause.
ScoredClause best_armg(const Literal& seed, const std::vector<Literal>& pos,
                       const std::vector<Literal>& neg, const KnowledgeBase& kb,
                       const ModeSet& modes, const LearnParams& p, SplitMix64& rng);

// Deletes body literals whose removal keeps negative coverage unchanged
// (positive coverage cannot decrease under deletion). Backward passes until
// a full pass commits nothing; the result is 1-minimal.
Clause negative_based_reduction(const Clause& c, const std::vector<Literal>& pos,
                                const std::vector<Literal>& neg, const KnowledgeBase& kb,
                                const ModeSet& modes, const SolveBounds& bounds);

// Covering loop (incremental) or candidate-per-seed + greedy set cover
// (global), per LearnParams::theory_construction.
Theory learn(const std::vector<Literal>& pos, const std::vector<Literal>& neg,
             const KnowledgeBase& kb, const ModeSet& modes, const LearnParams& p);

// Theory file: rules in clause text format, each followed by
//   % pos=<n> neg=<m> score=<s> seed=<id>
std::string print_theory(const Theory& t);
Theory parse_theory(const std::string& text);

}  // namespace relex
