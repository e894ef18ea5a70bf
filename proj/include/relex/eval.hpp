// Fold planning, P/R/F1/AUC metrics and the two evaluation protocols:
// k-fold cross-validation (document-level splits) and cross-corpus.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relex/bk.hpp"
#include "relex/corpus.hpp"
#include "relex/graph.hpp"
#include "relex/induce.hpp"
#include "relex/taxonomy.hpp"

namespace relex {

struct FoldPlan {
    int k = 0;
    std::map<std::string, int> assignment;  // document id -> fold index
    std::uint64_t rng_seed = 0;
};

// Shuffles documents with the seeded RNG, deals them round-robin. Requires
// 2 <= k <= document count.
FoldPlan kfold(const Corpus& c, int k, std::uint64_t rng_seed);

struct ConfusionCounts {
    long tp = 0, fp = 0, fn = 0, tn = 0;
};

struct Metrics {
    double precision = 0, recall = 0, f1 = 0, auc = 0;
};

Metrics prf(const ConfusionCounts& cc);

// Mann-Whitney statistic: (concordant + 0.5 * tied) / (pos * neg) over all
// positive/negative score pairs. Throws DataError on single-class input.
double auc(const std::vector<std::pair<double, bool>>& scored);
// Exact numerator/denominator: (2*concordant + tied) / (2 * pos * neg).
void auc_exact(const std::vector<std::pair<double, bool>>& scored, std::int64_t& num,
               std::int64_t& den);

// Max Laplace confidence over the covering rules (training-frozen stats);
// 0.0 when no rule covers. Classification threshold: positive iff > 0.
double score_example(const Theory& t, const KnowledgeBase& kb, const Literal& e,
                     const SolveBounds& bounds);

// Batch scoring via per-rule coverage masks (parallel kernel inside).
std::vector<double> score_batch(const Theory& t, const KnowledgeBase& kb,
                                const std::vector<Literal>& examples, const SolveBounds& bounds);

// Everything the corpus -> KB pipeline needs besides the corpus itself.
struct PipelineConfig {
    std::string relation;
    Taxonomy taxonomy;
    std::vector<ReductionRule> reduction_rules;
    ModeSet modes;
    BkThresholds thresholds;
};

struct FoldReport {
    int fold = 0;
    ConfusionCounts counts;
    std::optional<std::pair<std::int64_t, std::int64_t>> auc_frac;  // absent: single-class fold
    std::size_t theory_rules = 0;
    double seconds = 0;  // wall clock; excluded from deterministic artifacts
};

struct Report {
    std::vector<FoldReport> folds;
    ConfusionCounts pooled;
    std::optional<std::pair<std::int64_t, std::int64_t>> pooled_auc_frac;
    std::size_t total_rules = 0;

    Metrics pooled_metrics() const;
    double pooled_auc() const;  // 0 when undefined

    // fold, tp, fp, fn, tn, precision, recall, f1, auc, rules rows per fold,
    // then pooled and macro rows. Deterministic.
    std::string tsv() const;
    // fold, seconds rows; not byte-stable across runs.
    std::string timing_tsv() const;
};

Report cross_validate(const Corpus& c, const PipelineConfig& pc, const LearnParams& params, int k,
                      std::uint64_t rng_seed);

Report cross_corpus(const Corpus& train, const Corpus& test, const PipelineConfig& pc,
                    const LearnParams& params);

// Builds the KB for a corpus slice: emit_bk text + intensional clauses.
KnowledgeBase build_kb(const Corpus& c, const PipelineConfig& pc);

// Learns a theory on a whole corpus (the `learn` subcommand, and the train
// half of cross_corpus).
Theory learn_on_corpus(const Corpus& c, const PipelineConfig& pc, const LearnParams& params);

}  // namespace relex
