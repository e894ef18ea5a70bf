#include "relex/eval.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "relex/errors.hpp"
#include "relex/fmt.hpp"
#include "relex/rng.hpp"
#include "relex/solve.hpp"

namespace relex {

FoldPlan kfold(const Corpus& c, int k, std::uint64_t rng_seed) {
    const std::size_t n = c.documents.size();
    if (k < 2) throw ConfigError("k must be >= 2");
    if (static_cast<std::size_t>(k) > n)
        throw ConfigError("k = " + std::to_string(k) + " exceeds document count " + std::to_string(n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(rng_seed);
    shuffle(order, rng);
    FoldPlan plan;
    plan.k = k;
    plan.rng_seed = rng_seed;
    for (std::size_t j = 0; j < n; ++j)
        plan.assignment[c.documents[order[j]].id] = static_cast<int>(j % static_cast<std::size_t>(k));
    return plan;
}

Metrics prf(const ConfusionCounts& cc) {
    Metrics m;
    m.precision = cc.tp + cc.fp > 0 ? static_cast<double>(cc.tp) / (cc.tp + cc.fp) : 0.0;
    m.recall = cc.tp + cc.fn > 0 ? static_cast<double>(cc.tp) / (cc.tp + cc.fn) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

void auc_exact(const std::vector<std::pair<double, bool>>& scored, std::int64_t& num,
               std::int64_t& den) {
    std::int64_t pos = 0, neg = 0;
    for (const auto& [score, gold] : scored) (gold ? pos : neg) += 1;
    if (pos == 0 || neg == 0) throw DataError("auc needs at least one positive and one negative");
    std::int64_t twice_conc_plus_ties = 0;
    for (const auto& [ps, pg] : scored) {
        if (!pg) continue;
        for (const auto& [ns, ng] : scored) {
            if (ng) continue;
            if (ps > ns) twice_conc_plus_ties += 2;
            else if (ps == ns) twice_conc_plus_ties += 1;
        }
    }
    num = twice_conc_plus_ties;
    den = 2 * pos * neg;
}

double auc(const std::vector<std::pair<double, bool>>& scored) {
    std::int64_t num = 0, den = 1;
    auc_exact(scored, num, den);
    return static_cast<double>(num) / static_cast<double>(den);
}

double score_example(const Theory& t, const KnowledgeBase& kb, const Literal& e,
                     const SolveBounds& bounds) {
    double best = 0.0;
    for (const auto& r : t.rules) {
        if (r.scored.clause.head.predicate != e.predicate ||
            r.scored.clause.head.args.size() != e.args.size())
            continue;
        if (!covers(r.scored.clause, e, kb, bounds)) continue;
        best = std::max(best, laplace_confidence(r.scored.pos_cov, r.scored.neg_cov));
    }
    return best;
}

std::vector<double> score_batch(const Theory& t, const KnowledgeBase& kb,
                                const std::vector<Literal>& examples, const SolveBounds& bounds) {
    std::vector<double> out(examples.size(), 0.0);
    for (const auto& r : t.rules) {
        const double conf = laplace_confidence(r.scored.pos_cov, r.scored.neg_cov);
        std::vector<std::uint8_t> mask = covered_mask(r.scored.clause, examples, kb, bounds);
        for (std::size_t i = 0; i < examples.size(); ++i)
            if (mask[i] && conf > out[i]) out[i] = conf;
    }
    return out;
}

KnowledgeBase build_kb(const Corpus& c, const PipelineConfig& pc) {
    std::string text = emit_bk(c, pc.taxonomy, pc.reduction_rules, pc.relation);
    KnowledgeBase kb = parse_kb_program(text);
    for (const auto& cl : emit_intentional_bk(pc.thresholds)) kb.add_clause(cl);
    kb.seal();
    return kb;
}

Theory learn_on_corpus(const Corpus& c, const PipelineConfig& pc, const LearnParams& params) {
    KnowledgeBase kb = build_kb(c, pc);
    std::vector<Literal> pos, neg;
    generate_examples(c, pc.relation, pos, neg);
    return learn(pos, neg, kb, pc.modes, params);
}

namespace {

struct EvalOutcome {
    ConfusionCounts counts;
    std::vector<std::pair<double, bool>> scored;
};

EvalOutcome evaluate_on(const Theory& theory, const Corpus& test, const PipelineConfig& pc,
                        const SolveBounds& bounds) {
    EvalOutcome out;
    KnowledgeBase kb = build_kb(test, pc);
    auto candidates = generate_candidates(test, pc.relation);
    std::vector<Literal> lits;
    lits.reserve(candidates.size());
    for (const auto& cand : candidates) lits.push_back(cand.lit);
    std::vector<double> scores = score_batch(theory, kb, lits, bounds);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const bool predicted = scores[i] > 0.0;
        const bool gold = candidates[i].gold;
        if (predicted && gold) ++out.counts.tp;
        else if (predicted && !gold) ++out.counts.fp;
        else if (!predicted && gold) ++out.counts.fn;
        else ++out.counts.tn;
        out.scored.emplace_back(scores[i], gold);
    }
    return out;
}

Corpus select_documents(const Corpus& c, const FoldPlan& plan, int fold, bool in_fold) {
    Corpus out;
    for (const auto& d : c.documents) {
        const bool is_in = plan.assignment.at(d.id) == fold;
        if (is_in == in_fold) out.documents.push_back(d);
    }
    return out;
}

std::optional<std::pair<std::int64_t, std::int64_t>> try_auc(
    const std::vector<std::pair<double, bool>>& scored) {
    bool any_pos = false, any_neg = false;
    for (const auto& [s, g] : scored) (g ? any_pos : any_neg) = true;
    if (!any_pos || !any_neg) return std::nullopt;
    std::int64_t num = 0, den = 1;
    auc_exact(scored, num, den);
    return std::make_pair(num, den);
}

}  // namespace

Metrics Report::pooled_metrics() const {
    Metrics m = prf(pooled);
    m.auc = pooled_auc();
    return m;
}

double Report::pooled_auc() const {
    if (!pooled_auc_frac) return 0.0;
    return static_cast<double>(pooled_auc_frac->first) / static_cast<double>(pooled_auc_frac->second);
}

std::string Report::tsv() const {
    std::ostringstream os;
    os << "fold\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\tauc\trules\n";
    auto row = [&os](const std::string& name, const ConfusionCounts& cc,
                     const std::optional<std::pair<std::int64_t, std::int64_t>>& auc_frac,
                     const std::string& rules) {
        os << name << "\t" << cc.tp << "\t" << cc.fp << "\t" << cc.fn << "\t" << cc.tn << "\t"
           << format_frac4(cc.tp, std::max<std::int64_t>(cc.tp + cc.fp, 1)) << "\t"
           << format_frac4(cc.tp, std::max<std::int64_t>(cc.tp + cc.fn, 1)) << "\t"
           << format_frac4(2 * cc.tp, std::max<std::int64_t>(2 * cc.tp + cc.fp + cc.fn, 1)) << "\t";
        if (auc_frac) os << format_frac4(auc_frac->first, auc_frac->second);
        else os << "-";
        os << "\t" << rules << "\n";
    };
    for (const auto& f : folds)
        row(std::to_string(f.fold), f.counts, f.auc_frac, std::to_string(f.theory_rules));
    row("pooled", pooled, pooled_auc_frac, std::to_string(total_rules));
    // macro row: mean of per-fold metrics (AUC over folds where defined)
    if (!folds.empty()) {
        double sp = 0, sr = 0, sf = 0, sa = 0;
        int auc_folds = 0;
        for (const auto& f : folds) {
            Metrics m = prf(f.counts);
            sp += m.precision;
            sr += m.recall;
            sf += m.f1;
            if (f.auc_frac) {
                sa += static_cast<double>(f.auc_frac->first) / static_cast<double>(f.auc_frac->second);
                ++auc_folds;
            }
        }
        const double n = static_cast<double>(folds.size());
        os << "macro\t-\t-\t-\t-\t" << fmt4(sp / n) << "\t" << fmt4(sr / n) << "\t" << fmt4(sf / n)
           << "\t" << (auc_folds ? fmt4(sa / auc_folds) : "-") << "\t-\n";
    }
    return os.str();
}

std::string Report::timing_tsv() const {
    std::ostringstream os;
    os << "fold\tseconds\n";
    for (const auto& f : folds) os << f.fold << "\t" << fmt4(f.seconds) << "\n";
    return os.str();
}

Report cross_validate(const Corpus& c, const PipelineConfig& pc, const LearnParams& params, int k,
                      std::uint64_t rng_seed) {
    FoldPlan plan = kfold(c, k, rng_seed);
    Report report;
    std::vector<std::pair<double, bool>> pooled_scores;
    for (int fold = 0; fold < k; ++fold) {
        const auto t0 = std::chrono::steady_clock::now();
        Corpus train = select_documents(c, plan, fold, false);
        Corpus test = select_documents(c, plan, fold, true);

        LearnParams fold_params = params;
        fold_params.rng_seed = params.rng_seed + static_cast<std::uint64_t>(fold);
        Theory theory = learn_on_corpus(train, pc, fold_params);

        EvalOutcome outcome = evaluate_on(theory, test, pc, params.bounds);
        FoldReport fr;
        fr.fold = fold;
        fr.counts = outcome.counts;
        fr.auc_frac = try_auc(outcome.scored);
        fr.theory_rules = theory.rules.size();
        fr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.folds.push_back(fr);

        report.pooled.tp += outcome.counts.tp;
        report.pooled.fp += outcome.counts.fp;
        report.pooled.fn += outcome.counts.fn;
        report.pooled.tn += outcome.counts.tn;
        report.total_rules += theory.rules.size();
        pooled_scores.insert(pooled_scores.end(), outcome.scored.begin(), outcome.scored.end());
    }
    report.pooled_auc_frac = try_auc(pooled_scores);
    return report;
}

Report cross_corpus(const Corpus& train, const Corpus& test, const PipelineConfig& pc,
                    const LearnParams& params) {
    const auto t0 = std::chrono::steady_clock::now();
    Theory theory = learn_on_corpus(train, pc, params);
    EvalOutcome outcome = evaluate_on(theory, test, pc, params.bounds);
    Report report;
    FoldReport fr;
    fr.fold = 0;
    fr.counts = outcome.counts;
    fr.auc_frac = try_auc(outcome.scored);
    fr.theory_rules = theory.rules.size();
    fr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.folds.push_back(fr);
    report.pooled = outcome.counts;
    report.pooled_auc_frac = fr.auc_frac;
    report.total_rules = theory.rules.size();
    return report;
}

}  // namespace relex
