#include "relex/induce.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "relex/errors.hpp"
#include "relex/fmt.hpp"
#include "relex/parse.hpp"

namespace relex {

EvalFn parse_evalfn(const std::string& s) {
    if (s == "coverage") return EvalFn::Coverage;
    if (s == "precision") return EvalFn::Precision;
    if (s == "laplace") return EvalFn::Laplace;
    throw ConfigError("unknown evalfn '" + s + "' (expected coverage|precision|laplace)");
}

const char* evalfn_name(EvalFn f) {
    switch (f) {
        case EvalFn::Coverage:
            return "coverage";
        case EvalFn::Precision:
            return "precision";
        default:
            return "laplace";
    }
}

TheoryConstruction parse_theory_construction(const std::string& s) {
    if (s == "incremental") return TheoryConstruction::Incremental;
    if (s == "global") return TheoryConstruction::Global;
    throw ConfigError("unknown theory_construction '" + s + "' (expected incremental|global)");
}

const char* theory_construction_name(TheoryConstruction t) {
    return t == TheoryConstruction::Incremental ? "incremental" : "global";
}

void LearnParams::validate() const {
    if (beam_width < 1) throw ConfigError("beam_width must be >= 1");
    if (sample_size < 1) throw ConfigError("sample_size must be >= 1");
    if (minpos < 1) throw ConfigError("minpos must be >= 1");
    if (minprec < 0.0 || minprec > 1.0) throw ConfigError("minprec must be in [0,1]");
    if (noise < 0.0 || noise > 1.0) throw ConfigError("noise must be in [0,1]");
    if (noise_count && *noise_count < 0) throw ConfigError("noise_count must be >= 0");
    if (depth_i < 1) throw ConfigError("depth_i must be >= 1");
    if (recall_cap < 1) throw ConfigError("recall_cap must be >= 1");
    bounds.validate();
}

double laplace_confidence(int pos_cov, int neg_cov) {
    return static_cast<double>(pos_cov + 1) / static_cast<double>(pos_cov + neg_cov + 2);
}

double eval_score(EvalFn f, int pos_cov, int neg_cov) {
    switch (f) {
        case EvalFn::Coverage:
            return static_cast<double>(pos_cov - neg_cov);
        case EvalFn::Precision:
            return pos_cov + neg_cov > 0
                       ? static_cast<double>(pos_cov) / static_cast<double>(pos_cov + neg_cov)
                       : 0.0;
        case EvalFn::Laplace:
            return laplace_confidence(pos_cov, neg_cov);
    }
    return 0.0;
}

ScoredClause clause_score(const Clause& c, const std::vector<Literal>& pos,
                          const std::vector<Literal>& neg, const KnowledgeBase& kb, EvalFn evalfn,
                          const SolveBounds& bounds) {
    CoverageCounts cc = coverage_counts(c, pos, neg, kb, bounds);
    return ScoredClause{c, cc.pos_covered, cc.neg_covered,
                        eval_score(evalfn, cc.pos_covered, cc.neg_covered)};
}

bool is_acceptable(const ScoredClause& sc, const LearnParams& p) {
    if (!(sc.score > 0.0)) return false;
    if (sc.pos_cov < p.minpos) return false;
    const int covered = sc.pos_cov + sc.neg_cov;
    const double precision = covered > 0 ? static_cast<double>(sc.pos_cov) / covered : 0.0;
    if (precision < p.minprec) return false;
    if (p.noise_count) {
        if (sc.neg_cov > *p.noise_count) return false;
    } else if (static_cast<double>(sc.neg_cov) > p.noise * covered) {
        return false;
    }
    return true;
}

namespace {

// Variables introduced at body position j: first occurrence is at j (not in
// the head, not in any earlier body literal).
std::vector<std::vector<std::string>> intro_map(const Clause& c) {
    std::unordered_set<std::string> seen;
    std::vector<std::string> hv;
    collect_vars(c.head, hv);
    seen.insert(hv.begin(), hv.end());
    std::vector<std::vector<std::string>> intro(c.body.size());
    for (std::size_t j = 0; j < c.body.size(); ++j) {
        std::vector<std::string> vs;
        collect_vars(c.body[j], vs);
        for (const auto& v : vs)
            if (seen.insert(v).second) intro[j].push_back(v);
    }
    return intro;
}

// Deletes body literal `victim` and cascades over later literals whose
// previously-supplied variables are gone: a literal survives only if every
// variable it uses is supplied (head or a kept earlier literal) or is its
// own introduction.
Clause delete_with_linkedness_repair(const Clause& c, std::size_t victim) {
    const auto intro = intro_map(c);
    std::unordered_set<std::string> supplied;
    {
        std::vector<std::string> hv;
        collect_vars(c.head, hv);
        supplied.insert(hv.begin(), hv.end());
    }
    Clause out;
    out.head = c.head;
    for (std::size_t j = 0; j < c.body.size(); ++j) {
        if (j == victim) continue;
        std::vector<std::string> vs;
        collect_vars(c.body[j], vs);
        bool keep = true;
        for (const auto& v : vs) {
            if (supplied.count(v)) continue;
            bool own = false;
            for (const auto& iv : intro[j])
                if (iv == v) {
                    own = true;
                    break;
                }
            if (!own) {
                keep = false;
                break;
            }
        }
        if (!keep) continue;
        out.body.push_back(c.body[j]);
        for (const auto& v : vs) supplied.insert(v);
    }
    return out;
}

bool prefix_satisfiable(const std::vector<Literal>& body, std::size_t len, const KnowledgeBase& kb,
                        const Substitution& theta, const SolveBounds& bounds) {
    if (len == 0) return true;
    std::vector<Literal> prefix(body.begin(), body.begin() + static_cast<long>(len));
    SolveBounds b = bounds;
    b.max_solutions = 1;
    return !solve(prefix, kb, theta, b).solutions.empty();
}

}  // namespace

Clause armg(const Clause& c, const Literal& e, const KnowledgeBase& kb, const SolveBounds& bounds) {
    if (c.head.predicate != e.predicate || c.head.args.size() != e.args.size())
        throw DataError("armg example " + e.key() + " does not match clause head " + c.head.key());
    auto theta = unify(c.head, e);
    if (!theta) throw DataError("armg example does not unify with clause head");

    Clause cur = c;
    while (!cur.body.empty()) {
        if (prefix_satisfiable(cur.body, cur.body.size(), kb, *theta, bounds)) return cur;
        // smallest prefix length with no solution; satisfiability is monotone
        // non-increasing in the prefix length, so binary search applies
        std::size_t lo = 1, hi = cur.body.size();
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (prefix_satisfiable(cur.body, mid, kb, *theta, bounds)) lo = mid + 1;
            else hi = mid;
        }
        cur = delete_with_linkedness_repair(cur, lo - 1);
    }
    return cur;
}

namespace {

bool better(const ScoredClause& a, const ScoredClause& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.pos_cov != b.pos_cov) return a.pos_cov > b.pos_cov;
    if (a.clause.body.size() != b.clause.body.size()) return a.clause.body.size() < b.clause.body.size();
    return print_clause(a.clause) < print_clause(b.clause);
}

}  // namespace

ScoredClause best_armg(const Literal& seed, const std::vector<Literal>& pos,
                       const std::vector<Literal>& neg, const KnowledgeBase& kb,
                       const ModeSet& modes, const LearnParams& p, SplitMix64& rng) {
    if (pos.empty()) throw DataError("best_armg requires a non-empty positive set");
    Clause bottom = bottom_clause(seed, kb, modes, SaturationParams{p.depth_i, p.recall_cap});
    ScoredClause best = clause_score(bottom, pos, neg, kb, p.evalfn, p.bounds);

    std::vector<ScoredClause> beam{best};
    while (true) {
        std::vector<std::uint8_t> mask = covered_mask(best.clause, pos, kb, p.bounds);
        std::vector<std::size_t> uncovered;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (!mask[i]) uncovered.push_back(i);
        if (uncovered.empty()) break;

        std::vector<std::size_t> picks = sample_without_replacement(
            uncovered.size(), static_cast<std::size_t>(p.sample_size), rng);

        std::vector<ScoredClause> candidates;
        std::unordered_set<std::string> seen;
        for (const auto& bc : beam) {
            for (std::size_t k : picks) {
                Clause g = armg(bc.clause, pos[uncovered[k]], kb, p.bounds);
                if (!seen.insert(print_clause(g)).second) continue;
                candidates.push_back(clause_score(g, pos, neg, kb, p.evalfn, p.bounds));
            }
        }
        if (candidates.empty()) break;

        std::sort(candidates.begin(), candidates.end(), better);
        if (!(candidates.front().score > best.score)) break;
        best = candidates.front();
        if (candidates.size() > static_cast<std::size_t>(p.beam_width))
            candidates.resize(static_cast<std::size_t>(p.beam_width));
        beam = std::move(candidates);
    }
    return best;
}

Clause negative_based_reduction(const Clause& c, const std::vector<Literal>& pos,
                                const std::vector<Literal>& neg, const KnowledgeBase& kb,
                                const ModeSet& modes, const SolveBounds& bounds) {
    (void)modes;  // linkedness repair is structural; modes kept for interface symmetry
    Clause cur = c;
    CoverageCounts base = coverage_counts(cur, pos, neg, kb, bounds);
    bool committed_any = true;
    while (committed_any) {
        committed_any = false;
        if (cur.body.empty()) break;
        std::size_t j = cur.body.size();
        while (j-- > 0) {
            Clause candidate = delete_with_linkedness_repair(cur, j);
            CoverageCounts cc = coverage_counts(candidate, pos, neg, kb, bounds);
            if (cc.neg_covered == base.neg_covered && cc.pos_covered >= base.pos_covered) {
                // literals before j keep their indices; the cascade only
                // removes literals after j, which this pass already visited
                cur = std::move(candidate);
                base = cc;
                committed_any = true;
            }
        }
    }
    return cur;
}

namespace {

std::string format_score(double score) {
    if (score == static_cast<long long>(score))
        return std::to_string(static_cast<long long>(score));
    return fmt4(score);
}

TheoryRule make_rule(const ScoredClause& sc, const Literal& seed) {
    ScoredClause canon = sc;
    canon.clause = canonicalize(sc.clause);
    return TheoryRule{std::move(canon), print_literal(seed)};
}

Theory learn_incremental(const std::vector<Literal>& pos, const std::vector<Literal>& neg,
                         const KnowledgeBase& kb, const ModeSet& modes, const LearnParams& p,
                         SplitMix64& rng) {
    Theory theory;
    theory.params_used = p;

    std::vector<Literal> remaining = pos;
    std::unordered_set<std::string> seen_seeds;
    while (true) {
        // first unseen positive among the remaining ones
        const Literal* seed = nullptr;
        for (const auto& e : remaining) {
            if (!seen_seeds.count(print_literal(e))) {
                seed = &e;
                break;
            }
        }
        if (!seed) break;
        Literal seed_lit = *seed;
        seen_seeds.insert(print_literal(seed_lit));

        ScoredClause cand = best_armg(seed_lit, remaining, neg, kb, modes, p, rng);
        Clause reduced = negative_based_reduction(cand.clause, remaining, neg, kb, modes, p.bounds);
        ScoredClause scored = clause_score(reduced, remaining, neg, kb, p.evalfn, p.bounds);
        if (is_acceptable(scored, p)) {
            theory.rules.push_back(make_rule(scored, seed_lit));
            std::vector<std::uint8_t> mask = covered_mask(reduced, remaining, kb, p.bounds);
            std::vector<Literal> next;
            for (std::size_t i = 0; i < remaining.size(); ++i)
                if (!mask[i]) next.push_back(remaining[i]);
            remaining = std::move(next);
        }
    }
    return theory;
}

Theory learn_global(const std::vector<Literal>& pos, const std::vector<Literal>& neg,
                    const KnowledgeBase& kb, const ModeSet& modes, const LearnParams& p,
                    SplitMix64& rng) {
    Theory theory;
    theory.params_used = p;

    struct Candidate {
        ScoredClause scored;
        Literal seed;
        std::vector<std::uint8_t> mask;  // positive coverage over the full set
    };
    std::vector<Candidate> candidates;
    std::unordered_set<std::string> unique;
    for (const auto& seed : pos) {
        ScoredClause raw = best_armg(seed, pos, neg, kb, modes, p, rng);
        Clause reduced = negative_based_reduction(raw.clause, pos, neg, kb, modes, p.bounds);
        ScoredClause scored = clause_score(reduced, pos, neg, kb, p.evalfn, p.bounds);
        if (!is_acceptable(scored, p)) continue;
        if (!unique.insert(print_clause(scored.clause)).second) continue;
        candidates.push_back(
            Candidate{std::move(scored), seed, covered_mask(reduced, pos, kb, p.bounds)});
    }

    std::vector<std::uint8_t> covered(pos.size(), 0);
    std::vector<bool> used(candidates.size(), false);
    while (true) {
        long best_idx = -1;
        int best_marginal = 0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (used[i]) continue;
            int marginal = 0;
            for (std::size_t j = 0; j < pos.size(); ++j)
                if (candidates[i].mask[j] && !covered[j]) ++marginal;
            if (marginal == 0) continue;
            if (best_idx < 0) {
                best_idx = static_cast<long>(i);
                best_marginal = marginal;
                continue;
            }
            const ScoredClause& a = candidates[i].scored;
            const ScoredClause& b = candidates[static_cast<std::size_t>(best_idx)].scored;
            bool wins = false;
            if (a.score != b.score) wins = a.score > b.score;
            else if (marginal != best_marginal) wins = marginal > best_marginal;
            else if (a.clause.body.size() != b.clause.body.size())
                wins = a.clause.body.size() < b.clause.body.size();
            else wins = print_clause(a.clause) < print_clause(b.clause);
            if (wins) {
                best_idx = static_cast<long>(i);
                best_marginal = marginal;
            }
        }
        if (best_idx < 0) break;
        Candidate& chosen = candidates[static_cast<std::size_t>(best_idx)];
        used[static_cast<std::size_t>(best_idx)] = true;
        theory.rules.push_back(make_rule(chosen.scored, chosen.seed));
        for (std::size_t j = 0; j < pos.size(); ++j)
            if (chosen.mask[j]) covered[j] = 1;
    }
    return theory;
}

}  // namespace

Theory learn(const std::vector<Literal>& pos, const std::vector<Literal>& neg,
             const KnowledgeBase& kb, const ModeSet& modes, const LearnParams& p) {
    p.validate();
    SplitMix64 rng(p.rng_seed);
    Theory t;
    if (pos.empty()) {
        t.params_used = p;
        return t;
    }
    t = p.theory_construction == TheoryConstruction::Incremental
            ? learn_incremental(pos, neg, kb, modes, p, rng)
            : learn_global(pos, neg, kb, modes, p, rng);

    for (const auto& r : t.rules) {
        if (!is_well_formed(r.scored.clause, modes))
            throw std::logic_error("learned rule is not well-formed: " + print_clause(r.scored.clause));
        if (!is_acceptable(r.scored, p))
            throw std::logic_error("learned rule fails acceptability: " + print_clause(r.scored.clause));
    }
    return t;
}

std::string print_theory(const Theory& t) {
    std::ostringstream os;
    const LearnParams& p = t.params_used;
    os << "% relex theory v1\n";
    os << "% params: depth_i=" << p.depth_i << " recall_cap=" << p.recall_cap
       << " beam_width=" << p.beam_width << " sample_size=" << p.sample_size
       << " evalfn=" << evalfn_name(p.evalfn) << " minpos=" << p.minpos << " minprec=" << fmt4(p.minprec)
       << " noise=" << fmt4(p.noise);
    if (p.noise_count) os << " noise_count=" << *p.noise_count;
    os << " theory_construction=" << theory_construction_name(p.theory_construction)
       << " rng_seed=" << p.rng_seed << " max_depth=" << p.bounds.max_depth
       << " max_solutions=" << p.bounds.max_solutions << " max_steps=" << p.bounds.max_steps << "\n";
    for (const auto& r : t.rules) {
        os << print_clause(r.scored.clause) << "\n";
        os << "% pos=" << r.scored.pos_cov << " neg=" << r.scored.neg_cov
           << " score=" << format_score(r.scored.score) << " seed=" << r.seed_id << "\n";
    }
    return os.str();
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& line) {
    std::map<std::string, std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

}  // namespace

Theory parse_theory(const std::string& text) {
    Theory t;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    Clause pending;
    bool have_pending = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("% params:", 0) == 0) {
            auto kv = parse_kv(line.substr(9));
            LearnParams& p = t.params_used;
            if (kv.count("depth_i")) p.depth_i = std::stoi(kv["depth_i"]);
            if (kv.count("recall_cap")) p.recall_cap = std::stoi(kv["recall_cap"]);
            if (kv.count("beam_width")) p.beam_width = std::stoi(kv["beam_width"]);
            if (kv.count("sample_size")) p.sample_size = std::stoi(kv["sample_size"]);
            if (kv.count("evalfn")) p.evalfn = parse_evalfn(kv["evalfn"]);
            if (kv.count("minpos")) p.minpos = std::stoi(kv["minpos"]);
            if (kv.count("minprec")) p.minprec = std::stod(kv["minprec"]);
            if (kv.count("noise")) p.noise = std::stod(kv["noise"]);
            if (kv.count("noise_count")) p.noise_count = std::stoi(kv["noise_count"]);
            if (kv.count("theory_construction"))
                p.theory_construction = parse_theory_construction(kv["theory_construction"]);
            if (kv.count("rng_seed")) p.rng_seed = std::stoull(kv["rng_seed"]);
            if (kv.count("max_depth")) p.bounds.max_depth = std::stoi(kv["max_depth"]);
            if (kv.count("max_solutions")) p.bounds.max_solutions = std::stoi(kv["max_solutions"]);
            if (kv.count("max_steps")) p.bounds.max_steps = std::stol(kv["max_steps"]);
            continue;
        }
        if (line.rfind("% pos=", 0) == 0) {
            if (!have_pending) throw ParseError("rule stats without a preceding rule", line_no);
            auto kv = parse_kv(line.substr(2));
            TheoryRule r;
            r.scored.clause = pending;
            r.scored.pos_cov = std::stoi(kv.at("pos"));
            r.scored.neg_cov = std::stoi(kv.at("neg"));
            r.scored.score = std::stod(kv.at("score"));
            // seed is everything after "seed="
            auto at = line.find("seed=");
            if (at != std::string::npos) r.seed_id = line.substr(at + 5);
            t.rules.push_back(std::move(r));
            have_pending = false;
            continue;
        }
        if (line[0] == '%') continue;
        pending = parse_clause_text(line);
        have_pending = true;
    }
    if (have_pending) throw ParseError("rule without trailing stats comment");
    return t;
}

}  // namespace relex
