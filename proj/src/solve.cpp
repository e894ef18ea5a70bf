#include "relex/solve.hpp"

#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_set>

#include "relex/errors.hpp"
#include "relex/par.hpp"
#include "relex/parse.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relex {
namespace {

class Engine {
public:
    Engine(const KnowledgeBase& kb, const SolveBounds& bounds) : kb_(kb), bounds_(bounds) {}

    SolveResult run(const std::vector<Literal>& goals, const Substitution& seed) {
        bounds_.validate();
        result_vars_.clear();
        for (const auto& [v, t] : seed.bindings()) result_vars_.push_back(v);
        for (const auto& g : goals) collect_vars(g, result_vars_);
        prove(goals, 0, seed, 0, [this](const Substitution& s) { record(s); });
        res_.steps = steps_;
        return std::move(res_);
    }

private:
    using Cont = std::function<void(const Substitution&)>;

    bool stopping() const { return stop_; }

    bool charge_step() {
        if (++steps_ > bounds_.max_steps) {
            res_.truncated = true;
            stop_ = true;
            return false;
        }
        return true;
    }

    void record(const Substitution& s) {
        Substitution r = s.restrict_to(result_vars_);
        std::string key = print_substitution(r);
        if (!seen_.insert(std::move(key)).second) return;
        res_.solutions.push_back(std::move(r));
        if (static_cast<int>(res_.solutions.size()) >= bounds_.max_solutions) {
            res_.truncated = true;
            stop_ = true;
        }
    }

    static bool eval_comparison(const std::string& op, std::int64_t a, std::int64_t b) {
        if (op == "<") return a < b;
        if (op == "=<") return a <= b;
        if (op == ">") return a > b;
        return a >= b;  // ">="
    }

    void prove(const std::vector<Literal>& goals, std::size_t idx, const Substitution& theta,
               int depth, const Cont& done) {
        if (stopping()) return;
        if (idx == goals.size()) {
            done(theta);
            return;
        }
        const Literal goal = theta.apply(goals[idx]);

        if (is_comparison_builtin(goal.predicate)) {
            if (!charge_step()) return;
            const Term& a = goal.args[0];
            const Term& b = goal.args[1];
            if (a.kind != TermKind::Int || b.kind != TermKind::Int)
                throw EvalError("comparison builtin '" + goal.predicate +
                                "' needs ground integer arguments, got " + print_literal(goal));
            if (eval_comparison(goal.predicate, a.ival, b.ival))
                prove(goals, idx + 1, theta, depth, done);
            return;
        }

        const std::string key = goal.key();

        // facts, in insertion order (first-argument index when applicable)
        const auto& facts = kb_.facts_for(key);
        if (!facts.empty()) {
            if (!goal.args.empty() && goal.args[0].is_ground()) {
                if (const auto* positions = kb_.first_arg_positions(key, goal.args[0])) {
                    for (std::size_t p : *positions) {
                        if (stopping()) return;
                        if (!charge_step()) return;
                        if (auto t2 = unify(goal, facts[p], theta)) prove(goals, idx + 1, *t2, depth, done);
                    }
                }
            } else {
                for (const auto& f : facts) {
                    if (stopping()) return;
                    if (!charge_step()) return;
                    if (auto t2 = unify(goal, f, theta)) prove(goals, idx + 1, *t2, depth, done);
                }
            }
        }

        // intensional clauses, in program order
        if (const auto* positions = kb_.intensional_for(key)) {
            for (std::size_t p : *positions) {
                if (stopping()) return;
                if (!charge_step()) return;
                if (depth + 1 > bounds_.max_depth) {
                    res_.truncated = true;
                    continue;
                }
                Clause rc = rename_clause(kb_.intensional()[p]);
                auto t2 = unify(goal, rc.head, theta);
                if (!t2) continue;
                prove(rc.body, 0, *t2, depth + 1,
                      [&](const Substitution& t3) { prove(goals, idx + 1, t3, depth, done); });
            }
        }
    }

    Clause rename_clause(const Clause& c) {
        const std::string suffix = "_r" + std::to_string(rename_counter_++);
        Substitution ren;
        for (const auto& v : clause_vars(c)) ren.bind(v, Term::var(v + suffix));
        return ren.apply(c);
    }

    const KnowledgeBase& kb_;
    SolveBounds bounds_;
    std::vector<std::string> result_vars_;
    std::unordered_set<std::string> seen_;
    SolveResult res_;
    long steps_ = 0;
    bool stop_ = false;
    long rename_counter_ = 0;
};

}  // namespace

SolveResult solve(const std::vector<Literal>& goals, const KnowledgeBase& kb,
                  const Substitution& seed, const SolveBounds& bounds) {
    return Engine(kb, bounds).run(goals, seed);
}

bool covers(const Clause& rule, const Literal& example, const KnowledgeBase& kb,
            const SolveBounds& bounds) {
    if (rule.head.predicate != example.predicate || rule.head.args.size() != example.args.size())
        throw DataError("example predicate " + example.key() + " does not match rule head " +
                        rule.head.key());
    auto theta = unify(rule.head, example);
    if (!theta) return false;
    if (rule.body.empty()) return true;
    SolveBounds b = bounds;
    b.max_solutions = 1;
    return !solve(rule.body, kb, *theta, b).solutions.empty();
}

std::vector<std::uint8_t> covered_mask_serial(const Clause& rule, const std::vector<Literal>& examples,
                                              const KnowledgeBase& kb, const SolveBounds& bounds) {
    std::vector<std::uint8_t> mask(examples.size(), 0);
    for (std::size_t i = 0; i < examples.size(); ++i)
        mask[i] = covers(rule, examples[i], kb, bounds) ? 1 : 0;
    return mask;
}

#ifdef _OPENMP
namespace {

// Exceptions must not escape an OpenMP region; capture the first one and
// rethrow on the calling thread.
class ErrorTrap {
public:
    void capture() {
        std::lock_guard<std::mutex> lock(mu_);
        if (!err_) err_ = std::current_exception();
    }
    bool armed() const { return err_ != nullptr; }
    void rethrow_if_set() const {
        if (err_) std::rethrow_exception(err_);
    }

private:
    std::mutex mu_;
    std::exception_ptr err_;
};

}  // namespace
#endif

std::vector<std::uint8_t> covered_mask(const Clause& rule, const std::vector<Literal>& examples,
                                       const KnowledgeBase& kb, const SolveBounds& bounds) {
#ifdef _OPENMP
    if (par::jobs() > 1 && examples.size() > 1) {
        std::vector<std::uint8_t> mask(examples.size(), 0);
        const long n = static_cast<long>(examples.size());
        ErrorTrap trap;
#pragma omp parallel for schedule(dynamic, 4) num_threads(par::jobs())
        for (long i = 0; i < n; ++i) {
            if (trap.armed()) continue;
            try {
                mask[i] = covers(rule, examples[i], kb, bounds) ? 1 : 0;
            } catch (...) {
                trap.capture();
            }
        }
        trap.rethrow_if_set();
        return mask;
    }
#endif
    return covered_mask_serial(rule, examples, kb, bounds);
}

CoverageCounts coverage_counts_serial(const Clause& rule, const std::vector<Literal>& pos,
                                      const std::vector<Literal>& neg, const KnowledgeBase& kb,
                                      const SolveBounds& bounds) {
    CoverageCounts out;
    for (const auto& e : pos) out.pos_covered += covers(rule, e, kb, bounds) ? 1 : 0;
    for (const auto& e : neg) out.neg_covered += covers(rule, e, kb, bounds) ? 1 : 0;
    return out;
}

CoverageCounts coverage_counts(const Clause& rule, const std::vector<Literal>& pos,
                               const std::vector<Literal>& neg, const KnowledgeBase& kb,
                               const SolveBounds& bounds) {
#ifdef _OPENMP
    if (par::jobs() > 1 && pos.size() + neg.size() > 1) {
        int pc = 0;
        int nc = 0;
        const long np = static_cast<long>(pos.size());
        const long nn = static_cast<long>(neg.size());
        ErrorTrap trap;
#pragma omp parallel num_threads(par::jobs())
        {
#pragma omp for schedule(dynamic, 4) reduction(+ : pc) nowait
            for (long i = 0; i < np; ++i) {
                if (trap.armed()) continue;
                try {
                    pc += covers(rule, pos[i], kb, bounds) ? 1 : 0;
                } catch (...) {
                    trap.capture();
                }
            }
#pragma omp for schedule(dynamic, 4) reduction(+ : nc)
            for (long i = 0; i < nn; ++i) {
                if (trap.armed()) continue;
                try {
                    nc += covers(rule, neg[i], kb, bounds) ? 1 : 0;
                } catch (...) {
                    trap.capture();
                }
            }
        }
        trap.rethrow_if_set();
        return {pc, nc};
    }
#endif
    return coverage_counts_serial(rule, pos, neg, kb, bounds);
}

}  // namespace relex
