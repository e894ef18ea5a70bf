// Deterministic bounded resolution over a ground-fact base plus intensional
// clauses. Candidate order is: facts in insertion order, then intensional
// clauses in program order; goals are resolved left to right, depth first.
// Solutions are restricted to the variables of the original goals (plus the
// seed substitution's domain) and de-duplicated preserving first occurrence.
//
// Coverage testing over example lists is the hot loop of the learner; it is
// provided in an OpenMP-parallel form next to a serial reference used by the
// tests and the benchmark. Both compute identical integer results.

#pragma once

#include <cstdint>
#include <vector>

#include "relex/kb.hpp"
#include "relex/term.hpp"

namespace relex {

struct SolveResult {
    std::vector<Substitution> solutions;
    bool truncated = false;  // a bound stopped the search
    long steps = 0;          // resolution steps consumed
};

SolveResult solve(const std::vector<Literal>& goals, const KnowledgeBase& kb,
                  const Substitution& seed, const SolveBounds& bounds);

// True iff `rule.head` unifies with `example` and the instantiated body is
// provable. Throws DataError on predicate/arity mismatch.
bool covers(const Clause& rule, const Literal& example, const KnowledgeBase& kb,
            const SolveBounds& bounds);

struct CoverageCounts {
    int pos_covered = 0;
    int neg_covered = 0;
};

// Parallel over examples when par::jobs() > 1.
CoverageCounts coverage_counts(const Clause& rule, const std::vector<Literal>& pos,
                               const std::vector<Literal>& neg, const KnowledgeBase& kb,
                               const SolveBounds& bounds);

// Serial reference kept for testing and benchmarking the parallel kernel.
CoverageCounts coverage_counts_serial(const Clause& rule, const std::vector<Literal>& pos,
                                      const std::vector<Literal>& neg, const KnowledgeBase& kb,
                                      const SolveBounds& bounds);

// Per-example coverage mask (1 = covered), parallel / serial pair.
std::vector<std::uint8_t> covered_mask(const Clause& rule, const std::vector<Literal>& examples,
                                       const KnowledgeBase& kb, const SolveBounds& bounds);
std::vector<std::uint8_t> covered_mask_serial(const Clause& rule, const std::vector<Literal>& examples,
                                              const KnowledgeBase& kb, const SolveBounds& bounds);

}  // namespace relex
