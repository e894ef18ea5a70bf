// Applies a stored Theory to a fact base built from new documents and
// exports the extracted relation instances as typed subject-predicate-object
// records.

#pragma once

#include <string>
#include <vector>

#include "relex/corpus.hpp"
#include "relex/eval.hpp"
#include "relex/induce.hpp"
#include "relex/taxonomy.hpp"

namespace relex {

struct ExtractedInstance {
    std::string relation;
    std::string subject_id;  // entity mention id
    std::string object_id;
    std::string sentence_id;
    double confidence = 0.0;       // Laplace confidence of the matched rule
    std::size_t matched_rule = 0;  // index into the theory

    bool operator==(const ExtractedInstance& o) const = default;
};

// One instance per candidate some rule covers, carrying the highest-Laplace
// rule (ties: lowest rule index). Sorted by (sentence, confidence desc).
std::vector<ExtractedInstance> apply_theory(const Theory& t, const KnowledgeBase& kb,
                                            const std::vector<Candidate>& candidates,
                                            const SolveBounds& bounds);

// Spec-shaped overload over bare example literals: per-literal confidence
// (0 = uncovered) and best rule index.
std::vector<std::pair<double, std::size_t>> apply_theory(const Theory& t, const KnowledgeBase& kb,
                                                         const std::vector<Literal>& candidates,
                                                         const SolveBounds& bounds);

// Tab-separated export with header: subject_id, relation, object_id,
// confidence, subject_class, object_class, sentence_id. The class columns
// carry each entity's most specific class (subtype when present, else type).
std::string export_instances(const std::vector<ExtractedInstance>& xs, const Taxonomy& tax,
                             const Corpus& corpus);

std::vector<ExtractedInstance> parse_instances(const std::string& text);

}  // namespace relex
