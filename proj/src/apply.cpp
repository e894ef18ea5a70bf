#include "relex/apply.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "relex/errors.hpp"
#include "relex/fmt.hpp"
#include "relex/solve.hpp"

namespace relex {

std::vector<std::pair<double, std::size_t>> apply_theory(const Theory& t, const KnowledgeBase& kb,
                                                         const std::vector<Literal>& candidates,
                                                         const SolveBounds& bounds) {
    std::vector<std::pair<double, std::size_t>> out(candidates.size(), {0.0, 0});
    for (std::size_t r = 0; r < t.rules.size(); ++r) {
        const auto& rule = t.rules[r];
        const double conf = laplace_confidence(rule.scored.pos_cov, rule.scored.neg_cov);
        std::vector<std::uint8_t> mask = covered_mask(rule.scored.clause, candidates, kb, bounds);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (mask[i] && conf > out[i].first) out[i] = {conf, r};
    }
    return out;
}

std::vector<ExtractedInstance> apply_theory(const Theory& t, const KnowledgeBase& kb,
                                            const std::vector<Candidate>& candidates,
                                            const SolveBounds& bounds) {
    std::vector<Literal> lits;
    lits.reserve(candidates.size());
    for (const auto& c : candidates) lits.push_back(c.lit);
    auto scores = apply_theory(t, kb, lits, bounds);

    std::vector<ExtractedInstance> out;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!(scores[i].first > 0.0)) continue;
        ExtractedInstance x;
        x.relation = candidates[i].lit.predicate;
        x.subject_id = candidates[i].entity1;
        x.object_id = candidates[i].entity2;
        x.sentence_id = candidates[i].sentence_id;
        x.confidence = scores[i].first;
        x.matched_rule = scores[i].second;
        out.push_back(std::move(x));
    }
    std::map<std::string, std::size_t> sentence_rank;
    for (const auto& c : candidates) sentence_rank.emplace(c.sentence_id, c.sentence_ordinal);
    std::stable_sort(out.begin(), out.end(),
                     [&](const ExtractedInstance& a, const ExtractedInstance& b) {
                         const std::size_t ra = sentence_rank.at(a.sentence_id);
                         const std::size_t rb = sentence_rank.at(b.sentence_id);
                         if (ra != rb) return ra < rb;
                         if (a.confidence != b.confidence) return a.confidence > b.confidence;
                         if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
                         return a.object_id < b.object_id;
                     });
    return out;
}

namespace {

const EntityMention* find_entity(const Corpus& corpus, const std::string& sentence_id,
                                 const std::string& entity_id) {
    for (const auto& d : corpus.documents)
        for (const auto& s : d.sentences)
            if (s.id == sentence_id)
                return s.entity_by_id(entity_id);
    return nullptr;
}

std::string most_specific_class(const EntityMention& e, const Taxonomy& tax) {
    const std::string label = e.subtype.empty() ? e.type : e.subtype;
    return tax.empty() ? label : tax.resolve(label);
}

}  // namespace

std::string export_instances(const std::vector<ExtractedInstance>& xs, const Taxonomy& tax,
                             const Corpus& corpus) {
    std::ostringstream os;
    os << "subject_id\trelation\tobject_id\tconfidence\tsubject_class\tobject_class\tsentence_id\n";
    for (const auto& x : xs) {
        const EntityMention* subj = find_entity(corpus, x.sentence_id, x.subject_id);
        const EntityMention* obj = find_entity(corpus, x.sentence_id, x.object_id);
        if (!subj || !obj)
            throw DataError("instance references unknown entity '" +
                            (subj ? x.object_id : x.subject_id) + "' in sentence '" + x.sentence_id + "'");
        os << x.subject_id << "\t" << x.relation << "\t" << x.object_id << "\t" << fmt4(x.confidence)
           << "\t" << most_specific_class(*subj, tax) << "\t" << most_specific_class(*obj, tax) << "\t"
           << x.sentence_id << "\n";
    }
    return os.str();
}

std::vector<ExtractedInstance> parse_instances(const std::string& text) {
    std::vector<ExtractedInstance> out;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line_no == 1) {
            if (line.rfind("subject_id\t", 0) != 0) throw ParseError("missing instance header", 1);
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            auto tab = line.find('\t', start);
            cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (cols.size() != 7) throw ParseError("expected 7 tab-separated columns", line_no);
        ExtractedInstance x;
        x.subject_id = cols[0];
        x.relation = cols[1];
        x.object_id = cols[2];
        x.confidence = std::stod(cols[3]);
        x.sentence_id = cols[6];
        out.push_back(std::move(x));
    }
    return out;
}

}  // namespace relex
