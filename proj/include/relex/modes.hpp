// Declarative bias: modeh/modeb declarations, bottom-clause saturation of a
// seed example, and linkedness checking of candidate rules.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relex/kb.hpp"
#include "relex/term.hpp"

namespace relex {

enum class MarkerMode { Input, Output, Ground };  // +  -  #

struct PlaceMarker {
    MarkerMode mode = MarkerMode::Input;
    std::string type;
};

struct ModeDecl {
    bool is_head = false;
    int recall = 1;  // -1 = '*' (capped by SaturationParams::recall_cap)
    std::string predicate;
    std::vector<PlaceMarker> markers;

    std::size_t arity() const { return markers.size(); }
    std::string scheme_text() const;
};

struct ModeSet {
    ModeDecl head;
    std::vector<ModeDecl> body;
};

struct SaturationParams {
    int depth_i = 3;
    int recall_cap = 100;

    void validate() const;
};

// Parses mode-file text:
//   :- modeh(1, work_for(+token, +token)).
//   :- modeb(*, t_hasDep(#dep, +token, -token)).
// '%' starts a comment. Exactly one modeh line is required.
ModeSet parse_mode_file(const std::string& text);
std::string print_mode_file(const ModeSet& modes);

// Most-specific clause of the seed under the modes, built layer by layer up
// to depth_i. Deterministic: variables are named A, B, C... in introduction
// order; body literal order is (layer, mode order, instantiation order,
// solution order); duplicates dropped. New (constant, type) pairs discovered
// in a layer become usable as inputs from the next layer on.
Clause bottom_clause(const Literal& seed, const KnowledgeBase& kb, const ModeSet& modes,
                     const SaturationParams& sp);

// True iff every body literal matches some body mode (variables at +/-
// positions, ground terms at # positions) and every input variable is
// supplied by a head input variable or an earlier literal (linkedness).
bool is_well_formed(const Clause& rule, const ModeSet& modes);

}  // namespace relex
