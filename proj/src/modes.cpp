#include "relex/modes.hpp"

#include <cctype>
#include <map>
#include <unordered_set>

#include "relex/errors.hpp"
#include "relex/solve.hpp"

namespace relex {

void SaturationParams::validate() const {
    if (depth_i < 1) throw ConfigError("depth_i must be >= 1");
    if (recall_cap < 1) throw ConfigError("recall_cap must be >= 1");
}

std::string ModeDecl::scheme_text() const {
    std::string out = predicate + "(";
    for (std::size_t i = 0; i < markers.size(); ++i) {
        if (i) out += ", ";
        out += markers[i].mode == MarkerMode::Input    ? '+'
               : markers[i].mode == MarkerMode::Output ? '-'
                                                       : '#';
        out += markers[i].type;
    }
    out += ")";
    return out;
}

namespace {

struct ModeLineParser {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t line;

    explicit ModeLineParser(const std::string& text, std::size_t ln) : s(text), line(ln) {}

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(const char* lit) {
        ws();
        std::size_t n = std::string(lit).size();
        if (s.compare(pos, n, lit) == 0) {
            pos += n;
            return true;
        }
        return false;
    }

    void require(const char* lit) {
        if (!eat(lit)) throw ParseError(std::string("expected '") + lit + "'", line);
    }

    std::string atom() {
        ws();
        std::size_t start = pos;
        while (pos < s.size()) {
            char c = s[pos];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++pos;
            else break;
        }
        if (pos == start) throw ParseError("expected name", line);
        return s.substr(start, pos - start);
    }

    int recall() {
        ws();
        if (eat("*")) return -1;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected recall (integer or '*')", line);
        int r = std::stoi(s.substr(start, pos - start));
        if (r < 1) throw ParseError("recall must be >= 1", line);
        return r;
    }

    PlaceMarker marker() {
        ws();
        if (pos >= s.size()) throw ParseError("expected place marker", line);
        char c = s[pos];
        MarkerMode m;
        if (c == '+') m = MarkerMode::Input;
        else if (c == '-') m = MarkerMode::Output;
        else if (c == '#') m = MarkerMode::Ground;
        else throw ParseError(std::string("unknown marker symbol '") + c + "'", line);
        ++pos;
        return PlaceMarker{m, atom()};
    }

    ModeDecl parse() {
        require(":-");
        ws();
        std::string kind = atom();
        if (kind != "modeh" && kind != "modeb")
            throw ParseError("expected modeh or modeb, got '" + kind + "'", line);
        ModeDecl d;
        d.is_head = (kind == "modeh");
        require("(");
        d.recall = recall();
        require(",");
        ws();
        d.predicate = atom();
        require("(");
        d.markers.push_back(marker());
        while (eat(",")) d.markers.push_back(marker());
        require(")");
        require(")");
        require(".");
        ws();
        if (pos != s.size()) throw ParseError("trailing input after mode declaration", line);
        return d;
    }
};

std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '%' && !in_str) return line.substr(0, i);
    }
    return line;
}

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

ModeSet parse_mode_file(const std::string& text) {
    ModeSet out;
    bool have_head = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        std::string line = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        start = end == std::string::npos ? text.size() + 1 : end + 1;
        ++line_no;
        line = strip_comment(line);
        if (blank(line)) continue;
        ModeDecl d = ModeLineParser(line, line_no).parse();
        if (d.is_head) {
            if (have_head) throw ParseError("multiple modeh declarations", line_no);
            have_head = true;
            out.head = std::move(d);
        } else {
            out.body.push_back(std::move(d));
        }
    }
    if (!have_head) throw ParseError("mode file has no modeh declaration");
    return out;
}

std::string print_mode_file(const ModeSet& modes) {
    auto one = [](const ModeDecl& d) {
        std::string r = d.recall < 0 ? "*" : std::to_string(d.recall);
        return std::string(":- ") + (d.is_head ? "modeh" : "modeb") + "(" + r + ", " +
               d.scheme_text() + ").\n";
    };
    std::string out = one(modes.head);
    for (const auto& d : modes.body) out += one(d);
    return out;
}

namespace {

// (constant/ground term, type) pair introduced during saturation
struct SeenPair {
    Term value;
    std::string type;
    std::string var;
};

class Saturator {
public:
    Saturator(const Literal& seed, const KnowledgeBase& kb, const ModeSet& modes,
              const SaturationParams& sp)
        : seed_(seed), kb_(kb), modes_(modes), sp_(sp) {}

    Clause run() {
        sp_.validate();
        if (seed_.predicate != modes_.head.predicate || seed_.args.size() != modes_.head.arity())
            throw DataError("seed " + seed_.key() + " does not match head mode " +
                            modes_.head.scheme_text());
        if (!seed_.is_ground()) throw DataError("seed example must be ground: " + print_literal(seed_));

        Clause out;
        out.head.predicate = seed_.predicate;
        for (std::size_t i = 0; i < seed_.args.size(); ++i) {
            const PlaceMarker& m = modes_.head.markers[i];
            if (m.mode == MarkerMode::Ground) {
                out.head.args.push_back(seed_.args[i]);
                continue;
            }
            check_typed(seed_.args[i], m.type);
            out.head.args.push_back(Term::var(var_for(seed_.args[i], m.type)));
            if (m.mode == MarkerMode::Input) available_.push_back(pair_for(seed_.args[i], m.type));
        }

        for (int layer = 1; layer <= sp_.depth_i; ++layer) {
            std::vector<SeenPair> discovered;
            for (const auto& mode : modes_.body) run_mode(mode, out, discovered);
            const bool fixpoint = discovered.empty();
            for (auto& p : discovered) available_.push_back(std::move(p));
            if (fixpoint) break;  // next layer would only rediscover duplicates
        }
        return out;
    }

private:
    std::string var_for(const Term& value, const std::string& type) {
        const std::string key = print_term(value) + "\x1f" + type;
        auto it = var_names_.find(key);
        if (it != var_names_.end()) return it->second;
        std::string name = canonical_var_name(var_names_.size());
        var_names_.emplace(key, name);
        return name;
    }

    bool known_pair(const Term& value, const std::string& type) const {
        return var_names_.count(print_term(value) + "\x1f" + type) != 0;
    }

    SeenPair pair_for(const Term& value, const std::string& type) {
        return SeenPair{value, type, var_for(value, type)};
    }

    void check_typed(const Term& t, const std::string& type) {
        if (!kb_.has_fact(Literal{type, {t}}))
            throw DataError("seed constant " + print_term(t) + " has no typing fact " + type + "(" +
                            print_term(t) + ")");
    }

    void run_mode(const ModeDecl& mode, Clause& out, std::vector<SeenPair>& discovered) {
        std::vector<std::size_t> input_positions;
        for (std::size_t i = 0; i < mode.markers.size(); ++i)
            if (mode.markers[i].mode == MarkerMode::Input) input_positions.push_back(i);

        std::vector<const SeenPair*> chosen(input_positions.size(), nullptr);
        instantiate(mode, input_positions, 0, chosen, out, discovered);
    }

    void instantiate(const ModeDecl& mode, const std::vector<std::size_t>& input_positions,
                     std::size_t k, std::vector<const SeenPair*>& chosen, Clause& out,
                     std::vector<SeenPair>& discovered) {
        if (k == input_positions.size()) {
            query(mode, input_positions, chosen, out, discovered);
            return;
        }
        const std::string& want = mode.markers[input_positions[k]].type;
        for (const auto& p : available_) {
            if (p.type != want) continue;
            chosen[k] = &p;
            instantiate(mode, input_positions, k + 1, chosen, out, discovered);
        }
    }

    void query(const ModeDecl& mode, const std::vector<std::size_t>& input_positions,
               const std::vector<const SeenPair*>& chosen, Clause& out,
               std::vector<SeenPair>& discovered) {
        Literal q;
        q.predicate = mode.predicate;
        q.args.resize(mode.arity());
        std::vector<std::string> qvars(mode.arity());
        {
            std::size_t in_k = 0;
            for (std::size_t i = 0; i < mode.arity(); ++i) {
                if (mode.markers[i].mode == MarkerMode::Input) {
                    q.args[i] = chosen[in_k++]->value;
                } else {
                    qvars[i] = "_Q" + std::to_string(i);
                    q.args[i] = Term::var(qvars[i]);
                }
            }
        }

        SolveBounds bounds;
        bounds.max_solutions = mode.recall < 0 ? sp_.recall_cap : mode.recall;
        SolveResult res = solve({q}, kb_, {}, bounds);

        for (const auto& sol : res.solutions) {
            Literal lit;
            lit.predicate = mode.predicate;
            lit.args.resize(mode.arity());
            bool ok = true;
            std::vector<std::pair<Term, std::string>> new_outputs;
            {
                std::size_t in_k = 0;
                for (std::size_t i = 0; i < mode.arity() && ok; ++i) {
                    const PlaceMarker& m = mode.markers[i];
                    if (m.mode == MarkerMode::Input) {
                        lit.args[i] = Term::var(chosen[in_k]->var);
                        ++in_k;
                    } else {
                        Term v = sol.walk(Term::var(qvars[i]));
                        if (v.is_var()) {
                            ok = false;  // unbound output (open query answer) — skip
                            break;
                        }
                        if (m.mode == MarkerMode::Ground) {
                            lit.args[i] = v;
                        } else {
                            bool fresh = !known_pair(v, m.type);
                            lit.args[i] = Term::var(var_for(v, m.type));
                            if (fresh) new_outputs.emplace_back(v, m.type);
                        }
                    }
                }
            }
            if (!ok) continue;
            for (auto& [value, type] : new_outputs)
                discovered.push_back(SeenPair{value, type, var_for(value, type)});
            if (emitted_.insert(print_literal(lit)).second) out.body.push_back(lit);
        }
    }

    const Literal& seed_;
    const KnowledgeBase& kb_;
    const ModeSet& modes_;
    SaturationParams sp_;
    std::vector<SeenPair> available_;
    std::map<std::string, std::string> var_names_;
    std::unordered_set<std::string> emitted_;
};

}  // namespace

Clause bottom_clause(const Literal& seed, const KnowledgeBase& kb, const ModeSet& modes,
                     const SaturationParams& sp) {
    return Saturator(seed, kb, modes, sp).run();
}

bool is_well_formed(const Clause& rule, const ModeSet& modes) {
    if (rule.head.predicate != modes.head.predicate || rule.head.args.size() != modes.head.arity())
        return false;

    std::unordered_set<std::string> supplied;
    for (std::size_t i = 0; i < rule.head.args.size(); ++i) {
        if (modes.head.markers[i].mode == MarkerMode::Input && rule.head.args[i].is_var())
            supplied.insert(rule.head.args[i].name);
    }

    for (const auto& lit : rule.body) {
        bool matched = false;
        for (const auto& mode : modes.body) {
            if (mode.predicate != lit.predicate || mode.arity() != lit.args.size()) continue;
            bool ok = true;
            for (std::size_t i = 0; i < lit.args.size() && ok; ++i) {
                const Term& a = lit.args[i];
                switch (mode.markers[i].mode) {
                    case MarkerMode::Input:
                        ok = a.is_var() && supplied.count(a.name) != 0;
                        break;
                    case MarkerMode::Output:
                        ok = a.is_var();
                        break;
                    case MarkerMode::Ground:
                        ok = a.is_ground();
                        break;
                }
            }
            if (ok) {
                matched = true;
                break;
            }
        }
        if (!matched) return false;
        for (const auto& a : lit.args)
            if (a.is_var()) supplied.insert(a.name);
    }
    return true;
}

}  // namespace relex
