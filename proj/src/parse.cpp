#include "relex/parse.hpp"

#include <cctype>
#include <cstdlib>

#include "relex/errors.hpp"

namespace relex {
namespace {

enum class TokKind { Atom, Var, Int, Str, LParen, RParen, Comma, Semicolon, Dot, Neck, CmpOp, End };

struct Tok {
    TokKind kind;
    std::string text;
    std::int64_t ival = 0;
    std::size_t line = 0;
};

class Lexer {
public:
    Lexer(const std::string& src, std::size_t start_line = 1) : src_(src), line_(start_line) {}

    Tok next() {
        skip_ws_and_comments();
        if (pos_ >= src_.size()) return {TokKind::End, "", 0, line_};
        const std::size_t line = line_;
        char c = src_[pos_];
        if (c == '(') return ++pos_, Tok{TokKind::LParen, "(", 0, line};
        if (c == ')') return ++pos_, Tok{TokKind::RParen, ")", 0, line};
        if (c == ',') return ++pos_, Tok{TokKind::Comma, ",", 0, line};
        if (c == ';') return ++pos_, Tok{TokKind::Semicolon, ";", 0, line};
        if (c == '.') {
            // '.' terminates a clause unless it is glued into a number (none
            // of our formats produce that).
            return ++pos_, Tok{TokKind::Dot, ".", 0, line};
        }
        if (c == ':' && peek(1) == '-') return pos_ += 2, Tok{TokKind::Neck, ":-", 0, line};
        if (c == '=' && peek(1) == '<') return pos_ += 2, Tok{TokKind::CmpOp, "=<", 0, line};
        if (c == '>' && peek(1) == '=') return pos_ += 2, Tok{TokKind::CmpOp, ">=", 0, line};
        if (c == '<') return ++pos_, Tok{TokKind::CmpOp, "<", 0, line};
        if (c == '>') return ++pos_, Tok{TokKind::CmpOp, ">", 0, line};
        if (c == '"') return lex_string(line);
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && std::isdigit(static_cast<unsigned char>(peek(1)))))
            return lex_int(line);
        if (std::islower(static_cast<unsigned char>(c))) return lex_name(line, TokKind::Atom);
        if (std::isupper(static_cast<unsigned char>(c)) || c == '_') return lex_name(line, TokKind::Var);
        throw ParseError(std::string("unexpected character '") + c + "'", line);
    }

private:
    char peek(std::size_t off) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

    void skip_ws_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    Tok lex_string(std::size_t line) {
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < src_.size()) {
            char c = src_[pos_++];
            if (c == '\\' && pos_ < src_.size()) {
                out += src_[pos_++];
            } else if (c == '"') {
                return {TokKind::Str, out, 0, line};
            } else if (c == '\n') {
                throw ParseError("unterminated string", line);
            } else {
                out += c;
            }
        }
        throw ParseError("unterminated string", line);
    }

    Tok lex_int(std::size_t line) {
        std::size_t start = pos_;
        if (src_[pos_] == '-') ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return {TokKind::Int, "", std::strtoll(src_.substr(start, pos_ - start).c_str(), nullptr, 10), line};
    }

    Tok lex_name(std::size_t line, TokKind kind) {
        std::size_t start = pos_;
        ++pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                ++pos_;
            } else if (c == '-' && kind == TokKind::Atom &&
                       std::isalnum(static_cast<unsigned char>(peek(1)))) {
                pos_ += 2;  // hyphen joins atom pieces: state-or-province
            } else {
                break;
            }
        }
        return {kind, src_.substr(start, pos_ - start), 0, line};
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_;
};

// Body expression before disjunction expansion.
struct BodyExpr {
    // Disjunction of conjunctions (disjunctive normal form).
    std::vector<std::vector<Literal>> alts;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) { advance(); }

    std::vector<Clause> program() {
        std::vector<Clause> out;
        while (cur_.kind != TokKind::End) {
            auto cs = clause();
            out.insert(out.end(), cs.begin(), cs.end());
        }
        return out;
    }

    Clause single_clause() {
        auto cs = clause();
        if (cs.size() != 1) throw ParseError("disjunctive clause where a single clause was expected", cur_.line);
        expect_end();
        return cs[0];
    }

    Literal single_literal() {
        Literal l = literal();
        expect_end();
        return l;
    }

    Term single_term() {
        Term t = term();
        expect_end();
        return t;
    }

private:
    void advance() { cur_ = lex_.next(); }

    void expect(TokKind k, const char* what) {
        if (cur_.kind != k) throw ParseError(std::string("expected ") + what, cur_.line);
        advance();
    }

    void expect_end() {
        if (cur_.kind != TokKind::End) throw ParseError("trailing input", cur_.line);
    }

    Term term() {
        Tok t = cur_;
        switch (t.kind) {
            case TokKind::Atom:
                advance();
                return Term::constant(t.text);
            case TokKind::Var:
                advance();
                return Term::var(t.text);
            case TokKind::Int:
                advance();
                return Term::integer(t.ival);
            case TokKind::Str:
                advance();
                return Term::str(t.text);
            default:
                throw ParseError("expected term", t.line);
        }
    }

    Literal literal() {
        if (cur_.kind != TokKind::Atom) {
            // possibly an infix comparison starting with a term
            return comparison_or_fail();
        }
        std::string pred = cur_.text;
        advance();
        Literal l;
        l.predicate = std::move(pred);
        if (cur_.kind == TokKind::LParen) {
            advance();
            l.args.push_back(term());
            while (cur_.kind == TokKind::Comma) {
                advance();
                l.args.push_back(term());
            }
            expect(TokKind::RParen, "')'");
        }
        // atom followed by an infix operator: "x > 3" with x a constant
        if (cur_.kind == TokKind::CmpOp && l.args.empty()) {
            return finish_comparison(Term::constant(l.predicate));
        }
        return l;
    }

    Literal comparison_or_fail() {
        Term lhs = term();
        if (cur_.kind != TokKind::CmpOp) throw ParseError("expected literal", cur_.line);
        return finish_comparison(lhs);
    }

    Literal finish_comparison(Term lhs) {
        std::string op = cur_.text;
        advance();
        Term rhs = term();
        return Literal{op, {std::move(lhs), std::move(rhs)}};
    }

    // primary := '(' or_expr ')' | literal-or-comparison
    BodyExpr primary() {
        if (cur_.kind == TokKind::LParen) {
            advance();
            BodyExpr e = or_expr();
            expect(TokKind::RParen, "')'");
            return e;
        }
        if (cur_.kind == TokKind::Var || cur_.kind == TokKind::Int || cur_.kind == TokKind::Str) {
            return BodyExpr{{{comparison_or_fail()}}};
        }
        return BodyExpr{{{literal()}}};
    }

    BodyExpr and_expr() {
        BodyExpr acc = primary();
        while (cur_.kind == TokKind::Comma) {
            advance();
            BodyExpr rhs = primary();
            // cross product: (a ; b), (c ; d) -> ac, ad, bc, bd
            std::vector<std::vector<Literal>> merged;
            for (const auto& l : acc.alts)
                for (const auto& r : rhs.alts) {
                    auto row = l;
                    row.insert(row.end(), r.begin(), r.end());
                    merged.push_back(std::move(row));
                }
            acc.alts = std::move(merged);
        }
        return acc;
    }

    BodyExpr or_expr() {
        BodyExpr acc = and_expr();
        while (cur_.kind == TokKind::Semicolon) {
            advance();
            BodyExpr rhs = and_expr();
            acc.alts.insert(acc.alts.end(), rhs.alts.begin(), rhs.alts.end());
        }
        return acc;
    }

    std::vector<Clause> clause() {
        Literal head = literal();
        if (is_comparison_builtin(head.predicate))
            throw ParseError("comparison cannot be a clause head", cur_.line);
        std::vector<Clause> out;
        if (cur_.kind == TokKind::Neck) {
            advance();
            BodyExpr body = or_expr();
            for (auto& alt : body.alts) out.push_back(Clause{head, std::move(alt)});
        } else {
            out.push_back(Clause{head, {}});
        }
        expect(TokKind::Dot, "'.'");
        return out;
    }

    Lexer lex_;
    Tok cur_{TokKind::End, "", 0, 0};
};

}  // namespace

bool is_comparison_builtin(const std::string& predicate) {
    return predicate == "<" || predicate == "=<" || predicate == ">" || predicate == ">=";
}

std::vector<Clause> parse_program(const std::string& text) { return Parser(text).program(); }

Clause parse_clause_text(const std::string& text) { return Parser(text).single_clause(); }

Literal parse_literal_text(const std::string& text) { return Parser(text).single_literal(); }

Term parse_term_text(const std::string& text) { return Parser(text).single_term(); }

}  // namespace relex
