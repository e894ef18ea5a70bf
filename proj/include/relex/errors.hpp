// Error taxonomy shared by parsers, loaders and the CLI exit-code mapping.

#pragma once

#include <stdexcept>
#include <string>

namespace relex {

// Malformed input text (fact files, mode files, corpus records, ...).
// Carries a 1-based line number when one is known (0 = unknown).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + std::move(msg)
                                  : std::move(msg)),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Structurally valid input that violates a data invariant
// (arity conflict, dangling reference, cyclic taxonomy, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad run configuration: missing paths, out-of-range parameters.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Misuse of an evaluable builtin (non-ground or non-integer argument).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace relex
