#pragma once

#include <stdexcept>
#include <string>

namespace sshg {

struct SyntaxError : std::runtime_error {
    std::size_t position;
    SyntaxError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

struct UnknownSymbol : std::runtime_error {
    explicit UnknownSymbol(const std::string& name)
        : std::runtime_error("unknown symbol: " + name) {}
};

struct NonTerminating : std::runtime_error {
    explicit NonTerminating(const std::string& what) : std::runtime_error(what) {}
};

struct ResidualNonZero : std::runtime_error {
    explicit ResidualNonZero(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentSystem : std::runtime_error {
    explicit InconsistentSystem(const std::string& what) : std::runtime_error(what) {}
};

struct MismatchAgainstReference : std::runtime_error {
    explicit MismatchAgainstReference(const std::string& what) : std::runtime_error(what) {}
};

struct ConventionMismatch : std::runtime_error {
    explicit ConventionMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownName : std::runtime_error {
    explicit UnknownName(const std::string& name)
        : std::runtime_error("unknown catalog name: " + name) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NumericBlowup : std::runtime_error {
    explicit NumericBlowup(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateParameters : std::runtime_error {
    explicit DegenerateParameters(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sshg
