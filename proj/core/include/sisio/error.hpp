#pragma once

#include <stdexcept>
#include <string>

namespace sisio {

enum class ErrorKind {
    InvalidInput,
    DimensionMismatch,
    Syntax,
    UnknownIdentifier,
    Arity,
    Estimation,
    RankDeficient,
    DomainViolation,
    Inconsistent,
    Divergence,
    Config,
    Io,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace sisio
