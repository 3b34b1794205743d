#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orthospace {

enum class ErrorKind {
    DivisionByZero,
    MixedField,
    Parse,
    BlockNotOrthogonal,
    InvalidDiagram,
    InvalidGraph,
    ZeroComponent,
    VerificationFailure,
    DegenerateConfiguration,
    EmptyGraph,
    DimensionMismatch,
    MalformedTables,
    SizeLimitExceeded,
    EIsZero,
    PasteVerificationFailure,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace orthospace
