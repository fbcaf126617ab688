#pragma once

#include <stdexcept>
#include <string>

namespace collig {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Each failure mode gets its own type so callers (and the Python layer) can
// tell a genuine discontinuity apart from a malformed input.
#define COLLIG_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

COLLIG_DEFINE_ERROR(DimensionMismatch);
COLLIG_DEFINE_ERROR(InvalidArgument);
COLLIG_DEFINE_ERROR(SingularPivot);
COLLIG_DEFINE_ERROR(SingularSystem);
COLLIG_DEFINE_ERROR(NotInterior);
COLLIG_DEFINE_ERROR(NotInBall);
COLLIG_DEFINE_ERROR(NotOnBoundary);
COLLIG_DEFINE_ERROR(CompositionSingular);
COLLIG_DEFINE_ERROR(NotBlockDiagonal);
COLLIG_DEFINE_ERROR(SplitSingular);
COLLIG_DEFINE_ERROR(SingularOnComponent);
COLLIG_DEFINE_ERROR(ImageNotInComponent);
COLLIG_DEFINE_ERROR(InvariantViolation);
COLLIG_DEFINE_ERROR(UnknownTheorem);

#undef COLLIG_DEFINE_ERROR

/// JSON/text parse failure with a 1-based source location.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("ParseError at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace collig
