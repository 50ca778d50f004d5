#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rescalc {

enum class Errc {
    InvalidType,
    DuplicateName,
    DegreeMismatch,
    LengthMismatch,
    NotLinear,
    TypeMismatch,
    ContextMismatch,
    ShuffleViolation,
    FragmentViolation,
    NotSymmetricSystem,
    NonRepresentableType,
    FlavorMismatch,
    ArityMismatch,
    NotFree,
    IllTyped,
    InvalidRedex,
    StepBudgetExceeded,
    ShapeMismatch,
    NotATensor,
    SpanMismatch,
    NotAnArrow,
    BadSuffix,
    NotSymRep,
    NonDiscrete,
    StructureMismatch,
    ParseError,
};

const char* errc_name(Errc code);

// A root path of child indices. The empty path addresses the root.
using Position = std::vector<int>;

std::string position_string(const Position& p);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message, Position where = {});

    Errc code() const { return code_; }
    const Position& where() const { return where_; }
    const std::string& detail() const { return detail_; }

private:
    Errc code_;
    Position where_;
    std::string detail_;
};

} // namespace rescalc
