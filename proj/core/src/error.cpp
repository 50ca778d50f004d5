#include "rescalc/error.hpp"

namespace rescalc {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::InvalidType: return "InvalidType";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NotLinear: return "NotLinear";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::ContextMismatch: return "ContextMismatch";
    case Errc::ShuffleViolation: return "ShuffleViolation";
    case Errc::FragmentViolation: return "FragmentViolation";
    case Errc::NotSymmetricSystem: return "NotSymmetricSystem";
    case Errc::NonRepresentableType: return "NonRepresentableType";
    case Errc::FlavorMismatch: return "FlavorMismatch";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::NotFree: return "NotFree";
    case Errc::IllTyped: return "IllTyped";
    case Errc::InvalidRedex: return "InvalidRedex";
    case Errc::StepBudgetExceeded: return "StepBudgetExceeded";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::NotATensor: return "NotATensor";
    case Errc::SpanMismatch: return "SpanMismatch";
    case Errc::NotAnArrow: return "NotAnArrow";
    case Errc::BadSuffix: return "BadSuffix";
    case Errc::NotSymRep: return "NotSymRep";
    case Errc::NonDiscrete: return "NonDiscrete";
    case Errc::StructureMismatch: return "StructureMismatch";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

std::string position_string(const Position& p) {
    if (p.empty())
        return "/";
    std::string out;
    for (int i : p) {
        out += '/';
        out += std::to_string(i);
    }
    return out;
}

static std::string format_message(Errc code, const std::string& message, const Position& where) {
    return std::string(errc_name(code)) + " at " + position_string(where) + ": " + message;
}

Error::Error(Errc code, const std::string& message, Position where)
    : std::runtime_error(format_message(code, message, where)),
      code_(code),
      where_(std::move(where)),
      detail_(message) {}

} // namespace rescalc
