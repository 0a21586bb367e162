#include "congruent/errors.hpp"

namespace congruent {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::NotOdd: return "NotOdd";
        case Errc::NotPrime: return "NotPrime";
        case Errc::EvenNorm: return "EvenNorm";
        case Errc::NotPrimary: return "NotPrimary";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::NotQuarticApplicable: return "NotQuarticApplicable";
        case Errc::NoSolution: return "NoSolution";
        case Errc::BadMatrix: return "BadMatrix";
        case Errc::BadAlpha: return "BadAlpha";
        case Errc::BadTarget: return "BadTarget";
        case Errc::NotInQk: return "NotInQk";
        case Errc::NotInQtilde: return "NotInQtilde";
        case Errc::H8Undefined: return "H8Undefined";
        case Errc::InternalInconsistency: return "InternalInconsistency";
        case Errc::TooLarge: return "TooLarge";
        case Errc::BadDiscriminant: return "BadDiscriminant";
        case Errc::DiscMismatch: return "DiscMismatch";
        case Errc::ResourceLimit: return "ResourceLimit";
        case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

MathError::MathError(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw MathError(code, what); }

}  // namespace congruent
