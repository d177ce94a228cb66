#include "thurston/error.hpp"

namespace thurston {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReduciblePolynomial: return "ReduciblePolynomial";
    case Errc::ModulusTooSmall: return "ModulusTooSmall";
    case Errc::RingTooLarge: return "RingTooLarge";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NonInvolutiveGluing: return "NonInvolutiveGluing";
    case Errc::EvenPermutation: return "EvenPermutation";
    case Errc::FaceReused: return "FaceReused";
    case Errc::FaceNotFree: return "FaceNotFree";
    case Errc::EdgeNotInterior: return "EdgeNotInterior";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::UnknownFixture: return "UnknownFixture";
    case Errc::FormNotUnit: return "FormNotUnit";
    case Errc::NotAdmissible: return "NotAdmissible";
    case Errc::NotAShape: return "NotAShape";
    case Errc::MissingQuadValue: return "MissingQuadValue";
    case Errc::InvalidSolution: return "InvalidSolution";
    case Errc::NonUnitValue: return "NonUnitValue";
    case Errc::NotAnHTESolution: return "NotAnHTESolution";
    case Errc::NotUnitHTE: return "NotUnitHTE";
    case Errc::ConventionViolation: return "ConventionViolation";
    case Errc::InvalidSite: return "InvalidSite";
    case Errc::NotInLocalization: return "NotInLocalization";
    case Errc::CorrespondenceMismatch: return "CorrespondenceMismatch";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

} // namespace thurston
