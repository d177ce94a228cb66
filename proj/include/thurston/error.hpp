#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thurston {

/// Failure categories reported by the library. The CLI prints the name and
/// maps every code to exit status 2 except the semantically negative ones.
enum class Errc {
    // ring
    ParseError,
    NotPrime,
    ReduciblePolynomial,
    ModulusTooSmall,
    RingTooLarge,
    RingMismatch,
    NotAUnit,
    // complex
    SyntaxError,
    NonInvolutiveGluing,
    EvenPermutation,
    FaceReused,
    FaceNotFree,
    EdgeNotInterior,
    InvalidPath,
    UnknownFixture,
    // cross_ratio
    FormNotUnit,
    NotAdmissible,
    // equations
    NotAShape,
    MissingQuadValue,
    InvalidSolution,
    NonUnitValue,
    NotAnHTESolution,
    // developing
    NotUnitHTE,
    ConventionViolation,
    // pachner
    InvalidSite,
    NotInLocalization,
    CorrespondenceMismatch,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace thurston
