#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace congruent {

enum class Errc {
    NotOdd,
    NotPrime,
    EvenNorm,
    NotPrimary,
    NotCoprime,
    NotQuarticApplicable,
    NoSolution,
    BadMatrix,
    BadAlpha,
    BadTarget,
    NotInQk,
    NotInQtilde,
    H8Undefined,
    InternalInconsistency,
    TooLarge,
    BadDiscriminant,
    DiscMismatch,
    ResourceLimit,
    BadInput,
};

std::string_view errc_name(Errc code) noexcept;

/// Every precondition failure in the library surfaces as a MathError carrying
/// the error kind; callers that care (the CLI's exit codes) switch on code().
class MathError : public std::runtime_error {
  public:
    MathError(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace congruent
