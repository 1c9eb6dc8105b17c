#pragma once

#include <stdexcept>
#include <string>

namespace prmi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PRMI_DEFINE_ERROR(Name)                                                \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

PRMI_DEFINE_ERROR(InvalidOperator);
PRMI_DEFINE_ERROR(ZeroOperator);
PRMI_DEFINE_ERROR(DimMismatch);
PRMI_DEFINE_ERROR(InvalidExponent);
PRMI_DEFINE_ERROR(UnsupportedOrder);
PRMI_DEFINE_ERROR(DomainViolation);
PRMI_DEFINE_ERROR(SupportMismatch);
PRMI_DEFINE_ERROR(OrthogonalInitializer);
PRMI_DEFINE_ERROR(MonotonicityViolation);
PRMI_DEFINE_ERROR(NotStrictlyPositive);
PRMI_DEFINE_ERROR(TooLarge);
PRMI_DEFINE_ERROR(InvalidConfig);
PRMI_DEFINE_ERROR(ParseError);

#undef PRMI_DEFINE_ERROR

/// Raised when an ingested object violates one of its invariants. `invariant()`
/// names the violated invariant ("trace", "psd", "hermitian", ...).
class ValidationError : public Error {
public:
    ValidationError(std::string invariant, const std::string& detail)
        : Error("ValidationError(" + invariant + "): " + detail),
          invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

}  // namespace prmi
