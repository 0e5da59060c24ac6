#pragma once

#include <stdexcept>
#include <string>

namespace gthermo {

// Every library failure derives from Error so callers can catch one type and
// dispatch on kind() when they need the category (the CLI maps it to exit codes).
enum class ErrorKind {
    NonPhysical,
    NumericalDomain,
    Domain,
    CorrelationBound,
    UnknownScenario,
    TruncationOverflow,
    EnvelopeExceeded,
    CoherentSystemSignal,
    DegenerateEntropy,
    Validation,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class ErrorOf : public Error {
public:
    explicit ErrorOf(const std::string& what) : Error(K, what) {}
};

using NonPhysical = ErrorOf<ErrorKind::NonPhysical>;
using NumericalDomain = ErrorOf<ErrorKind::NumericalDomain>;
using DomainError = ErrorOf<ErrorKind::Domain>;
using CorrelationBoundViolation = ErrorOf<ErrorKind::CorrelationBound>;
using UnknownScenario = ErrorOf<ErrorKind::UnknownScenario>;
using TruncationOverflow = ErrorOf<ErrorKind::TruncationOverflow>;
using EnvelopeExceeded = ErrorOf<ErrorKind::EnvelopeExceeded>;
using CoherentSystemSignal = ErrorOf<ErrorKind::CoherentSystemSignal>;
using DegenerateEntropy = ErrorOf<ErrorKind::DegenerateEntropy>;
using ValidationError = ErrorOf<ErrorKind::Validation>;

}  // namespace gthermo
