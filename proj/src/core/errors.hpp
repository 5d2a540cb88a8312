#pragma once

#include <stdexcept>
#include <string>

namespace btn1d {

/// Common base for everything this library throws, so callers (and the C API
/// shim) can map failures to stable codes.
class SolverError : public std::runtime_error {
public:
    enum class Code {
        InvalidArgument,
        DomainViolation,
        NotPointwise,
        NonPositiveDiffusivity,
        SingularStage,
        ZeroReference,
        TouchdownInStudy,
    };

    SolverError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

/// A bad parameter or malformed configuration, detected before any stepping.
class InvalidArgument : public SolverError {
public:
    explicit InvalidArgument(const std::string& what)
        : SolverError(Code::InvalidArgument, what) {}
};

/// The simulation asked for Phi'' outside the entropy's admissible domain
/// (e.g. u <= -1 for the Fisher variant). Signals that the trajectory has
/// left the entropy's validity region.
class DomainViolation : public SolverError {
public:
    explicit DomainViolation(const std::string& what)
        : SolverError(Code::DomainViolation, what) {}
};

/// Pointwise evaluation requested of a measure-valued source; only its
/// primitive is defined.
class NotPointwise : public SolverError {
public:
    explicit NotPointwise(const std::string& what) : SolverError(Code::NotPointwise, what) {}
};

/// A diffusivity value <= 0 reached a kernel that divides by it.
class NonPositiveDiffusivity : public SolverError {
public:
    explicit NonPositiveDiffusivity(const std::string& what)
        : SolverError(Code::NonPositiveDiffusivity, what) {}
};

/// An implicit stage denominator vanished: the time step is too large for the
/// local multiplier. The step result must not be used.
class SingularStage : public SolverError {
public:
    explicit SingularStage(const std::string& what)
        : SolverError(Code::SingularStage, what) {}
};

/// Relative error against a reference with zero norm is undefined.
class ZeroReference : public SolverError {
public:
    explicit ZeroReference(const std::string& what)
        : SolverError(Code::ZeroReference, what) {}
};

/// A convergence study aborted because one of its runs lost positivity
/// before reaching the final time.
class TouchdownInStudy : public SolverError {
public:
    explicit TouchdownInStudy(const std::string& what)
        : SolverError(Code::TouchdownInStudy, what) {}
};

} // namespace btn1d
