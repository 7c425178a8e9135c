#pragma once

#include <stdexcept>
#include <string>

namespace hnls {

/// Base class for every error raised by the library. `name()` returns the
/// stable error identifier that the command-line tool reports.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define HNLS_DEFINE_ERROR(Type)                                              \
    class Type : public Error {                                              \
    public:                                                                  \
        explicit Type(const std::string& what) : Error(#Type, what) {}       \
    }

/// A branch square root was requested strictly inside its cut.
HNLS_DEFINE_ERROR(BranchCutPoint);
/// A contour truncation radius smaller than the excluded disk.
HNLS_DEFINE_ERROR(InvalidTruncation);
/// An exponential factor exceeds the overflow guard.
HNLS_DEFINE_ERROR(ExponentialOverflow);
/// Contour quadrature coefficients do not decay.
HNLS_DEFINE_ERROR(QuadratureDiverged);
/// A grid is too coarse for the requested stencil.
HNLS_DEFINE_ERROR(GridTooCoarse);
/// A lifespan constant proxy is missing.
HNLS_DEFINE_ERROR(MissingProxy);
/// Picard iteration exhausted its iteration budget.
HNLS_DEFINE_ERROR(NoConvergence);
/// A field expected to satisfy homogeneous boundary conditions does not.
HNLS_DEFINE_ERROR(InhomogeneousBoundary);
/// The finite-difference nonlinear sub-iteration failed to contract.
HNLS_DEFINE_ERROR(StepDiverged);
/// A scenario configuration or argument failed validation.
HNLS_DEFINE_ERROR(ConfigInvalid);

#undef HNLS_DEFINE_ERROR

}  // namespace hnls
