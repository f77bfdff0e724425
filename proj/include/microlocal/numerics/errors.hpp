#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace microlocal {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature gave up before reaching the requested tolerance.
class NonConvergent : public Error {
public:
    NonConvergent(const std::string& what, double estimate)
        : Error(what), estimate_(estimate) {}
    double error_estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

class InsufficientSamples : public Error {
public:
    using Error::Error;
};

class MomentOverflow : public Error {
public:
    using Error::Error;
};

class StepOverflow : public Error {
public:
    using Error::Error;
};

class EmptySample : public Error {
public:
    using Error::Error;
};

class CertificationFailed : public Error {
public:
    CertificationFailed(const std::string& what, std::string point)
        : Error(what + " at " + point), point_(std::move(point)) {}
    const std::string& point() const noexcept { return point_; }

private:
    std::string point_;
};

class EnvelopeLost : public Error {
public:
    using Error::Error;
};

class BranchCut : public Error {
public:
    using Error::Error;
};

class MaximizerEscaped : public Error {
public:
    using Error::Error;
};

class GridTooNarrow : public Error {
public:
    using Error::Error;
};

class MultiplierOverflow : public Error {
public:
    MultiplierOverflow(const std::string& what, double xi)
        : Error(what), xi_(xi) {}
    double xi() const noexcept { return xi_; }

private:
    double xi_;
};

class BoundaryLeak : public Error {
public:
    using Error::Error;
};

class SolverDiverged : public Error {
public:
    using Error::Error;
};

} // namespace microlocal
