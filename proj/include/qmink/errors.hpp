// Exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace qmink {

// Malformed input file, literal, or tensor shape.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Metric (or other required matrix) is not invertible.
struct SingularMetricError : std::runtime_error {
    explicit SingularMetricError(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed the degree cutoff D.
struct CutoffError : std::runtime_error {
    explicit CutoffError(const std::string& what) : std::runtime_error(what) {}
};

// A tensor-power or permutation-sum guard was hit.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// The star involution is not well defined on this structure.
struct StarError : std::runtime_error {
    explicit StarError(const std::string& what) : std::runtime_error(what) {}
};

// A well-definedness gate failed; dependent computations must not proceed.
struct GateError : std::runtime_error {
    explicit GateError(const std::string& what) : std::runtime_error(what) {}
};

// Operation requires a structure property that does not hold (e.g. R != flip).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric result failed its reality check.
struct RealityError : std::runtime_error {
    explicit RealityError(const std::string& what) : std::runtime_error(what) {}
};

// Propagator evaluated on the mass shell.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qmink
