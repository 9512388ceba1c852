// Exact identity suite for the differential operators and the exterior
// algebra, exercised on the monomial basis and on seeded random polynomials.
#pragma once

#include <cstdint>
#include <optional>

#include "qmink/operators.hpp"

namespace qmink {

struct IdentitySuiteOptions {
    int max_degree = 4;       // monomial-basis identities run through this degree
    std::uint64_t seed = 42;  // for randomized polynomial cases
    bool with_exterior = true;
};

/// Runs the operator and exterior-algebra identities on one structure.
/// Identities whose stated metric hypotheses fail on this structure are
/// reported as skipped, with the failing hypothesis as the witness. When the
/// calculus well-definedness gate fails the report contains that single
/// failing entry.
ValidationReport identity_suite(const StructureData& sd, const std::optional<GammaSet>& gammas,
                                const IdentitySuiteOptions& opts = {});

/// Tries to supply gamma matrices for the suite: the ones embedded in the
/// structure file if present, else the classical construction when R = tau
/// and the metric allows it.
std::optional<GammaSet> default_gammas(const StructureData& sd);

} // namespace qmink
