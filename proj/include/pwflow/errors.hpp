#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pwflow {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, empty samples, bad shapes.
/// Distinct from a constraint violation on otherwise well-formed input.
struct structural_error : error {
    using error::error;
};

/// A flow specification violates a family constraint (orthogonality,
/// wavelength, subspace membership, ...).
struct invalid_spec : error {
    using error::error;
};

/// Parameter combination outside the regime a construction is valid in
/// (e.g. arbitrary wave profiles with nonzero viscosity).
struct regime_error : invalid_spec {
    using invalid_spec::invalid_spec;
};

/// Superposition rejected: a cross advective term neither vanishes nor is
/// covered by a supported closed form. Carries a witness point.
struct incompatibility_error : error {
    incompatibility_error(const std::string& msg, std::size_t field_a, std::size_t field_b,
                          double witness_t, std::vector<double> witness_x, double magnitude)
        : error(msg),
          pair_a(field_a),
          pair_b(field_b),
          t(witness_t),
          x(std::move(witness_x)),
          cross_magnitude(magnitude) {}

    std::size_t pair_a, pair_b;
    double t;
    std::vector<double> x;
    double cross_magnitude;
};

/// File / stream problems in the CLI layer.
struct io_error : error {
    using error::error;
};

} // namespace pwflow
