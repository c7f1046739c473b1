#pragma once

#include "pwflow/flow_field.hpp"

namespace pwflow::testing {

/// Scale every pressure term of a field. Only useful as a mutation control:
/// a correct field with s != 1 must fail verification.
inline FlowField scale_pressure_terms(FlowField f, double s) {
    for (auto& pw : f.p_waves) pw.scale *= s;
    for (auto& pp : f.p_prims) pp.scale *= s;
    for (auto& pp : f.p_prods) pp.coeff *= s;
    f.p_linear *= s;
    return f;
}

} // namespace pwflow::testing
