#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "pwflow/flow_field.hpp"

namespace pwflow {

/// Exact analytic jet of a flow field at (t, x).
inline FieldJet eval_jet(const FlowField& field, double t, const Vec& x) {
    return field.jet(t, x);
}

/// Second-order finite-difference jet. Uses only the value evaluators
/// velocity/pressure/buoyancy, so it is an oracle independent of the
/// analytic derivative path. Time derivatives switch to a one-sided
/// second-order stencil when t < h to stay inside t >= 0.
inline FieldJet fd_jet(const FlowField& field, double t, const Vec& x, double h) {
    if (h <= 0.0) throw structural_error("fd_jet: step must be positive");
    const std::size_t n = field.dim();
    FieldJet J(n);

    J.v.value = field.velocity(t, x);
    J.p = field.pressure(t, x);
    J.b.value = field.buoyancy(t, x);

    // time derivatives
    if (t >= h) {
        const Vec vp = field.velocity(t + h, x), vm = field.velocity(t - h, x);
        for (std::size_t i = 0; i < n; ++i) J.v.time_deriv[i] = (vp[i] - vm[i]) / (2.0 * h);
        J.b.time_deriv = (field.buoyancy(t + h, x) - field.buoyancy(t - h, x)) / (2.0 * h);
    } else {
        const Vec v1 = field.velocity(t + h, x), v2 = field.velocity(t + 2.0 * h, x);
        for (std::size_t i = 0; i < n; ++i)
            J.v.time_deriv[i] = (-3.0 * J.v.value[i] + 4.0 * v1[i] - v2[i]) / (2.0 * h);
        J.b.time_deriv = (-3.0 * J.b.value + 4.0 * field.buoyancy(t + h, x) -
                          field.buoyancy(t + 2.0 * h, x)) /
                         (2.0 * h);
    }

    // spatial derivatives, one axis at a time
    for (std::size_t j = 0; j < n; ++j) {
        Vec xp = x, xm = x;
        xp[j] += h;
        xm[j] -= h;
        const Vec vp = field.velocity(t, xp), vm = field.velocity(t, xm);
        for (std::size_t i = 0; i < n; ++i) {
            J.v.gradient(i, j) = (vp[i] - vm[i]) / (2.0 * h);
            J.v.laplacian[i] += (vp[i] - 2.0 * J.v.value[i] + vm[i]) / (h * h);
        }
        J.grad_p[j] = (field.pressure(t, xp) - field.pressure(t, xm)) / (2.0 * h);
        const double bp = field.buoyancy(t, xp), bm = field.buoyancy(t, xm);
        J.b.gradient[j] = (bp - bm) / (2.0 * h);
        J.b.laplacian += (bp - 2.0 * J.b.value + bm) / (h * h);
    }
    return J;
}

/// fd_jet with the default step policy: 1e-4 scaled by the magnitude of
/// the coordinate being varied.
inline FieldJet fd_jet(const FlowField& field, double t, const Vec& x) {
    double scale = std::max(1.0, std::abs(t));
    for (std::size_t i = 0; i < x.size(); ++i) scale = std::max(scale, std::abs(x[i]));
    return fd_jet(field, t, x, 1e-4 * scale);
}

/// (v·∇)v from the analytic jet.
inline Vec advective_term(const FlowField& field, double t, const Vec& x) {
    const FieldJet J = field.jet(t, x);
    return J.v.gradient.apply(J.v.value);
}

/// ∇·v, the trace of the analytic velocity gradient.
inline double divergence(const FlowField& field, double t, const Vec& x) {
    return field.jet(t, x).v.gradient.trace();
}

enum class GradientKind { Zero, Gradient, NotGradient };

struct GradientTestResult {
    GradientKind kind = GradientKind::Zero;
    double witness_t = 0.0;
    Vec witness_x;
    double worst_antisym = 0.0; // largest antisymmetric Jacobian entry seen
    double sup_norm = 0.0;      // largest field magnitude seen
};

/// Decide whether a smooth vector field on R^n is a gradient by testing
/// Jacobian symmetry (central differences, step h_j) at the given samples.
/// Returns Zero when the field itself is below tol everywhere.
inline GradientTestResult is_gradient_field(
    const std::function<Vec(double, const Vec&)>& field,
    const std::vector<std::pair<double, Vec>>& samples, double tol, double h_scale = 1e-5) {
    if (samples.empty()) throw structural_error("is_gradient_field: empty sample");

    GradientTestResult res;
    const std::size_t n = samples.front().second.size();

    // sup norm pass
    for (const auto& [t, x] : samples) res.sup_norm = std::max(res.sup_norm, field(t, x).max_abs());
    if (res.sup_norm <= tol) {
        res.kind = GradientKind::Zero;
        return res;
    }

    res.kind = GradientKind::Gradient;
    for (const auto& [t, x] : samples) {
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(x[i]));
        const double h = h_scale * scale;

        Mat jac(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Vec xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            const Vec fp = field(t, xp), fm = field(t, xm);
            for (std::size_t i = 0; i < n; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
        }
        double antisym = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                antisym = std::max(antisym, 0.5 * std::abs(jac(i, j) - jac(j, i)));
        if (antisym > res.worst_antisym) {
            res.worst_antisym = antisym;
            res.witness_t = t;
            res.witness_x = x;
        }
        if (antisym > tol * (1.0 + jac.max_abs())) res.kind = GradientKind::NotGradient;
    }
    return res;
}

} // namespace pwflow
