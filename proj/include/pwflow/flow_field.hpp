#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pwflow/model.hpp"
#include "pwflow/vec.hpp"
#include "pwflow/wave_shape.hpp"

namespace pwflow {

enum class FlowFamily {
    Transverse,
    InteractingTransverse,
    HorizontalPlane,
    InteractingHorizontal,
    Kolmogorov,
    MGW,
    ParallelBoussinesq,
    ParallelAugmented,
    Integral,
    Forced,
    Superposition,
    NegativeControl,
};

inline std::string to_string(FlowFamily f) {
    switch (f) {
        case FlowFamily::Transverse: return "transverse";
        case FlowFamily::InteractingTransverse: return "interacting_transverse";
        case FlowFamily::HorizontalPlane: return "horizontal_plane";
        case FlowFamily::InteractingHorizontal: return "interacting_horizontal";
        case FlowFamily::Kolmogorov: return "kolmogorov";
        case FlowFamily::MGW: return "mgw";
        case FlowFamily::ParallelBoussinesq: return "parallel_boussinesq";
        case FlowFamily::ParallelAugmented: return "parallel_augmented";
        case FlowFamily::Integral: return "integral";
        case FlowFamily::Forced: return "forced";
        case FlowFamily::Superposition: return "superposition";
        case FlowFamily::NegativeControl: return "negative_control";
    }
    return "?";
}

/// One traveling factor psi(t, k·x - omega t), optionally multiplied by the
/// Duhamel envelope r(t) = (1 - e^{-rate t})/rate (r(t) = t when rate = 0).
/// The envelope carries the particular solution of forced modes; unforced
/// terms leave it unset (r identically 1).
struct WaveTerm {
    Vec k;
    double omega = 0.0;
    WaveShape shape = WaveShape::sine(1.0, 1.0, 0.0);
    std::optional<double> duhamel_rate;

    double envelope(double t) const {
        if (!duhamel_rate) return 1.0;
        const double r = *duhamel_rate;
        return r > 0.0 ? -std::expm1(-r * t) / r : t;
    }
    double envelope_dt(double t) const {
        if (!duhamel_rate) return 0.0;
        return std::exp(-*duhamel_rate * t);
    }
    double phase(double t, const Vec& x) const { return dot(k, x) - omega * t; }
};

/// Plane-wave velocity contribution a * psi(t, k·x - omega t).
struct VelocityWave {
    Vec a;
    WaveTerm w;
};

/// Scalar plane-wave contribution scale * psi(...), for pressure or buoyancy.
struct ScalarWave {
    double scale = 1.0;
    WaveTerm w;
};

/// Pressure contribution scale * Psi(t, k·x - omega t) where dPsi/dxi = psi.
struct PrimitiveWave {
    double scale = 1.0;
    WaveTerm w;
};

/// Pressure contribution coeff * g(f1) * g(f2) where g is the shape value
/// (derivative_factors = false) or its xi-derivative (true). These carry the
/// interaction potential h of the equal-wavelength families.
struct ProductPressure {
    double coeff = 1.0;
    WaveTerm f1, f2;
    bool derivative_factors = false;
};

/// One horizontal Fourier mode of the vertical parallel flow, coupled to
/// buoyancy: (w_hat, b_hat)(t) = exp(tA) (w0, b0) with
/// A = [[-nu kappa^2, 1], [strat, -mu kappa^2]], kappa = |k2|.
struct ParallelMode {
    double k1 = 0.0, k2 = 0.0; // horizontal wave vector
    double w0 = 0.0, b0 = 0.0; // initial vertical velocity / buoyancy amplitude
};

/// Exponentially propagated amplitudes of one parallel mode and their exact
/// time derivatives (from the ODE itself).
struct ParallelState {
    double w = 0.0, b = 0.0, w_dot = 0.0, b_dot = 0.0;
};

inline ParallelState parallel_mode_state(const ParallelMode& m, const ModelParams& p, double t) {
    const double ksq = m.k1 * m.k1 + m.k2 * m.k2;
    const double s = -0.5 * (p.nu + p.mu) * ksq;     // mean decay rate
    const double n11 = 0.5 * (p.mu - p.nu) * ksq;    // traceless part of A
    const double disc = n11 * n11 + p.strat;         // N^2 = disc * I

    double c, d; // exp(t N) = c I + d N
    const double z = disc * t * t;
    if (std::abs(z) < 1e-6) {
        // series through z^2; covers the defective (repeated eigenvalue) case
        c = 1.0 + z / 2.0 + z * z / 24.0;
        d = t * (1.0 + z / 6.0 + z * z / 120.0);
    } else if (disc > 0.0) {
        const double r = std::sqrt(disc);
        c = std::cosh(r * t);
        d = std::sinh(r * t) / r;
    } else {
        const double r = std::sqrt(-disc);
        c = std::cos(r * t);
        d = std::sin(r * t) / r;
    }

    const double e = std::exp(s * t);
    ParallelState st;
    st.w = e * (c * m.w0 + d * (n11 * m.w0 + m.b0));
    st.b = e * (c * m.b0 + d * (p.strat * m.w0 - n11 * m.b0));
    st.w_dot = -p.nu * ksq * st.w + st.b;
    st.b_dot = p.strat * st.w - p.mu * ksq * st.b;
    return st;
}

/// Builder metadata kept on interacting transverse fields so parallel-flow
/// components can be attached later.
struct InteractingMeta {
    struct Component {
        double phi = 0.0, beta = 0.0, delta = 0.0;
    };
    struct Subspace {
        Vec e1, e2;
        double lambda = 1.0;
        std::vector<Component> comps;
    };
    std::vector<Subspace> subspaces;
    Vec drift;
};

/// Jet of a vector quantity: value, time derivative, gradient (rows =
/// components, columns = space directions) and componentwise Laplacian.
struct VecJet {
    Vec value, time_deriv, laplacian;
    Mat gradient;
    explicit VecJet(std::size_t n = 0)
        : value(n), time_deriv(n), laplacian(n), gradient(n, n) {}
};

struct ScalarJet {
    double value = 0.0, time_deriv = 0.0, laplacian = 0.0;
    Vec gradient;
    explicit ScalarJet(std::size_t n = 0) : gradient(n) {}
};

/// Full space-time jet of a flow field at one point.
struct FieldJet {
    VecJet v;
    double p = 0.0;
    Vec grad_p;
    ScalarJet b;
    explicit FieldJet(std::size_t n = 0) : v(n), grad_p(n), b(n) {}
};

/// An evaluable explicit solution (v, p, b) with exact analytic space-time
/// jets, assembled from plane-wave terms. Immutable after construction; all
/// evaluators are pure and safe to call concurrently.
class FlowField {
    // declared first: the public term containers below are sized from n_
    std::size_t n_;
    ModelParams params_;
    FlowFamily family_;
    SystemTag system_;

public:
    explicit FlowField(int n, ModelParams params, FlowFamily family, SystemTag system)
        : n_(static_cast<std::size_t>(n)),
          params_(std::move(params)),
          family_(family),
          system_(system),
          drift(n_),
          p_linear(n_) {}

    std::size_t dim() const { return n_; }
    const ModelParams& params() const { return params_; }
    FlowFamily family() const { return family_; }
    SystemTag system() const { return system_; }
    void set_family(FlowFamily f) { family_ = f; }
    void set_system(SystemTag s) { system_ = s; }

    // --- term containers (filled by builders, then treated as read-only) ---
    Vec drift;
    std::vector<VelocityWave> vel_waves;
    std::vector<ParallelMode> parallel_modes;
    std::vector<ScalarWave> p_waves;
    std::vector<PrimitiveWave> p_prims;
    std::vector<ProductPressure> p_prods;
    Vec p_linear; // contributes p_linear · x
    std::vector<ScalarWave> b_waves;
    double b_const = 0.0;
    std::vector<VelocityWave> forcing_waves; // momentum forcing F(t, x)

    // --- metadata ---
    bool non_solution = false;
    std::string broken_invariant;   // for negative controls
    std::string expected_channel;   // residual channel expected to blow up
    bool stationary_compatible = true;
    std::optional<double> required_strat;
    bool unbounded_growth = false;
    std::optional<InteractingMeta> interacting;
    std::string label;

    // --- evaluation ---

    Vec velocity(double t, const Vec& x) const {
        check_point(x);
        Vec v = drift;
        for (const VelocityWave& vw : vel_waves) {
            const double s = vw.w.envelope(t) * vw.w.shape.value(t, vw.w.phase(t, x));
            for (std::size_t i = 0; i < n_; ++i) v[i] += vw.a[i] * s;
        }
        if (!parallel_modes.empty()) {
            double w = 0.0;
            for (const ParallelMode& m : parallel_modes)
                w += parallel_mode_state(m, params_, t).w * std::cos(m.k1 * x[0] + m.k2 * x[1]);
            v[2] += w;
        }
        return v;
    }

    double pressure(double t, const Vec& x) const {
        check_point(x);
        double p = dot(p_linear, x);
        for (const ScalarWave& sw : p_waves)
            p += sw.scale * sw.w.envelope(t) * sw.w.shape.value(t, sw.w.phase(t, x));
        for (const PrimitiveWave& pw : p_prims)
            p += pw.scale * pw.w.envelope(t) * pw.w.shape.primitive(t, pw.w.phase(t, x));
        for (const ProductPressure& pp : p_prods) {
            const ShapeEval e1 = pp.f1.shape.eval(t, pp.f1.phase(t, x));
            const ShapeEval e2 = pp.f2.shape.eval(t, pp.f2.phase(t, x));
            const double g1 = pp.derivative_factors ? e1.d_xi : e1.value;
            const double g2 = pp.derivative_factors ? e2.d_xi : e2.value;
            p += pp.coeff * pp.f1.envelope(t) * pp.f2.envelope(t) * g1 * g2;
        }
        return p;
    }

    double buoyancy(double t, const Vec& x) const {
        check_point(x);
        double b = b_const;
        for (const ScalarWave& sw : b_waves)
            b += sw.scale * sw.w.envelope(t) * sw.w.shape.value(t, sw.w.phase(t, x));
        for (const ParallelMode& m : parallel_modes)
            b += parallel_mode_state(m, params_, t).b * std::cos(m.k1 * x[0] + m.k2 * x[1]);
        return b;
    }

    Vec forcing_at(double t, const Vec& x) const {
        Vec f(n_);
        for (const VelocityWave& vw : forcing_waves) {
            const double s = vw.w.envelope(t) * vw.w.shape.value(t, vw.w.phase(t, x));
            for (std::size_t i = 0; i < n_; ++i) f[i] += vw.a[i] * s;
        }
        return f;
    }

    bool has_forcing() const { return !forcing_waves.empty(); }

    /// Exact analytic jet; every derivative is assembled by the chain rule
    /// over xi = k·x - omega t from the shape derivatives.
    FieldJet jet(double t, const Vec& x) const {
        check_point(x);
        FieldJet J(n_);
        J.v.value = drift;

        for (const VelocityWave& vw : vel_waves) {
            const WaveTerm& w = vw.w;
            const ShapeEval e = w.shape.eval(t, w.phase(t, x));
            const double R = w.envelope(t), Rdot = w.envelope_dt(t);
            const double ksq = w.k.norm_sq();
            const double val = R * e.value;
            const double dt = Rdot * e.value + R * (e.d_t - w.omega * e.d_xi);
            const double dxi = R * e.d_xi;
            const double lap = R * e.d_xi2 * ksq;
            for (std::size_t i = 0; i < n_; ++i) {
                J.v.value[i] += vw.a[i] * val;
                J.v.time_deriv[i] += vw.a[i] * dt;
                J.v.laplacian[i] += vw.a[i] * lap;
                for (std::size_t j = 0; j < n_; ++j) J.v.gradient(i, j) += vw.a[i] * dxi * w.k[j];
            }
        }

        for (const ParallelMode& m : parallel_modes) {
            const ParallelState st = parallel_mode_state(m, params_, t);
            const double arg = m.k1 * x[0] + m.k2 * x[1];
            const double c = std::cos(arg), s = std::sin(arg);
            const double ksq = m.k1 * m.k1 + m.k2 * m.k2;
            J.v.value[2] += st.w * c;
            J.v.time_deriv[2] += st.w_dot * c;
            J.v.laplacian[2] += -ksq * st.w * c;
            J.v.gradient(2, 0) += -st.w * s * m.k1;
            J.v.gradient(2, 1) += -st.w * s * m.k2;
            J.b.value += st.b * c;
            J.b.time_deriv += st.b_dot * c;
            J.b.laplacian += -ksq * st.b * c;
            J.b.gradient[0] += -st.b * s * m.k1;
            J.b.gradient[1] += -st.b * s * m.k2;
        }

        J.p = dot(p_linear, x);
        J.grad_p = p_linear;
        for (const ScalarWave& sw : p_waves) {
            const WaveTerm& w = sw.w;
            const ShapeEval e = w.shape.eval(t, w.phase(t, x));
            const double R = w.envelope(t);
            J.p += sw.scale * R * e.value;
            for (std::size_t j = 0; j < n_; ++j) J.grad_p[j] += sw.scale * R * e.d_xi * w.k[j];
        }
        for (const PrimitiveWave& pw : p_prims) {
            const WaveTerm& w = pw.w;
            const double xi = w.phase(t, x);
            const double R = w.envelope(t);
            J.p += pw.scale * R * w.shape.primitive(t, xi);
            const double val = w.shape.value(t, xi);
            for (std::size_t j = 0; j < n_; ++j) J.grad_p[j] += pw.scale * R * val * w.k[j];
        }
        for (const ProductPressure& pp : p_prods) {
            const ShapeEval e1 = pp.f1.shape.eval(t, pp.f1.phase(t, x));
            const ShapeEval e2 = pp.f2.shape.eval(t, pp.f2.phase(t, x));
            const double R = pp.f1.envelope(t) * pp.f2.envelope(t);
            const double g1 = pp.derivative_factors ? e1.d_xi : e1.value;
            const double g2 = pp.derivative_factors ? e2.d_xi : e2.value;
            const double d1 = pp.derivative_factors ? e1.d_xi2 : e1.d_xi;
            const double d2 = pp.derivative_factors ? e2.d_xi2 : e2.d_xi;
            J.p += pp.coeff * R * g1 * g2;
            for (std::size_t j = 0; j < n_; ++j)
                J.grad_p[j] += pp.coeff * R * (d1 * g2 * pp.f1.k[j] + g1 * d2 * pp.f2.k[j]);
        }

        J.b.value += b_const;
        for (const ScalarWave& sw : b_waves) {
            const WaveTerm& w = sw.w;
            const ShapeEval e = w.shape.eval(t, w.phase(t, x));
            const double R = w.envelope(t), Rdot = w.envelope_dt(t);
            const double ksq = w.k.norm_sq();
            J.b.value += sw.scale * R * e.value;
            J.b.time_deriv += sw.scale * (Rdot * e.value + R * (e.d_t - w.omega * e.d_xi));
            J.b.laplacian += sw.scale * R * e.d_xi2 * ksq;
            for (std::size_t j = 0; j < n_; ++j) J.b.gradient[j] += sw.scale * R * e.d_xi * w.k[j];
        }
        return J;
    }

private:
    void check_point(const Vec& x) const {
        if (x.size() != n_)
            throw structural_error("FlowField: point dimension " + std::to_string(x.size()) +
                                   " does not match field dimension " + std::to_string(n_));
    }
};

} // namespace pwflow
