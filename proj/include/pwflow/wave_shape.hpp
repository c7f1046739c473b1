#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "pwflow/errors.hpp"

namespace pwflow {

/// One sinusoidal mode beta * sin(sigma*xi + delta).
struct SineTerm {
    double beta = 1.0;
    double sigma = 1.0; // > 0
    double delta = 0.0;
};

/// Value and exact derivatives of a wave shape at (t, xi).
struct ShapeEval {
    double value = 0.0;
    double d_xi = 0.0;
    double d_xi2 = 0.0;
    double d_t = 0.0;
};

/// 1D wave profile psi(t, xi) with exact derivatives.
///
/// With decay coefficient kappa > 0 the closed-form variants are exact
/// solutions of the heat equation d_t psi = kappa * d_xi^2 psi. kappa is
/// assigned by the flow builders (nu|k|^2 for velocity shapes, mu|k|^2 for
/// buoyancy shapes) so a shape cannot disagree with its wave vector.
///
/// Variants:
///   - sine / fourier: beta e^{-kappa sigma^2 t} sin(sigma xi + delta)
///   - gaussian: heat kernel of mass `mass`, width^2(t) = w0^2 + 2 kappa t
///   - profile: arbitrary C^2 function of xi, inviscid only (kappa = 0)
class WaveShape {
public:
    struct Profile {
        std::function<double(double)> value, d1, d2;
    };

    static WaveShape sine(double beta, double sigma, double delta) {
        if (sigma <= 0.0) throw structural_error("WaveShape::sine: sigma must be > 0");
        WaveShape s;
        s.body_ = std::vector<SineTerm>{{beta, sigma, delta}};
        return s;
    }
    static WaveShape fourier(std::vector<SineTerm> terms) {
        if (terms.empty()) throw structural_error("WaveShape::fourier: no terms");
        for (const auto& m : terms)
            if (m.sigma <= 0.0) throw structural_error("WaveShape::fourier: sigma must be > 0");
        WaveShape s;
        s.body_ = std::move(terms);
        return s;
    }
    static WaveShape gaussian(double mass, double width0) {
        if (width0 <= 0.0) throw structural_error("WaveShape::gaussian: width0 must be > 0");
        WaveShape s;
        s.body_ = Gaussian{mass, width0};
        return s;
    }
    static WaveShape profile(Profile p) {
        if (!p.value || !p.d1 || !p.d2)
            throw structural_error("WaveShape::profile: value, d1, d2 all required");
        WaveShape s;
        s.body_ = std::move(p);
        return s;
    }

    /// Copy with the heat decay coefficient set. Arbitrary profiles are not
    /// heat solutions, so kappa > 0 on a profile is a regime error.
    WaveShape with_decay(double kappa) const {
        if (kappa < 0.0) throw structural_error("WaveShape: kappa must be >= 0");
        if (kappa > 0.0 && std::holds_alternative<Profile>(body_))
            throw regime_error("WaveShape: arbitrary profile requires the inviscid regime (kappa = 0)");
        WaveShape s = *this;
        s.kappa_ = kappa;
        return s;
    }

    double kappa() const { return kappa_; }

    bool is_profile() const { return std::holds_alternative<Profile>(body_); }
    bool is_sinusoidal() const { return std::holds_alternative<std::vector<SineTerm>>(body_); }
    const std::vector<SineTerm>& sine_terms() const {
        return std::get<std::vector<SineTerm>>(body_);
    }

    /// True when the shape is a single sine with sigma = 1 (the only shape
    /// admitted by the interacting families).
    bool is_unit_sine() const {
        if (!is_sinusoidal()) return false;
        const auto& t = sine_terms();
        return t.size() == 1 && t[0].sigma == 1.0;
    }

    ShapeEval eval(double t, double xi) const {
        ShapeEval r;
        if (const auto* terms = std::get_if<std::vector<SineTerm>>(&body_)) {
            for (const SineTerm& m : *terms) {
                const double env = std::exp(-kappa_ * m.sigma * m.sigma * t);
                const double arg = m.sigma * xi + m.delta;
                const double s = std::sin(arg), c = std::cos(arg);
                r.value += m.beta * env * s;
                r.d_xi += m.beta * env * m.sigma * c;
                r.d_xi2 += -m.beta * env * m.sigma * m.sigma * s;
                r.d_t += -kappa_ * m.sigma * m.sigma * m.beta * env * s;
            }
        } else if (const auto* g = std::get_if<Gaussian>(&body_)) {
            const double s2 = g->width0 * g->width0 + 2.0 * kappa_ * t;
            if (s2 <= 0.0) throw structural_error("WaveShape::gaussian: width^2(t) <= 0");
            const double v = g->mass / std::sqrt(2.0 * M_PI * s2) * std::exp(-xi * xi / (2.0 * s2));
            r.value = v;
            r.d_xi = -(xi / s2) * v;
            r.d_xi2 = (xi * xi / (s2 * s2) - 1.0 / s2) * v;
            r.d_t = kappa_ * r.d_xi2;
        } else {
            const auto& p = std::get<Profile>(body_);
            r.value = p.value(xi);
            r.d_xi = p.d1(xi);
            r.d_xi2 = p.d2(xi);
            r.d_t = 0.0;
        }
        return r;
    }

    double value(double t, double xi) const { return eval(t, xi).value; }

    bool has_primitive() const { return !std::holds_alternative<Profile>(body_); }

    /// Antiderivative in xi (integration constant zero), used for the
    /// Coriolis pressure term and the buoyancy pressure primitive.
    double primitive(double t, double xi) const {
        if (const auto* terms = std::get_if<std::vector<SineTerm>>(&body_)) {
            double p = 0.0;
            for (const SineTerm& m : *terms) {
                const double env = std::exp(-kappa_ * m.sigma * m.sigma * t);
                p += -(m.beta / m.sigma) * env * std::cos(m.sigma * xi + m.delta);
            }
            return p;
        }
        if (const auto* g = std::get_if<Gaussian>(&body_)) {
            const double s2 = g->width0 * g->width0 + 2.0 * kappa_ * t;
            return 0.5 * g->mass * std::erf(xi / std::sqrt(2.0 * s2));
        }
        throw invalid_spec("WaveShape: no closed-form primitive for an arbitrary profile");
    }

private:
    struct Gaussian {
        double mass = 1.0;
        double width0 = 1.0;
    };

    WaveShape() = default;
    std::variant<std::vector<SineTerm>, Gaussian, Profile> body_ =
        std::vector<SineTerm>{{1.0, 1.0, 0.0}};
    double kappa_ = 0.0;
};

/// Evaluate a shape and its derivatives at (t, xi).
inline ShapeEval shape_eval(const WaveShape& shape, double t, double xi) {
    return shape.eval(t, xi);
}

} // namespace pwflow
