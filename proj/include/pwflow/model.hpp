#pragma once

#include <cstddef>
#include <string>

#include "pwflow/errors.hpp"

namespace pwflow {

/// Which governing system a field is verified against.
enum class SystemTag { Euler, NavierStokes, Boussinesq, Forced };

inline std::string to_string(SystemTag s) {
    switch (s) {
        case SystemTag::Euler: return "euler";
        case SystemTag::NavierStokes: return "navier_stokes";
        case SystemTag::Boussinesq: return "boussinesq";
        case SystemTag::Forced: return "forced";
    }
    return "?";
}

/// Physical constants selecting the regime.
///
/// nu = mu = 0 is the inviscid (Euler) regime. The Coriolis parameter f is
/// only meaningful on R^3 where e3 × v is defined. Buoyancy is carried as
/// b = -g (rho - rho_bar)/rho0; g and rho(t,x) appear only inside that
/// definition and are not stored separately. strat is the constant
/// background gradient d(rho_bar)/dz.
struct ModelParams {
    double nu = 0.0;    // kinematic viscosity
    double mu = 0.0;    // buoyancy diffusivity
    double f = 0.0;     // Coriolis parameter (f-plane)
    double rho0 = 1.0;  // reference density
    double strat = 0.0; // d(rho_bar)/dz, negative = stable
    int dim = 3;        // space dimension n >= 2

    void validate() const {
        if (dim < 2) throw invalid_spec("ModelParams: dim must be >= 2");
        if (rho0 <= 0.0) throw invalid_spec("ModelParams: rho0 must be positive");
        if (nu < 0.0 || mu < 0.0) throw invalid_spec("ModelParams: nu, mu must be >= 0");
        if (f != 0.0 && dim != 3)
            throw invalid_spec("ModelParams: Coriolis term requires dim = 3");
    }

    bool inviscid() const { return nu == 0.0 && mu == 0.0; }

    bool operator==(const ModelParams& o) const {
        return nu == o.nu && mu == o.mu && f == o.f && rho0 == o.rho0 && strat == o.strat &&
               dim == o.dim;
    }
};

/// Relative orthogonality tolerance used by every builder: |a·k| below
/// this times |a||k| counts as orthogonal.
inline constexpr double kOrthTol = 1e-12;

} // namespace pwflow
