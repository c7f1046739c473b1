#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "pwflow/boussinesq.hpp"
#include "pwflow/flows.hpp"
#include "pwflow/forcing.hpp"
#include "pwflow/residuals.hpp"

namespace pwflow {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// JSON -> domain objects
// ---------------------------------------------------------------------------

namespace cfg {

inline Vec parse_vec(const ordered_json& j, const char* what) {
    if (!j.is_array()) throw invalid_spec(std::string("config: ") + what + " must be an array");
    std::vector<double> v;
    for (const auto& e : j) v.push_back(e.get<double>());
    return Vec(std::move(v));
}

inline std::array<double, 2> parse_vec2(const ordered_json& j, const char* what) {
    const Vec v = parse_vec(j, what);
    if (v.size() != 2) throw invalid_spec(std::string("config: ") + what + " must have 2 entries");
    return {v[0], v[1]};
}

inline WaveShape parse_shape(const ordered_json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "sine")
        return WaveShape::sine(j.value("beta", 1.0), j.value("sigma", 1.0), j.value("delta", 0.0));
    if (type == "fourier") {
        std::vector<SineTerm> terms;
        for (const auto& m : j.at("modes"))
            terms.push_back({m.value("beta", 1.0), m.value("sigma", 1.0), m.value("delta", 0.0)});
        return WaveShape::fourier(std::move(terms));
    }
    if (type == "gaussian") return WaveShape::gaussian(j.value("mass", 1.0), j.value("width0", 1.0));
    throw invalid_spec("config: unknown shape type '" + type + "'");
}

inline ModelParams parse_params(const ordered_json& j) {
    ModelParams p;
    p.nu = j.value("nu", 0.0);
    p.mu = j.value("mu", 0.0);
    p.f = j.value("f", 0.0);
    p.rho0 = j.value("rho0", 1.0);
    p.strat = j.value("strat", 0.0);
    p.dim = j.value("dim", 3);
    p.validate();
    return p;
}

inline SystemTag parse_system(const std::string& s) {
    if (s == "euler") return SystemTag::Euler;
    if (s == "navier_stokes") return SystemTag::NavierStokes;
    if (s == "boussinesq") return SystemTag::Boussinesq;
    if (s == "forced") return SystemTag::Forced;
    throw invalid_spec("config: unknown system '" + s + "'");
}

inline TransverseSpec parse_transverse(const ordered_json& j, const ModelParams& params) {
    TransverseSpec spec;
    spec.dim = params.dim;
    if (j.contains("drift")) spec.drift = parse_vec(j.at("drift"), "drift");
    spec.reproject = j.value("reproject", false);
    for (const auto& g : j.at("groups")) {
        TransverseGroup group;
        group.direction = parse_vec(g.at("a"), "group direction");
        for (const auto& w : g.at("waves"))
            group.waves.emplace_back(parse_vec(w.at("k"), "wave vector"), parse_shape(w.at("shape")));
        spec.groups.push_back(std::move(group));
    }
    return spec;
}

inline InteractingSpec parse_interacting(const ordered_json& j, const ModelParams& params) {
    InteractingSpec spec;
    spec.dim = params.dim;
    if (j.contains("drift")) spec.drift = parse_vec(j.at("drift"), "drift");
    for (const auto& s : j.at("subspaces")) {
        InteractingSubspace sub;
        sub.e1 = parse_vec(s.at("e1"), "subspace e1");
        sub.e2 = parse_vec(s.at("e2"), "subspace e2");
        sub.lambda = s.at("lambda").get<double>();
        for (const auto& c : s.at("components")) {
            InteractingComponent comp;
            if (c.contains("phi")) comp.phi = c.at("phi").get<double>();
            if (c.contains("k")) comp.k = parse_vec(c.at("k"), "component k");
            comp.beta = c.value("beta", 1.0);
            comp.delta = c.value("delta", 0.0);
            sub.comps.push_back(std::move(comp));
        }
        spec.subspaces.push_back(std::move(sub));
    }
    return spec;
}

inline ForcingSpec parse_forcing(const ordered_json& j) {
    if (j.contains("density")) {
        const auto& d = j.at("density");
        std::vector<DensityNode> table;
        for (const auto& nd : d.at("nodes"))
            table.push_back({nd.at("sigma").get<double>(), nd.at("alpha").get<double>(),
                             nd.value("weight", 1.0)});
        return ForcingSpec::density_integral(parse_vec(d.at("a"), "forcing direction"),
                                             parse_vec(d.at("k"), "forcing wave vector"), table);
    }
    std::vector<ForcingMode> modes;
    for (const auto& m : j.at("modes"))
        modes.push_back({parse_vec(m.at("a"), "forcing direction"),
                         parse_vec(m.at("k"), "forcing wave vector"), parse_shape(m.at("shape"))});
    return ForcingSpec::plane_wave_sum(std::move(modes));
}

inline FlowField build_flow(const ordered_json& j, const ModelParams& params);

inline FlowField build_flow_impl(const ordered_json& j, const ModelParams& params) {
    const std::string family = j.at("family").get<std::string>();

    if (family == "transverse") return build_transverse(parse_transverse(j, params), params);

    if (family == "interacting_transverse")
        return build_interacting_transverse(parse_interacting(j, params), params);

    if (family == "horizontal_plane") {
        HorizontalPlaneSpec spec;
        spec.k2 = parse_vec2(j.at("k2"), "k2");
        spec.shape = parse_shape(j.at("shape"));
        if (j.contains("btilde") && !j.at("btilde").is_null())
            spec.btilde = parse_shape(j.at("btilde"));
        if (j.contains("drift")) spec.drift = parse_vec(j.at("drift"), "drift");
        return build_horizontal_plane_boussinesq(spec, params);
    }

    if (family == "interacting_horizontal") {
        InteractingHorizontalSpec spec;
        for (const auto& w : j.at("waves"))
            spec.waves.push_back(
                {parse_vec2(w.at("k2"), "k2"), w.value("beta", 1.0), w.value("delta", 0.0)});
        if (j.contains("btilde") && !j.at("btilde").is_null())
            spec.btilde = parse_shape(j.at("btilde"));
        if (j.contains("drift")) spec.drift = parse_vec(j.at("drift"), "drift");
        return build_interacting_horizontal_boussinesq(spec, params);
    }

    if (family == "kolmogorov") {
        const auto res = build_kolmogorov(j.at("k").get<double>(), j.at("m").get<double>(),
                                          j.at("alpha").get<double>(), j.value("beta_forcing", 0.0),
                                          params);
        return res.field;
    }

    if (family == "mgw")
        return build_mgw(j.at("k").get<double>(), j.at("m").get<double>(),
                         j.at("alpha").get<double>(), j.value("branch", 1), params);

    if (family == "parallel_boussinesq") {
        std::vector<ParallelMode> modes;
        for (const auto& m : j.at("modes")) {
            const auto k2 = parse_vec2(m.at("k2"), "k2");
            modes.push_back({k2[0], k2[1], m.value("w0", 0.0), m.value("b0", 0.0)});
        }
        return build_parallel_boussinesq(modes, j.value("p0", 0.0), params);
    }

    if (family == "parallel_augmented") {
        FlowField base = build_interacting_transverse(parse_interacting(j.at("base"), params), params);
        std::optional<Vec> dir;
        if (j.contains("direction")) dir = parse_vec(j.at("direction"), "direction");
        return add_parallel_component(base, j.value("gamma", 1.0), dir);
    }

    if (family == "integral") {
        std::vector<IntegralSubspace> subs;
        for (const auto& s : j.at("subspaces")) {
            IntegralSubspace sub;
            sub.e1 = parse_vec(s.at("e1"), "subspace e1");
            sub.e2 = parse_vec(s.at("e2"), "subspace e2");
            sub.lambda = s.at("lambda").get<double>();
            if (s.contains("uniform")) {
                const auto& u = s.at("uniform");
                const int q = u.at("q").get<int>();
                for (int i = 0; i < q; ++i)
                    sub.density.emplace_back(u.value("beta", 1.0), u.value("delta", 0.0));
            } else {
                for (const auto& nd : s.at("nodes"))
                    sub.density.emplace_back(nd.value("beta", 0.0), nd.value("delta", 0.0));
            }
            subs.push_back(std::move(sub));
        }
        Vec drift;
        if (j.contains("drift")) drift = parse_vec(j.at("drift"), "drift");
        return build_integral_flow(subs, params, drift);
    }

    if (family == "forced") {
        TransverseSpec v0;
        v0.dim = params.dim;
        if (j.contains("initial")) v0 = parse_transverse(j.at("initial"), params);
        return build_forced_solution(v0, parse_forcing(j.at("forcing")), params).combined;
    }

    if (family == "steady_state")
        return steady_state_from_forcing(parse_forcing(j.at("forcing")), params);

    if (family == "superpose") {
        std::vector<FlowField> fields;
        for (const auto& sub : j.at("fields")) fields.push_back(build_flow(sub, params));
        return superpose(fields, params);
    }

    if (family == "negative_control") {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "self_directed") return build_negative_control(NegativeKind::SelfDirected, params);
        if (kind == "wavelength_mismatch")
            return build_negative_control(NegativeKind::WavelengthMismatch, params);
        if (kind == "orthogonality_break")
            return build_negative_control(NegativeKind::OrthogonalityBreak, params);
        throw invalid_spec("config: unknown negative control kind '" + kind + "'");
    }

    throw invalid_spec("config: unknown flow family '" + family + "'");
}

inline FlowField build_flow(const ordered_json& j, const ModelParams& params) {
    return build_flow_impl(j, params);
}

} // namespace cfg

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct GridSpec {
    std::vector<std::size_t> points;
    Vec box_lo, box_hi;
    std::vector<double> t_values{0.0};
};

struct RunConfig {
    std::string name;
    SystemTag system = SystemTag::NavierStokes;
    ModelParams params;
    ordered_json flow;
    SamplerSpec sampler;
    std::optional<GridSpec> grid;
    double tol_analytic = 1e-8;
    double tol_fd = 5e-4;
    double fd_step = 1e-3;
};

inline RunConfig parse_config(const ordered_json& j) {
    RunConfig rc;
    rc.name = j.value("name", "unnamed");
    rc.system = cfg::parse_system(j.at("system").get<std::string>());
    rc.params = cfg::parse_params(j.at("params"));
    rc.flow = j.at("flow");
    if (rc.system == SystemTag::Euler && rc.params.nu != 0.0)
        throw invalid_spec("config: system 'euler' requires nu = 0");

    const std::size_t n = static_cast<std::size_t>(rc.params.dim);
    rc.sampler.box = SampleBox::standard(n);
    if (j.contains("sampler")) {
        const auto& s = j.at("sampler");
        if (s.contains("box_lo")) rc.sampler.box.lo = cfg::parse_vec(s.at("box_lo"), "box_lo");
        if (s.contains("box_hi")) rc.sampler.box.hi = cfg::parse_vec(s.at("box_hi"), "box_hi");
        rc.sampler.box.t_min = s.value("t_min", 0.0);
        rc.sampler.box.t_max = s.value("t_max", 1.0);
        rc.sampler.count = s.value("count", std::size_t{1000});
        if (!s.contains("seed"))
            throw invalid_spec("config: sampler.seed is required (no wall-clock entropy)");
        rc.sampler.seed = s.at("seed").get<std::uint64_t>();
    } else {
        throw invalid_spec("config: sampler block is required");
    }
    if (rc.sampler.box.lo.size() != n || rc.sampler.box.hi.size() != n)
        throw invalid_spec("config: sampler box dimension does not match params.dim");

    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        GridSpec gs;
        for (const auto& p : g.at("points")) gs.points.push_back(p.get<std::size_t>());
        gs.box_lo = cfg::parse_vec(g.at("box_lo"), "grid box_lo");
        gs.box_hi = cfg::parse_vec(g.at("box_hi"), "grid box_hi");
        if (g.contains("t_values")) {
            gs.t_values.clear();
            for (const auto& t : g.at("t_values")) gs.t_values.push_back(t.get<double>());
        }
        if (gs.points.size() != n || gs.box_lo.size() != n || gs.box_hi.size() != n)
            throw invalid_spec("config: grid dimension does not match params.dim");
        rc.grid = std::move(gs);
    }

    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        rc.tol_analytic = t.value("analytic", 1e-8);
        rc.tol_fd = t.value("fd", 5e-4);
        rc.fd_step = t.value("fd_step", 1e-3);
    }
    if (rc.tol_analytic <= 0.0 || rc.tol_fd <= 0.0 || rc.fd_step <= 0.0)
        throw invalid_spec("config: tolerances must be positive");
    return rc;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_spec("config: JSON parse error in '" + path + "': " + e.what());
    }
    try {
        return parse_config(j);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_spec("config: schema error in '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Verification runs and reports
// ---------------------------------------------------------------------------

struct VerifyOutcome {
    VerificationReport analytic;
    VerificationReport fd;
    bool pass = false;
};

inline VerifyOutcome run_verify(const FlowField& field, const RunConfig& rc, unsigned workers) {
    VerifyOutcome out;
    out.analytic = verify(field, rc.system, rc.sampler, rc.tol_analytic,
                          {DerivativeMode::Analytic, rc.fd_step, workers});
    out.fd = verify(field, rc.system, rc.sampler, rc.tol_fd,
                    {DerivativeMode::FiniteDifference, rc.fd_step, workers});
    out.pass = out.analytic.pass && out.fd.pass;
    return out;
}

inline std::string fmt_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_e(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9e", v);
    return buf;
}

inline ordered_json report_to_json(const VerificationReport& r) {
    ordered_json j;
    j["derivatives"] = r.derivative_mode;
    j["sample_count"] = r.sample_count;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["channels"] = {
        {"momentum", {{"max_abs", r.momentum.max_abs}, {"rms", r.momentum.rms}}},
        {"continuity", {{"max_abs", r.continuity.max_abs}, {"rms", r.continuity.rms}}},
        {"buoyancy", {{"max_abs", r.buoyancy.max_abs}, {"rms", r.buoyancy.rms}}},
    };
    j["witness"] = {{"t", r.witness_t},
                    {"x", r.witness_x.data()},
                    {"channel", r.witness_channel},
                    {"value", r.witness_value}};
    return j;
}

inline std::string report_to_text(const std::string& name, const VerifyOutcome& out) {
    std::ostringstream os;
    auto line = [&os](const char* label, const VerificationReport& r) {
        os << "  " << label << ": " << (r.pass ? "PASS" : "FAIL") << "  (tol " << fmt_e(r.tolerance)
           << ", samples " << r.sample_count << ")\n"
           << "    momentum   max " << fmt_e(r.momentum.max_abs) << "  rms " << fmt_e(r.momentum.rms)
           << "\n"
           << "    continuity max " << fmt_e(r.continuity.max_abs) << "  rms "
           << fmt_e(r.continuity.rms) << "\n"
           << "    buoyancy   max " << fmt_e(r.buoyancy.max_abs) << "  rms "
           << fmt_e(r.buoyancy.rms) << "\n";
        if (!r.pass) {
            os << "    witness: channel " << r.witness_channel << " value " << fmt_e(r.witness_value)
               << " at t = " << fmt_e(r.witness_t) << ", x = (";
            for (std::size_t i = 0; i < r.witness_x.size(); ++i)
                os << (i ? ", " : "") << fmt_e(r.witness_x[i]);
            os << ")\n";
        }
    };
    os << "verification: " << name << "\n";
    line("analytic jets   ", out.analytic);
    line("finite-diff jets", out.fd);
    os << "result: " << (out.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// CSV sampling: header t, x1..xn, v1..vn, p, b, res_mom_1..n, res_div,
// res_buoy; rows in lexicographic (t, x1, ..., xn) order; floats printed
// with 17 significant digits so they round-trip to <= 1 ulp.
// ---------------------------------------------------------------------------

inline std::string csv_for_grid(const FlowField& field, SystemTag system, const GridSpec& grid,
                                unsigned workers = 1) {
    const std::size_t n = field.dim();
    const std::vector<Vec> pts = make_grid(grid.box_lo, grid.box_hi, grid.points);

    std::ostringstream header;
    header << "t";
    for (std::size_t i = 1; i <= n; ++i) header << ",x" << i;
    for (std::size_t i = 1; i <= n; ++i) header << ",v" << i;
    header << ",p,b";
    for (std::size_t i = 1; i <= n; ++i) header << ",res_mom_" << i;
    header << ",res_div,res_buoy\n";

    std::vector<std::string> rows(grid.t_values.size() * pts.size());
    auto emit_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            const double t = grid.t_values[r / pts.size()];
            const Vec& x = pts[r % pts.size()];
            const FieldJet J = field.jet(t, x);
            const ResidualVector res =
                detail::residual_from_jet(field, field.params(), system, J, t, x);
            std::ostringstream os;
            os << fmt_g17(t);
            for (std::size_t i = 0; i < n; ++i) os << "," << fmt_g17(x[i]);
            for (std::size_t i = 0; i < n; ++i) os << "," << fmt_g17(J.v.value[i]);
            os << "," << fmt_g17(J.p) << "," << fmt_g17(J.b.value);
            for (std::size_t i = 0; i < n; ++i) os << "," << fmt_g17(res.momentum[i]);
            os << "," << fmt_g17(res.continuity) << "," << fmt_g17(res.buoyancy) << "\n";
            rows[r] = os.str();
        }
    };

    const unsigned w = std::max(1u, workers);
    if (w == 1 || rows.size() < 2 * w) {
        emit_range(0, rows.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows.size() + w - 1) / w;
        for (unsigned i = 0; i < w; ++i) {
            const std::size_t lo = i * chunk, hi = std::min(rows.size(), lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(emit_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    std::string out = header.str();
    for (const std::string& r : rows) out += r;
    return out;
}

} // namespace pwflow
