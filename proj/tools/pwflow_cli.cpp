// Command-line harness: build flow fields from JSON configs, verify them
// against their governing equations (analytic jets and the finite-difference
// oracle), sample fields to CSV, and report solution-space dimensions.
//
// Exit codes: 0 pass, 1 verification failure, 2 invalid config or constraint
// violation, 3 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pwflow/config.hpp"
#include "pwflow/suite.hpp"
#include "pwflow/testing.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pwflow::io_error("cannot open output file '" + path + "'");
    out << content;
    if (!out) throw pwflow::io_error("failed writing output file '" + path + "'");
}

pwflow::ordered_json error_record(const std::string& cls, const std::string& msg) {
    pwflow::ordered_json j;
    j["error"] = {{"class", cls}, {"message", msg}};
    return j;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& config_path, std::optional<std::uint64_t> seed_override,
               unsigned workers, const std::string& out_path) {
    using namespace pwflow;
    RunConfig rc;
    FlowField field(2, ModelParams{.dim = 2}, FlowFamily::Transverse, SystemTag::Euler);
    try {
        rc = load_config(config_path);
        if (seed_override) rc.sampler.seed = *seed_override;
        field = cfg::build_flow(rc.flow, rc.params);
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const incompatibility_error& e) {
        std::cerr << "constraint error: " << e.what() << "\n";
        if (!out_path.empty()) {
            ordered_json j = error_record("incompatible_superposition", e.what());
            j["error"]["witness"] = {{"t", e.t}, {"x", e.x}};
            j["error"]["pair"] = {e.pair_a, e.pair_b};
            try {
                write_file(out_path + ".json", j.dump(2) + "\n");
            } catch (const io_error&) {
                return kExitIo;
            }
        }
        return kExitInvalid;
    } catch (const error& e) {
        std::cerr << "config/constraint error: " << e.what() << "\n";
        if (!out_path.empty()) {
            const char* cls = dynamic_cast<const invalid_spec*>(&e) ? "invalid_spec"
                                                                    : "structural_error";
            try {
                write_file(out_path + ".json", error_record(cls, e.what()).dump(2) + "\n");
            } catch (const io_error&) {
                return kExitIo;
            }
        }
        return kExitInvalid;
    }

    VerifyOutcome out;
    try {
        out = run_verify(field, rc, workers);
    } catch (const error& e) {
        std::cerr << "verification setup error: " << e.what() << "\n";
        return kExitInvalid;
    }

    const std::string text = report_to_text(rc.name, out);
    std::cout << text;
    if (!out_path.empty()) {
        ordered_json j;
        j["name"] = rc.name;
        j["system"] = to_string(rc.system);
        j["family"] = to_string(field.family());
        j["seed"] = rc.sampler.seed;
        j["passes"] = {report_to_json(out.analytic), report_to_json(out.fd)};
        j["pass"] = out.pass;
        try {
            write_file(out_path, text);
            write_file(out_path + ".json", j.dump(2) + "\n");
        } catch (const io_error& e) {
            std::cerr << "io error: " << e.what() << "\n";
            return kExitIo;
        }
    }
    return out.pass ? kExitPass : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// sample
// ---------------------------------------------------------------------------

int cmd_sample(const std::string& config_path, unsigned workers, const std::string& out_path) {
    using namespace pwflow;
    try {
        const RunConfig rc = load_config(config_path);
        if (!rc.grid) throw invalid_spec("config: sample needs a grid block");
        const FlowField field = cfg::build_flow(rc.flow, rc.params);
        const std::string csv = csv_for_grid(field, rc.system, *rc.grid, workers);
        if (out_path.empty()) {
            std::cout << csv;
        } else {
            write_file(out_path, csv);
        }
        return kExitPass;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const error& e) {
        std::cerr << "config/constraint error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

// ---------------------------------------------------------------------------
// dimension
// ---------------------------------------------------------------------------

int cmd_dimension(const std::string& family, int n, int N, const std::string& m_list) {
    using namespace pwflow;
    try {
        CountedFamily fam;
        if (family == "transverse") fam = CountedFamily::Transverse;
        else if (family == "interacting_transverse") fam = CountedFamily::InteractingTransverse;
        else if (family == "interacting_horizontal") fam = CountedFamily::InteractingHorizontal;
        else throw invalid_spec("unknown family '" + family + "'");

        std::vector<int> M;
        std::stringstream ss(m_list);
        std::string item;
        while (std::getline(ss, item, ',')) M.push_back(std::stoi(item));
        // a single value is the total mode count m_N; only the sum enters the
        // count, so distribute it as (m - N + 1, 1, ..., 1)
        if (fam != CountedFamily::InteractingHorizontal && static_cast<int>(M.size()) == 1 && N > 1) {
            const int total = M.front();
            if (total < N) throw invalid_spec("total mode count must be >= N");
            M.assign(static_cast<std::size_t>(N), 1);
            M.front() = total - N + 1;
        }

        const DimensionCount d = solution_space_dimension(fam, n, N, M);
        std::cout << "core " << d.core << "\n" << "bonus " << d.symmetry_bonus << "\n";
        return kExitPass;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

// ---------------------------------------------------------------------------
// suite: the bundled acceptance matrix. Every family runs under both
// derivative oracles; negative controls must fail; the documented
// incompatible superpositions must be rejected with a witness.
// ---------------------------------------------------------------------------

int cmd_suite(std::uint64_t seed, unsigned workers, const std::string& out_path,
              const std::string& inject_fault) {
    using namespace pwflow;
    std::ostringstream os;
    bool all_ok = true;

    auto emit = [&](bool ok, const std::string& name, const std::string& detail) {
        all_ok = all_ok && ok;
        os << (ok ? "PASS  " : "FAIL  ") << name;
        for (std::size_t i = name.size(); i < 34; ++i) os << ' ';
        os << detail << "\n";
    };

    try {
        std::vector<SuiteCase> cases = builtin_positive_cases();
        for (SuiteCase& c : builtin_negative_cases()) cases.push_back(std::move(c));

        if (!inject_fault.empty()) {
            bool applied = false;
            for (SuiteCase& c : cases) {
                if (inject_fault == "mgw_pressure_sign" && c.name == "mgw_inviscid_f0") {
                    c.field = testing::scale_pressure_terms(c.field, -1.0);
                    applied = true;
                }
            }
            if (!applied) throw invalid_spec("unknown fault '" + inject_fault + "'");
        }

        for (const SuiteCase& c : cases) {
            SamplerSpec sampler;
            sampler.box = c.box;
            sampler.count = 1000;
            sampler.seed = seed;
            const SystemTag tag = c.field.system();
            const auto analytic = verify(c.field, tag, sampler, 1e-8,
                                         {DerivativeMode::Analytic, 1e-3, workers});
            const auto fd = verify(c.field, tag, sampler, 5e-4,
                                   {DerivativeMode::FiniteDifference, 1e-3, workers});
            const bool pass = analytic.pass && fd.pass;
            std::ostringstream detail;
            detail << "analytic " << fmt_e(analytic.witness_value) << "  fd "
                   << fmt_e(fd.witness_value);
            if (!c.expect_pass) {
                detail << "  (expected failure: witness " << fmt_e(analytic.witness_value) << " in "
                       << analytic.witness_channel << ")";
                emit(!pass && analytic.witness_value >= 1e-2, c.name, detail.str());
            } else {
                emit(pass, c.name, detail.str());
            }
        }

        for (const IncompatiblePair& pair : builtin_incompatible_pairs()) {
            try {
                (void)superpose(pair.fields, pair.params);
                emit(false, pair.name, "superposition was not rejected");
            } catch (const incompatibility_error& e) {
                std::ostringstream detail;
                detail << "rejected, |cross| = " << fmt_e(e.cross_magnitude) << " at t = "
                       << fmt_e(e.t);
                emit(true, pair.name, detail.str());
            }
        }
    } catch (const error& e) {
        std::cerr << "suite setup error: " << e.what() << "\n";
        return kExitInvalid;
    }

    os << (all_ok ? "suite: all cases passed\n" : "suite: FAILURES present\n");
    std::cout << os.str();
    if (!out_path.empty()) {
        try {
            write_file(out_path, os.str());
        } catch (const io_error& e) {
            std::cerr << "io error: " << e.what() << "\n";
            return kExitIo;
        }
    }
    return all_ok ? kExitPass : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plane-wave explicit solutions of Euler / Navier-Stokes / rotating Boussinesq "
                 "equations, with pointwise PDE verification"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t suite_seed = 42;
    unsigned workers = 1;

    auto* verify_cmd = app.add_subcommand("verify", "verify a flow config against its PDE");
    verify_cmd->add_option("--config", config_path, "JSON flow config")->required();
    std::uint64_t seed_value = 0;
    auto* seed_opt = verify_cmd->add_option("--seed", seed_value, "override the sampler seed");
    verify_cmd->add_option("--workers", workers, "parallel sample evaluation");
    verify_cmd->add_option("--out", out_path, "report path (text; .json appended for the record)");

    auto* sample_cmd = app.add_subcommand("sample", "sample a flow on a grid to CSV");
    sample_cmd->add_option("--config", config_path, "JSON flow config with a grid block")->required();
    sample_cmd->add_option("--workers", workers, "parallel row evaluation");
    sample_cmd->add_option("--out", out_path, "CSV output path (stdout if omitted)");

    std::string family;
    int dim_n = 3, dim_N = 1;
    std::string m_list = "1";
    auto* dim_cmd = app.add_subcommand("dimension", "solution-space dimension counts");
    dim_cmd->add_option("--family", family, "transverse | interacting_transverse | interacting_horizontal")
        ->required();
    dim_cmd->add_option("--n", dim_n, "space dimension");
    dim_cmd->add_option("--N", dim_N, "number of directions / subspaces / waves")->required();
    dim_cmd->add_option("--m", m_list, "mode counts M_i (comma list, or one value for all)");

    std::string inject_fault;
    auto* suite_cmd = app.add_subcommand("suite", "run the bundled verification matrix");
    suite_cmd->add_option("--seed", suite_seed, "sampler seed");
    suite_cmd->add_option("--workers", workers, "parallel sample evaluation");
    suite_cmd->add_option("--out", out_path, "summary output path");
    suite_cmd->add_option("--inject-fault", inject_fault, "mutation control (testing)")
        ->group(""); // hidden

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kExitInvalid;
    }

    if (*seed_opt) seed_override = seed_value;

    if (app.got_subcommand(verify_cmd))
        return cmd_verify(config_path, seed_override, workers, out_path);
    if (app.got_subcommand(sample_cmd)) return cmd_sample(config_path, workers, out_path);
    if (app.got_subcommand(dim_cmd)) return cmd_dimension(family, dim_n, dim_N, m_list);
    if (app.got_subcommand(suite_cmd)) return cmd_suite(suite_seed, workers, out_path, inject_fault);
    return kExitInvalid;
}
