// polariton_app.hpp - command-line orchestration for the polariton tool.
//
// Exit codes: 0 success, 1 usage, 2 validation, 3 solver, 4 I/O.

#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "polariton/polariton.hpp"

namespace polariton::app {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kSolver = 3, kIo = 4 };

namespace fs = std::filesystem;
using json = nlohmann::json;

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

struct RunConfig {
    std::string subcommand;
    std::string excitations;
    std::string cavity;
    std::string model = "quadratic";
    std::string axis;
    std::string out_dir;
    std::string weighting = "point";
    double gamma = 0.010;
    double domega = 0.001;
    std::vector<double> range;
    double lambda_min = 0.010;
    double lambda_max = 0.986;
    std::size_t lambda_steps = 50;
    std::vector<std::string> schedule;
    ContinuumProfile profile;
    std::vector<std::string> defects;
};

/// Collects outputs, writes them serially and records checksums in manifest.json.
class OutputSet {
public:
    OutputSet(const RunConfig& cfg, json parameters) : cfg_(cfg), parameters_(std::move(parameters)) {}

    void add_input(const std::string& path) {
        if (path.empty()) return;
        inputs_.push_back({{"path", path}, {"sha256", sha256_hex(io::read_text_file(path))}});
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path dir(cfg_.out_dir);
        io::write_text_file(dir / name, content);
        outputs_.push_back({{"path", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
    }

    void finish() {
        json manifest = {{"tool", "polariton"},
                         {"version", kVersion},
                         {"subcommand", cfg_.subcommand},
                         {"parameters", parameters_},
                         {"inputs", inputs_},
                         {"outputs", outputs_}};
        io::write_text_file(fs::path(cfg_.out_dir) / "manifest.json", manifest.dump(2) + "\n");
    }

private:
    const RunConfig& cfg_;
    json parameters_;
    json inputs_ = json::array();
    json outputs_ = json::array();
};

inline void require_file(const std::string& path, const char* what) {
    if (path.empty()) throw ValidationError(std::string(what) + " path is required");
    if (!fs::is_regular_file(path)) throw IoError(std::string(what) + " '" + path + "' does not exist");
}

inline void prepare_out_dir(const std::string& dir) {
    if (dir.empty()) throw ValidationError("--out is required");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

inline ModelTag model_of(const RunConfig& cfg) {
    const auto m = parse_model(cfg.model);
    if (!m) throw ValidationError("unknown model '" + cfg.model + "' (expected rwa or quadratic)");
    return *m;
}

inline BathWeighting weighting_of(const RunConfig& cfg) {
    if (cfg.weighting == "point") return BathWeighting::point_sampled;
    if (cfg.weighting == "bin") return BathWeighting::bin_integrated;
    throw ValidationError("unknown bath weighting '" + cfg.weighting + "' (expected point or bin)");
}

inline Axis axis_of(const RunConfig& cfg, const std::optional<CavitySpec>& cavity) {
    if (!cfg.axis.empty()) {
        const auto a = parse_axis(cfg.axis);
        if (!a) throw ValidationError("unknown axis '" + cfg.axis + "'");
        return *a;
    }
    if (!cavity) return Axis::x;
    Eigen::Index dominant = 0;
    cavity->polarization.cwiseAbs().maxCoeff(&dominant);
    return static_cast<Axis>(dominant);
}

inline ExcitationSet load_excitations(const RunConfig& cfg) {
    require_file(cfg.excitations, "excitations");
    return io::read_excitations(cfg.excitations);
}

inline CavitySpec load_cavity(const RunConfig& cfg) {
    require_file(cfg.cavity, "cavity");
    return io::read_cavity(cfg.cavity);
}

inline void check_inputs(const ExcitationSet& set, const CavitySpec& cavity) {
    auto report = validate_inputs(set, cavity);
    if (!report.ok()) throw ValidationError(std::move(report));
}

inline json base_parameters(const RunConfig& cfg) {
    return {{"model", cfg.model}, {"axis", cfg.axis.empty() ? "auto" : cfg.axis}};
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const auto set = load_excitations(cfg);
    const auto cavity = load_cavity(cfg);
    check_inputs(set, cavity);
    prepare_out_dir(cfg.out_dir);
    const Axis axis = axis_of(cfg, cavity);
    const auto modes = cavity_modes(cavity, weighting_of(cfg));
    const auto sol = solve(model_of(cfg), set, modes, SolverOptions::from_environment());
    const auto sticks = stick_spectrum(sol, set, axis);

    OutputSet outs(cfg, base_parameters(cfg));
    outs.add_input(cfg.excitations);
    outs.add_input(cfg.cavity);
    outs.write("solution.json", io::solution_to_json(sol).dump() + "\n");
    outs.write("sticks.json", io::sticks_to_json(sticks, axis).dump(2) + "\n");
    outs.finish();
    out << "solved " << sol.state_count() << " polariton states (" << set.size() << " electronic, "
        << modes.size() << " photonic), lowest " << io::format_number(sol.energies[0]) << " eV\n";
    return kOk;
}

inline std::vector<double> lambda_grid(const RunConfig& cfg) {
    if (cfg.lambda_steps < 1) throw ValidationError("--lambda-steps must be at least 1");
    if (cfg.lambda_steps == 1) return {cfg.lambda_min};
    if (!(cfg.lambda_max > cfg.lambda_min)) throw ValidationError("--lambda-max must exceed --lambda-min");
    std::vector<double> grid(cfg.lambda_steps);
    const double step = (cfg.lambda_max - cfg.lambda_min) / static_cast<double>(cfg.lambda_steps - 1);
    for (std::size_t s = 0; s < grid.size(); ++s) grid[s] = cfg.lambda_min + static_cast<double>(s) * step;
    grid.back() = cfg.lambda_max;
    return grid;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const auto set = load_excitations(cfg);
    const auto cavity = load_cavity(cfg);
    check_inputs(set, cavity);
    prepare_out_dir(cfg.out_dir);
    const auto lambdas = lambda_grid(cfg);
    const Axis axis = axis_of(cfg, cavity);
    const auto points = sweep_coupling(set, cavity, lambdas, model_of(cfg), axis,
                                       SolverOptions::from_environment(), weighting_of(cfg));
    auto params = base_parameters(cfg);
    params["lambda_min"] = cfg.lambda_min;
    params["lambda_max"] = cfg.lambda_max;
    params["lambda_steps"] = cfg.lambda_steps;
    OutputSet outs(cfg, params);
    outs.add_input(cfg.excitations);
    outs.add_input(cfg.cavity);
    outs.write("metrics.csv", io::metrics_csv(points));
    outs.finish();
    out << "swept " << points.size() << " coupling strengths\n";
    return kOk;
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto set = load_excitations(cfg);
    std::optional<CavitySpec> cavity;
    std::vector<Stick> sticks;
    if (!cfg.cavity.empty()) {
        cavity = load_cavity(cfg);
        check_inputs(set, *cavity);
    }
    const Axis axis = axis_of(cfg, cavity);
    if (cavity) {
        const auto modes = cavity_modes(*cavity, weighting_of(cfg));
        sticks = stick_spectrum(solve(model_of(cfg), set, modes, SolverOptions::from_environment()), set, axis);
    } else {
        sticks = electronic_sticks(set, axis);
    }
    double lo = 0.0, hi = 0.0;
    if (cfg.range.size() == 2) {
        lo = cfg.range[0];
        hi = cfg.range[1];
    } else {
        lo = sticks.front().energy;
        hi = sticks.front().energy;
        for (const auto& s : sticks) {
            lo = std::min(lo, s.energy);
            hi = std::max(hi, s.energy);
        }
        lo = std::max(0.0, lo - 20.0 * cfg.gamma);
        hi += 20.0 * cfg.gamma;
    }
    prepare_out_dir(cfg.out_dir);
    const auto grid = broaden(sticks, cfg.gamma, cfg.domega, lo, hi, axis);
    for (const auto& w : grid.warnings) err << "warning: " << w << "\n";
    auto params = base_parameters(cfg);
    params["gamma_eV"] = cfg.gamma;
    params["domega_eV"] = cfg.domega;
    params["range_eV"] = {lo, hi};
    params["cavity"] = cavity.has_value();
    OutputSet outs(cfg, params);
    outs.add_input(cfg.excitations);
    outs.add_input(cfg.cavity);
    outs.write("spectrum.csv", io::spectrum_csv(grid));
    outs.write("sticks.json", io::sticks_to_json(sticks, axis).dump(2) + "\n");
    outs.finish();
    out << "wrote " << grid.axis.size() << " spectrum points\n";
    return kOk;
}

inline int cmd_bath(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto cavity = load_cavity(cfg);
    prepare_out_dir(cfg.out_dir);
    const auto bath = discretize_bath(cavity, weighting_of(cfg));
    for (const auto& w : bath.warnings) err << "warning: " << w << "\n";
    json params = {{"weighting", cfg.weighting}};
    OutputSet outs(cfg, params);
    outs.add_input(cfg.cavity);
    outs.write("modes.json", io::bath_to_json(bath).dump(2) + "\n");
    outs.finish();
    out << "discretized bath into " << bath.modes.size() << " modes, coverage "
        << io::format_number(bath.coverage) << "\n";
    return kOk;
}

/// Schedule entries are excitation counts ("250") or percentages of the set ("50%").
inline std::vector<std::size_t> parse_schedule(const std::vector<std::string>& items, std::size_t available) {
    std::vector<std::size_t> counts;
    for (const auto& raw : items) {
        std::string_view s = io::trim(raw);
        if (!s.empty() && s.back() == '%') {
            const auto pct = io::parse_double(s.substr(0, s.size() - 1));
            if (!pct || *pct <= 0.0) throw ValidationError("bad schedule entry '" + raw + "'");
            counts.push_back(static_cast<std::size_t>(std::llround(*pct / 100.0 * static_cast<double>(available))));
        } else {
            const auto v = io::parse_double(s);
            if (!v || *v < 1.0 || *v != std::floor(*v)) throw ValidationError("bad schedule entry '" + raw + "'");
            counts.push_back(static_cast<std::size_t>(*v));
        }
    }
    return counts;
}

inline int cmd_converge(const RunConfig& cfg, std::ostream& out) {
    const auto set = load_excitations(cfg);
    const auto cavity = load_cavity(cfg);
    check_inputs(set, cavity);
    if (cfg.schedule.empty()) throw ValidationError("--schedule is required");
    const auto schedule = parse_schedule(cfg.schedule, set.size());
    prepare_out_dir(cfg.out_dir);
    const auto report = convergence_report(set, cavity, schedule, model_of(cfg), axis_of(cfg, cavity),
                                           SolverOptions::from_environment());
    auto params = base_parameters(cfg);
    params["schedule"] = schedule;
    params["tolerance"] = report.tolerance;
    params["window_eV"] = {report.window_lo, report.window_hi};
    OutputSet outs(cfg, params);
    outs.add_input(cfg.excitations);
    outs.add_input(cfg.cavity);
    outs.write("convergence.csv", io::convergence_csv(report));
    outs.finish();
    if (report.first_converged)
        out << "converged within 1% at " << report.rows[*report.first_converged].excitations << " excitations\n";
    else
        out << "not converged within 1% before the final truncation\n";
    return kOk;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
    std::vector<Excitation> defects;
    for (const auto& name : cfg.defects) {
        const auto sys = find_bundled(name);
        if (!sys) throw ValidationError("unknown bundled system '" + name + "'");
        defects.push_back(lowest_excitation(*sys));
    }
    ExcitationSet set;
    try {
        set = generate_synthetic_continuum(cfg.profile, defects);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
    prepare_out_dir(cfg.out_dir);
    const auto& p = cfg.profile;
    json params = {{"seed", p.seed},
                   {"onset_eV", p.onset},
                   {"cutoff_eV", p.cutoff},
                   {"count", p.count},
                   {"dipole_scale_eA", p.dipole_scale},
                   {"envelope_center_eV", p.envelope_center},
                   {"envelope_width_eV", p.envelope_width},
                   {"defects", cfg.defects}};
    OutputSet outs(cfg, params);
    outs.write("excitations.csv", io::excitations_csv(set));
    outs.finish();
    out << "generated " << set.size() << " excitations\n";
    return kOk;
}

inline int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    require_file(cfg.excitations, "excitations");
    ValidationReport report;
    std::vector<Excitation> rows;
    try {
        rows = io::read_excitation_rows(cfg.excitations);
    } catch (const ValidationError& e) {
        report = e.report();
    }
    if (!cfg.cavity.empty()) {
        require_file(cfg.cavity, "cavity");
        try {
            check_cavity(io::read_cavity(cfg.cavity), report);
        } catch (const ValidationError& e) {
            for (const auto& v : e.report().violations) report.violations.push_back(v);
        }
    }
    if (report.ok()) {
        out << "ok: " << rows.size() << " excitations\n";
        return kOk;
    }
    for (const auto& v : report.violations) err << "violation: " << v.message << "\n";
    return kValidation;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.subcommand == "solve") return cmd_solve(cfg, out);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, out, err);
    if (cfg.subcommand == "bath") return cmd_bath(cfg, out, err);
    if (cfg.subcommand == "converge") return cmd_converge(cfg, out);
    if (cfg.subcommand == "generate") return cmd_generate(cfg, out);
    if (cfg.subcommand == "validate") return cmd_validate(cfg, out, err);
    err << "no subcommand given\n";
    return kUsage;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    CLI::App app{"Polariton energies and absorption spectra of electronic excitations coupled to cavity modes"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1, 1);

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--model", cfg.model, "rwa or quadratic")->check(CLI::IsMember({"rwa", "quadratic"}));
        sub->add_option("--axis", cfg.axis, "absorption polarization x|y|z (default: cavity polarization)")
            ->check(CLI::IsMember({"x", "y", "z"}));
        sub->add_option("--bath-weighting", cfg.weighting, "point or bin")->check(CLI::IsMember({"point", "bin"}));
    };

    auto* solve_cmd = app.add_subcommand("solve", "diagonalize one light-matter problem");
    solve_cmd->add_option("--excitations", cfg.excitations, "excitation CSV/JSON")->required();
    solve_cmd->add_option("--cavity", cfg.cavity, "cavity JSON")->required();
    solve_cmd->add_option("--out", cfg.out_dir, "output directory")->required();
    add_model(solve_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "lower-polariton metrics over a coupling-strength grid");
    sweep_cmd->add_option("--excitations", cfg.excitations)->required();
    sweep_cmd->add_option("--cavity", cfg.cavity, "cavity template JSON")->required();
    sweep_cmd->add_option("--out", cfg.out_dir)->required();
    sweep_cmd->add_option("--lambda-min", cfg.lambda_min, "eV^1/2/nm")->capture_default_str();
    sweep_cmd->add_option("--lambda-max", cfg.lambda_max, "eV^1/2/nm")->capture_default_str();
    sweep_cmd->add_option("--lambda-steps", cfg.lambda_steps)->capture_default_str();
    add_model(sweep_cmd);

    auto* spectrum_cmd = app.add_subcommand("spectrum", "broadened absorption spectrum");
    spectrum_cmd->add_option("--excitations", cfg.excitations)->required();
    spectrum_cmd->add_option("--cavity", cfg.cavity, "cavity JSON (omit for the bare electronic spectrum)");
    spectrum_cmd->add_option("--out", cfg.out_dir)->required();
    spectrum_cmd->add_option("--gamma-ev", cfg.gamma, "broadening hbar*Gamma")->capture_default_str();
    spectrum_cmd->add_option("--domega-ev", cfg.domega, "grid spacing")->capture_default_str();
    spectrum_cmd->add_option("--range", cfg.range, "lo hi in eV")->expected(2);
    add_model(spectrum_cmd);

    auto* bath_cmd = app.add_subcommand("bath", "discretize a lossy cavity into photon modes");
    bath_cmd->add_option("--cavity", cfg.cavity)->required();
    bath_cmd->add_option("--out", cfg.out_dir)->required();
    bath_cmd->add_option("--bath-weighting", cfg.weighting, "point or bin")->check(CLI::IsMember({"point", "bin"}));

    auto* converge_cmd = app.add_subcommand("converge", "integrated absorption vs excitation truncation");
    converge_cmd->add_option("--excitations", cfg.excitations)->required();
    converge_cmd->add_option("--cavity", cfg.cavity)->required();
    converge_cmd->add_option("--out", cfg.out_dir)->required();
    converge_cmd->add_option("--schedule", cfg.schedule, "ascending counts or percentages, e.g. 10%,50%,100%")
        ->delimiter(',')
        ->required();
    add_model(converge_cmd);

    auto* generate_cmd = app.add_subcommand("generate", "seeded synthetic quasi-continuum");
    generate_cmd->add_option("--seed", cfg.profile.seed)->capture_default_str();
    generate_cmd->add_option("--onset", cfg.profile.onset, "eV")->capture_default_str();
    generate_cmd->add_option("--cutoff", cfg.profile.cutoff, "eV")->capture_default_str();
    generate_cmd->add_option("--count", cfg.profile.count)->capture_default_str();
    generate_cmd->add_option("--dipole-scale", cfg.profile.dipole_scale, "rms |d| in e*Angstrom")
        ->capture_default_str();
    generate_cmd->add_option("--envelope-center", cfg.profile.envelope_center, "eV")->capture_default_str();
    generate_cmd->add_option("--envelope-width", cfg.profile.envelope_width, "eV")->capture_default_str();
    generate_cmd->add_option("--defect", cfg.defects, "prepend a bundled defect line (pristine, CHB, CBCB, CBVN)");
    generate_cmd->add_option("--out", cfg.out_dir)->required();

    auto* validate_cmd = app.add_subcommand("validate", "check input files");
    validate_cmd->add_option("--excitations", cfg.excitations)->required();
    validate_cmd->add_option("--cavity", cfg.cavity);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }
    for (const auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

    try {
        return dispatch(cfg, out, err);
    } catch (const ValidationError& e) {
        for (const auto& v : e.report().violations) err << "validation error: " << v.message << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::out_of_range& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolver;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolver;
    }
}

}  // namespace polariton::app
