#include "gamow/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "gamow/delta_shell.hpp"
#include "gamow/kinematics.hpp"
#include "gamow/pseudo_norm.hpp"
#include "gamow/stationary_phase.hpp"
#include "gamow/tau_front.hpp"
#include "gamow/validate.hpp"

namespace gamow {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct cli_config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void fail_config(const std::string& message) { throw cli_config_error(message); }

json load_config(const std::string& path, const std::set<std::string>& allowed,
                 const std::set<std::string>& required) {
    std::ifstream in(path);
    if (!in) fail_config("cannot open config file: " + path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::parse_error& ex) {
        fail_config(std::string("config is not valid JSON: ") + ex.what());
    }
    if (!cfg.is_object()) fail_config("config root must be a JSON object");
    for (const auto& item : cfg.items())
        if (!allowed.count(item.key())) fail_config("unknown config key: " + item.key());
    for (const auto& key : required)
        if (!cfg.contains(key)) fail_config("missing config key: " + key);
    return cfg;
}

std::vector<double> parse_masses(const json& cfg) {
    if (!cfg["masses"].is_array() || cfg["masses"].empty())
        fail_config("masses must be a non-empty array");
    std::vector<double> masses;
    for (const auto& v : cfg["masses"]) {
        if (!v.is_number()) fail_config("masses must be numbers");
        masses.push_back(v.get<double>());
    }
    return masses;
}

Dispersion parse_dispersion(const json& cfg) {
    const std::string d = cfg["dispersion"].is_string() ? cfg["dispersion"].get<std::string>()
                                                        : std::string();
    if (d == "nonrelativistic") return Dispersion::Nonrelativistic;
    if (d == "relativistic") return Dispersion::Relativistic;
    fail_config("dispersion must be \"nonrelativistic\" or \"relativistic\"");
    return Dispersion::Nonrelativistic;  // unreachable
}

ComplexEnergy parse_energy(const json& cfg) {
    const json& e = cfg["energy"];
    if (!e.is_object() || !e.contains("re") || !e.contains("im") || e.size() != 2 ||
        !e["re"].is_number() || !e["im"].is_number())
        fail_config("energy must be an object {\"re\": ..., \"im\": ...}");
    const double re = e["re"].get<double>();
    const double im = e["im"].get<double>();
    if (im > 0.0) fail_config("energy.im must be <= 0 (decaying state convention E0 - i*Gamma/2)");
    return ComplexEnergy(re, -2.0 * im);
}

ordered_json complex_record(cplx z) {
    ordered_json rec;
    rec["re"] = z.real();
    rec["im"] = z.imag();
    return rec;
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_config("cannot open output file: " + path);
    out << contents;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

// ---- front ----------------------------------------------------------------

int cmd_front(const std::string& config_path, const std::string& out_path) {
    const json cfg = load_config(config_path,
                                 {"masses", "dispersion", "energy", "tau_R", "count"},
                                 {"masses", "dispersion", "energy", "tau_R", "count"});
    const ParticleSystem sys(parse_masses(cfg), parse_dispersion(cfg));
    const ComplexEnergy e = parse_energy(cfg);
    if (!e.is_real()) fail_config("front surfaces are defined for real energies (energy.im = 0)");
    if (!cfg["tau_R"].is_number()) fail_config("tau_R must be a number");
    const double tau_R = cfg["tau_R"].get<double>();
    if (!cfg["count"].is_number_unsigned() || cfg["count"].get<std::size_t>() == 0)
        fail_config("count must be a positive integer");
    const std::size_t count = cfg["count"].get<std::size_t>();

    const auto points = front_surface_sample(sys, e.e0, tau_R, count);

    std::string csv = "sample_id";
    for (std::size_t n = 1; n <= sys.size(); ++n) csv += ",r_" + std::to_string(n);
    csv += ",tau,residual\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        csv += std::to_string(i);
        for (double x : points[i].r) csv += "," + fmt_double(x);
        csv += "," + fmt_double(tau_R);
        csv += "," + fmt_double(front_residual(points[i], tau_R, sys, e.value()));
        csv += "\n";
    }
    write_file(out_path, csv);
    return kExitOk;
}

// ---- norm -----------------------------------------------------------------

int cmd_norm(const std::string& config_path, const std::string& out_path) {
    const json cfg = load_config(config_path,
                                 {"masses", "dispersion", "energy", "tau_grid", "resolution",
                                  "threads", "state"},
                                 {"masses", "dispersion", "tau_grid", "state"});
    const ParticleSystem sys(parse_masses(cfg), parse_dispersion(cfg));

    if (!cfg["tau_grid"].is_array() || cfg["tau_grid"].size() < 2)
        fail_config("tau_grid must be an array of at least two values");
    std::vector<double> grid;
    for (const auto& v : cfg["tau_grid"]) {
        if (!v.is_number()) fail_config("tau_grid entries must be numbers");
        grid.push_back(v.get<double>());
    }
    int resolution = 0;
    if (cfg.contains("resolution")) {
        if (!cfg["resolution"].is_number_integer()) fail_config("resolution must be an integer");
        resolution = cfg["resolution"].get<int>();
    }
    IntegrationOptions opts;
    if (cfg.contains("threads")) {
        if (!cfg["threads"].is_number_integer() || cfg["threads"].get<int>() < 1)
            fail_config("threads must be a positive integer");
        opts.threads = cfg["threads"].get<int>();
    }

    const json& st = cfg["state"];
    if (!st.is_object() || !st.contains("kind")) fail_config("state must be an object with a kind");
    const std::string kind = st["kind"].is_string() ? st["kind"].get<std::string>() : "";

    ReducedState state;
    ComplexEnergy e_d;
    if (kind == "partition") {
        for (const auto& item : st.items())
            if (item.key() != "kind") fail_config("unknown state key: " + item.key());
        if (!cfg.contains("energy")) fail_config("missing config key: energy");
        e_d = parse_energy(cfg);
        state = make_partition_state(sys, e_d);
    } else if (kind == "delta_shell") {
        for (const auto& item : st.items())
            if (item.key() != "kind" && item.key() != "g" && item.key() != "a" &&
                item.key() != "m" && item.key() != "branch")
                fail_config("unknown state key: " + item.key());
        if (cfg.contains("energy"))
            fail_config("delta_shell states derive their energy from the pole; drop the energy key");
        for (const char* key : {"g", "a", "m", "branch"})
            if (!st.contains(key)) fail_config(std::string("missing state key: ") + key);
        const double g = st["g"].get<double>();
        const double a = st["a"].get<double>();
        const double m = st["m"].get<double>();
        const int branch = st["branch"].get<int>();
        if (sys.size() != 1 || sys.mass(0) != m)
            fail_config("delta_shell state requires masses == [m]");
        const ShellResonance res = find_pole(g, a, m, branch);
        e_d = ComplexEnergy::from_value(res.energy());
        state.energy = e_d;
        state.kind = StateKind::Custom;
        state.evaluator = [res](const RadialPoint& r) { return gamow_u(res, r[0]); };
        opts.tau_breakpoints = {a / std::sqrt(2.0 * e_d.e0 / m)};
    } else {
        fail_config("state.kind must be \"partition\" or \"delta_shell\"");
    }

    const NormScan scan = norm_convergence_scan(state, sys, e_d, grid, resolution, opts);

    std::string csv = "tau_R,vol_re,vol_im,surf_re,surf_im,norm_re,norm_im\n";
    for (std::size_t i = 0; i < scan.tau_grid.size(); ++i) {
        csv += fmt_double(scan.tau_grid[i]);
        csv += "," + fmt_double(scan.volume_terms[i].real());
        csv += "," + fmt_double(scan.volume_terms[i].imag());
        csv += "," + fmt_double(scan.surface_terms[i].real());
        csv += "," + fmt_double(scan.surface_terms[i].imag());
        csv += "," + fmt_double(scan.norms[i].real());
        csv += "," + fmt_double(scan.norms[i].imag());
        csv += "\n";
    }
    write_file(out_path, csv);

    // inner-cutoff sensitivity: how much the norm would move if the excluded
    // inner ball were doubled
    if (state.kind == StateKind::PartitionIntegral) {
        IntegrationOptions probe = opts;
        probe.tau_min = opts.inner_cutoff * grid.front();
        const cplx sliver = volume_integral(state, sys, e_d, 2.0 * opts.inner_cutoff * grid.front(),
                                            resolution > 0 ? resolution : 0, probe);
        ordered_json info;
        info["inner_cutoff"] = opts.inner_cutoff;
        info["norm_shift_if_cutoff_doubled"] = std::abs(sliver) / std::abs(scan.norms.back());
        std::cout << info.dump() << "\n";
    }
    return kExitOk;
}

// ---- poles ----------------------------------------------------------------

int cmd_poles(double g, double a, double m, const std::string& branches,
              const std::string& out_path) {
    const auto colon = branches.find(':');
    if (colon == std::string::npos) fail_config("--branches expects B1:B2");
    int b1 = 0, b2 = 0;
    try {
        b1 = std::stoi(branches.substr(0, colon));
        b2 = std::stoi(branches.substr(colon + 1));
    } catch (const std::exception&) {
        fail_config("--branches expects integers B1:B2");
    }
    if (b1 < 1 || b2 < b1) fail_config("--branches requires 1 <= B1 <= B2");

    std::string csv = "branch,k_re,k_im,E0,Gamma,residual\n";
    for (int b = b1; b <= b2; ++b) {
        const ShellResonance res = find_pole(g, a, m, b);
        csv += std::to_string(b);
        csv += "," + fmt_double(res.k_pole.real());
        csv += "," + fmt_double(res.k_pole.imag());
        csv += "," + fmt_double(res.e0());
        csv += "," + fmt_double(res.width());
        csv += "," + fmt_double(res.pole_residual());
        csv += "\n";
    }
    write_file(out_path, csv);
    return kExitOk;
}

// ---- tau ------------------------------------------------------------------

int cmd_tau(const std::string& config_path) {
    const json cfg = load_config(config_path, {"masses", "dispersion", "energy", "r"},
                                 {"masses", "dispersion", "energy", "r"});
    const ParticleSystem sys(parse_masses(cfg), parse_dispersion(cfg));
    const ComplexEnergy e = parse_energy(cfg);
    if (!cfg["r"].is_array() || cfg["r"].empty()) fail_config("r must be a non-empty array");
    std::vector<double> coords;
    for (const auto& v : cfg["r"]) {
        if (!v.is_number()) fail_config("r entries must be numbers");
        coords.push_back(v.get<double>());
    }
    RadialPoint r(coords);

    const FrontSolution front = solve_front(r, sys, e);
    ordered_json rec;
    rec["tau"] = complex_record(front.tau);
    ordered_json momenta = ordered_json::array();
    for (const cplx& p : front.momenta) momenta.push_back(complex_record(p));
    rec["p_s"] = momenta;
    rec["S"] = complex_record(front.action);
    rec["T"] = complex_record(front.t_norm);
    rec["weight"] = complex_record(surface_weight(r, sys, e));
    std::cout << rec.dump() << "\n";
    return kExitOk;
}

// ---- validate ---------------------------------------------------------------

int cmd_validate(const std::string& suite) {
    if (suite != "fast" && suite != "all") fail_config("--suite must be fast or all");
    const auto results = run_validation(suite == "all");
    bool ok = true;
    for (const auto& res : results) {
        std::cout << (res.passed ? "[PASS] " : "[FAIL] ") << res.name << ": " << res.detail
                  << "\n";
        if (!res.passed) {
            ok = false;
            std::cerr << "FAIL " << res.name << ": " << res.detail << "\n";
        }
    }
    return ok ? kExitOk : kExitValidation;
}

void report_error(const char* category, const std::string& message) {
    ordered_json err;
    err["error"] = category;
    err["message"] = message;
    std::cerr << err.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"multi-particle resonance front and pseudo-norm toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    auto* front = app.add_subcommand("front", "sample a constant-tau front surface to CSV");
    front->add_option("--config", config_path)->required();
    front->add_option("--out", out_path)->required();

    auto* norm = app.add_subcommand("norm", "norm convergence scan to CSV");
    norm->add_option("--config", config_path)->required();
    norm->add_option("--out", out_path)->required();

    double g = 0.0, a = 0.0, m = 0.0;
    std::string branches;
    auto* poles = app.add_subcommand("poles", "delta-shell resonance pole table to CSV");
    poles->add_option("--g", g)->required();
    poles->add_option("--a", a)->required();
    poles->add_option("--m", m)->required();
    poles->add_option("--branches", branches)->required();
    poles->add_option("--out", out_path)->required();

    auto* tau = app.add_subcommand("tau", "front time at one radial point, JSON to stdout");
    tau->add_option("--config", config_path)->required();

    std::string suite = "fast";
    auto* validate = app.add_subcommand("validate", "run the module invariant suites");
    validate->add_option("--suite", suite)->check(CLI::IsMember({"fast", "all"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& ex) {
        if (ex.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        report_error("usage", ex.what());
        return kExitConfig;
    }

    try {
        if (front->parsed()) return cmd_front(config_path, out_path);
        if (norm->parsed()) return cmd_norm(config_path, out_path);
        if (poles->parsed()) return cmd_poles(g, a, m, branches, out_path);
        if (tau->parsed()) return cmd_tau(config_path);
        if (validate->parsed()) return cmd_validate(suite);
    } catch (const cli_config_error& ex) {
        report_error("config", ex.what());
        return kExitConfig;
    } catch (const domain_error& ex) {
        report_error("config", ex.what());
        return kExitConfig;
    } catch (const convergence_error& ex) {
        report_error("numerical", ex.what());
        return kExitNumerical;
    } catch (const std::exception& ex) {
        report_error("internal", ex.what());
        return kExitNumerical;
    }
    report_error("usage", "no subcommand selected");
    return kExitConfig;
}

}  // namespace gamow
