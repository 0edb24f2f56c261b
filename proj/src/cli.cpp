#include "rds/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "rds/coefficients.hpp"
#include "rds/conditions.hpp"
#include "rds/convergence.hpp"
#include "rds/grid.hpp"
#include "rds/json_io.hpp"
#include "rds/noise.hpp"
#include "rds/path_io.hpp"
#include "rds/rng.hpp"
#include "rds/perfection.hpp"
#include "rds/semiflow.hpp"
#include "rds/stats.hpp"
#include "rds/verification.hpp"

namespace rds::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kCommands = {"noise",      "simulate",    "verify",
                                            "conditions", "convergence", "perfect-demo"};

struct RunConfig {
    std::string command;
    std::string field = "ou";
    std::vector<std::string> params;
    double dt = 1e-3;
    double t_max = 2.0;
    std::optional<double> t_min;
    std::uint64_t seed = 1;
    std::size_t probes = 500;
    std::size_t paths = 500;
    std::string levels = "1:6";
    std::string out_dir = "rdsim_out";
    bool deterministic = false;
    double threshold = kDefaultPThreshold;
    std::vector<double> x;
    int dim = 1;
    std::string noise_kind = "brownian";
    double jump_rate = 1.0;
    double jump_scale = 0.5;
    std::int64_t eps = 100;
    std::size_t m = 7;
    std::size_t defects = 3;
};

// Raised for violated preconditions; maps to the usage exit code.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

FieldParams parse_params(const std::vector<std::string>& items) {
    FieldParams p;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--param expects key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(val, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != val.size() || val.empty())
            throw UsageError("--param " + key + " needs a number, got '" + val + "'");
        p[key] = v;
    }
    return p;
}

ExplosionLevels parse_levels(const std::string& spec) {
    const auto colon = spec.find(':');
    try {
        if (colon != std::string::npos)
            return ExplosionLevels::decades(std::stoi(spec.substr(0, colon)),
                                            std::stoi(spec.substr(colon + 1)));
        std::vector<double> radii;
        std::stringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) radii.push_back(std::stod(tok));
        return ExplosionLevels(std::move(radii));
    } catch (const std::invalid_argument& e) {
        throw UsageError("--levels '" + spec + "': " + e.what());
    } catch (const std::out_of_range&) {
        throw UsageError("--levels '" + spec + "' out of range");
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw UsageError(what);
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Session {
public:
    Session(RunConfig cfg, std::ostream& out, std::ostream& err)
        : cfg_(std::move(cfg)), out_(out), err_(err) {}

    int dispatch();

private:
    TimeGrid grid(double default_t_min) const {
        return make_grid(cfg_.t_min.value_or(default_t_min), cfg_.t_max, cfg_.dt);
    }

    CoefficientField field() const { return registry(cfg_.field, parse_params(cfg_.params)); }

    Vec start_point(int d, double fallback) const {
        if (cfg_.x.empty()) return Vec(static_cast<std::size_t>(d), fallback);
        if (cfg_.x.size() == 1) return Vec(static_cast<std::size_t>(d), cfg_.x[0]);
        require(cfg_.x.size() == static_cast<std::size_t>(d),
                "--x needs 1 or d = " + std::to_string(d) + " components");
        return cfg_.x;
    }

    fs::path prepare(const std::string& name) const {
        fs::create_directories(cfg_.out_dir);
        return fs::path(cfg_.out_dir) / name;
    }

    json config_json() const {
        json params = json::object();
        for (const auto& [k, v] : parse_params(cfg_.params)) params[k] = v;
        json j = {{"command", cfg_.command}, {"field", cfg_.field},   {"params", params},
                  {"dt", cfg_.dt},           {"t_max", cfg_.t_max},   {"seed", cfg_.seed},
                  {"probes", cfg_.probes},   {"paths", cfg_.paths},   {"levels", cfg_.levels},
                  {"threshold", cfg_.threshold}, {"x", cfg_.x}};
        j["t_min"] = cfg_.t_min ? json(*cfg_.t_min) : json(nullptr);
        if (!cfg_.deterministic) {
            const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            std::ostringstream os;
            os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
            j["generated_at"] = os.str();
        }
        return j;
    }

    void write_text(const std::string& name, const std::string& body) const {
        const fs::path file = prepare(name);
        std::ofstream(file) << body;
        json meta = {{"file", name}, {"config", config_json()}};
        std::ofstream(file.string() + ".meta.json") << meta.dump(2) << '\n';
        out_ << "wrote " << file.string() << '\n';
    }

    void write_json(const std::string& name, const json& j) const { write_text(name, j.dump(2) + "\n"); }

    int noise();
    int simulate();
    int verify();
    int conditions();
    int convergence();
    int perfect_demo();

    RunConfig cfg_;
    std::ostream& out_;
    std::ostream& err_;
};

int Session::dispatch() {
    require(cfg_.dt > 0.0 && std::isfinite(cfg_.dt), "--dt must be finite and > 0");
    require(cfg_.t_max > 0.0 && std::isfinite(cfg_.t_max), "--t-max must be finite and > 0");
    require(!cfg_.t_min || (*cfg_.t_min <= 0.0 && std::isfinite(*cfg_.t_min)),
            "--t-min must be finite and <= 0");
    require(cfg_.probes >= 1, "--probes must be >= 1");
    require(cfg_.paths >= 1, "--paths must be >= 1");
    require(cfg_.threshold > 0.0 && cfg_.threshold < 1.0, "--threshold must lie in (0, 1)");
    require(cfg_.dim >= 1, "--dim must be >= 1");
    (void)parse_levels(cfg_.levels);
    if (cfg_.command != "noise") (void)field();

    if (cfg_.command == "noise") return noise();
    if (cfg_.command == "simulate") return simulate();
    if (cfg_.command == "verify") return verify();
    if (cfg_.command == "conditions") return conditions();
    if (cfg_.command == "convergence") return convergence();
    return perfect_demo();
}

int Session::noise() {
    require(cfg_.noise_kind == "brownian" || cfg_.noise_kind == "jump",
            "--kind must be brownian or jump");
    require(cfg_.jump_rate >= 0.0 && cfg_.jump_scale >= 0.0, "jump rate and scale must be >= 0");
    const TimeGrid g = grid(-cfg_.t_max / 2.0);
    require(g.last >= 8 && -g.first >= 8, "noise tests need at least 8 steps on each side of 0");
    const auto ensemble =
        cfg_.noise_kind == "brownian"
            ? sample_wiener_ensemble(g, cfg_.dim, cfg_.paths, cfg_.seed)
            : sample_jump_diffusion_ensemble(g, cfg_.dim, cfg_.paths, cfg_.seed, cfg_.jump_rate,
                                             cfg_.jump_scale);
    const std::int64_t window = std::max<std::int64_t>(1, g.last / 4);
    const std::vector<std::int64_t> offsets = {g.first, g.first / 2, 0, g.last - window};
    const auto functionals = default_functionals();
    const std::int64_t k = g.last - window;

    std::vector<StatReport> reports;
    reports.push_back(test_stationary_increments(ensemble, window, offsets,
                                                 derive_seed(cfg_.seed, "stationary"),
                                                 cfg_.threshold, std::min(cfg_.paths, kDefaultMinEnsemble)));
    reports.push_back(test_measure_preserving(ensemble, k, window, functionals,
                                              derive_seed(cfg_.seed, "measure"), cfg_.threshold));
    reports.push_back(test_measure_preserving(ensemble, g.first, window, functionals,
                                              derive_seed(cfg_.seed, "measure-back"), cfg_.threshold));

    json arr = json::array();
    bool all = true;
    out_ << std::left << std::setw(32) << "test" << std::setw(14) << "min p" << "result\n";
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
        all = all && r.pass;
        out_ << std::setw(32) << r.name << std::setw(14) << fmt(r.min_pvalue())
             << (r.pass ? "pass" : "FAIL") << '\n';
    }
    write_json("noise_report.json", arr);
    std::ostringstream csv;
    write_path_csv(csv, ensemble.front());
    write_text("noise_path.csv", csv.str());
    return all ? kExitPass : kExitFailure;
}

int Session::simulate() {
    const auto f = field();
    const auto levels = parse_levels(cfg_.levels);
    const TimeGrid g = grid(0.0);
    const Vec x = start_point(f.dim, 1.0);
    const NoisePath path = sample_wiener(g, f.noise_dim, cfg_.seed);
    const Trajectory tr = flow(f, path, 0, x, levels, levels.size() >= 3);

    const std::string theta_cell = tr.theta ? fmt_full(g.time(*tr.theta)) : "inf";
    std::ostringstream csv;
    csv << 't';
    for (int i = 1; i <= f.dim; ++i) csv << ",x_" << i;
    csv << ",tag,theta\n";
    for (std::int64_t k = tr.start; k <= g.last; ++k) {
        const auto& st = tr.at(k);
        csv << fmt_full(g.time(k));
        for (int i = 0; i < f.dim; ++i)
            csv << ',' << (st.is_interior() ? fmt_full(st.point()[static_cast<std::size_t>(i)]) : "");
        csv << ',' << (st.is_interior() ? "interior" : "coffin") << ',' << theta_cell << '\n';
    }
    write_text("trajectory.csv", csv.str());

    json summary = {{"field", f.name}, {"x", x}, {"dt", g.dt}, {"seed", cfg_.seed}};
    summary["theta_index"] = tr.theta ? json(*tr.theta) : json(nullptr);
    summary["theta"] = tr.theta ? json(g.time(*tr.theta)) : json("> horizon");
    summary["exit_norm"] = number_json(tr.exit_norm);
    if (levels.size() >= 3) summary["explosion"] = to_json(tr.explosion, g);
    write_json("simulate.json", summary);

    out_ << "field " << f.name << ", theta = "
         << (tr.theta ? fmt(g.time(*tr.theta)) : std::string("> horizon (") + fmt(g.t_max()) + ")");
    if (levels.size() >= 3) out_ << (tr.explosion.censored() ? ", level exits censored" : ", level exits stabilized");
    out_ << '\n';
    return kExitPass;
}

int Session::verify() {
    const auto f = field();
    const auto levels = parse_levels(cfg_.levels);
    const TimeGrid g = grid(-cfg_.t_max / 2.0);
    require(g.last >= 1, "verify needs a window containing [0, dt]");
    const NoisePath path = sample_wiener(g, f.noise_dim, derive_seed(cfg_.seed, "path"));
    const auto reports = run_law_suite(f, path, levels, cfg_.probes, cfg_.seed);

    json arr = json::array();
    bool all = true;
    out_ << std::left << std::setw(18) << "law" << std::setw(8) << "probes" << std::setw(14)
         << "max_residual" << "exact\n";
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
        all = all && r.exact_pass;
        out_ << std::setw(18) << r.law << std::setw(8) << r.probes << std::setw(14)
             << fmt(r.max_residual) << (r.exact_pass ? "pass" : "FAIL") << '\n';
        for (const auto& s : r.failure_samples) out_ << "    " << s << '\n';
    }
    write_json("verify.json", arr);
    return all ? kExitPass : kExitFailure;
}

int Session::conditions() {
    const auto f = field();
    const double R = 2.0;
    const std::size_t n = cfg_.probes;
    std::vector<ConditionReport> reports;
    reports.push_back(check_local_monotonicity(f, f.dim + 3.0, R, n, derive_seed(cfg_.seed, 0)));
    if (f.growth_bound)
        reports.push_back(check_growth(f, f.growth_bound, 10.0, n, derive_seed(cfg_.seed, 1)));
    reports.push_back(check_ellipticity(f, R, n, derive_seed(cfg_.seed, 2)));
    if (f.dim <= 3) {
        std::vector<Vec> centers{Vec(static_cast<std::size_t>(f.dim), 0.0)};
        for (double c : {-1.0, 0.5, 1.0}) centers.emplace_back(static_cast<std::size_t>(f.dim), c);
        reports.push_back(check_drift_integrability(f, 2.0 * f.dim, centers));
    }
    const auto moment = [](double u) { return u * u + 1.0; };
    reports.push_back(check_exp_moment(f, moment, 0.1, 1.0, 1.0, std::max<std::size_t>(1, cfg_.paths / 4),
                                       std::max(cfg_.dt, 1e-2), derive_seed(cfg_.seed, 3)));

    json arr = json::array();
    bool failed = false;
    out_ << std::left << std::setw(22) << "condition" << std::setw(16) << "estimate" << "verdict\n";
    for (const auto& r : reports) {
        arr.push_back(to_json(r));
        failed = failed || r.verdict == Verdict::Fail;
        out_ << std::setw(22) << r.condition << std::setw(16) << fmt(r.estimate) << to_string(r.verdict)
             << '\n';
        for (const auto& note : r.notes) out_ << "    " << note << '\n';
    }
    write_json("conditions.json", arr);
    return failed ? kExitFailure : kExitPass;
}

int Session::convergence() {
    const auto f = field();
    const Vec x0 = start_point(f.dim, 1.0);
    ConvergenceTable table;
    try {
        table = strong_error(f, dyadic_steps(), cfg_.paths, cfg_.seed, x0, 1.0);
    } catch (const NoOracleError& e) {
        throw UsageError(e.what());
    }
    std::ostringstream csv;
    csv << "dt,rms_error\n";
    for (const auto& row : table.rows) csv << fmt_full(row.dt) << ',' << fmt_full(row.rms_error) << '\n';
    write_text("convergence.csv", csv.str());
    write_json("convergence.json", to_json(table));
    for (const auto& row : table.rows) out_ << "dt " << fmt(row.dt) << "  rms " << fmt(row.rms_error) << '\n';
    out_ << "empirical strong order " << fmt(table.order) << '\n';
    return kExitPass;
}

int Session::perfect_demo() {
    require(cfg_.m >= 3, "--m must be >= 3");
    require(cfg_.eps >= static_cast<std::int64_t>(cfg_.m), "--eps must be >= --m");
    require(cfg_.defects >= 1, "--defects must be >= 1");
    const auto f = field();
    const auto levels = parse_levels(cfg_.levels);
    const double need = -static_cast<double>(cfg_.eps) * cfg_.dt;
    const TimeGrid g = grid(std::min(-cfg_.t_max / 2.0, need));
    require(g.first <= -cfg_.eps, "--t-min must reach back at least eps steps");
    require(g.last > static_cast<std::int64_t>(cfg_.defects), "window too short for the defect set");
    const NoisePath path = sample_wiener(g, f.noise_dim, derive_seed(cfg_.seed, "path"));

    PerfectionSetup setup;
    setup.defect_count = cfg_.defects;
    setup.eps = cfg_.eps;
    setup.m = cfg_.m;
    const auto rep = verify_perfection_conclusions(f, path, levels, cfg_.probes, cfg_.seed, setup);

    std::set<std::int64_t> everywhere;
    for (std::int64_t s = 0; s <= cfg_.eps; ++s) everywhere.insert(s);
    const auto crude = inject_defect(f, levels, everywhere, DefectMode::Scramble);
    bool raised = false;
    std::string message;
    try {
        (void)perfect_estimate(crude, 0, std::min<std::int64_t>(g.last, 10), start_point(f.dim, 0.5),
                               path, cfg_.m, cfg_.eps, cfg_.seed);
    } catch (const InconsistentCrudeFlow& e) {
        raised = true;
        message = e.what();
    }

    json j = {{"conclusions", to_json(rep)},
              {"adversarial", {{"defects", everywhere.size()}, {"raised", raised}, {"message", message}}}};
    write_json("perfect.json", j);
    out_ << "perfection conclusions: " << (rep.exact_pass ? "pass" : "FAIL") << " (" << rep.probes
         << " probes)\n";
    for (const auto& [part, res] : rep.parts) out_ << "    " << part << " max residual " << fmt(res) << '\n';
    for (const auto& s : rep.failure_samples) out_ << "    " << s << '\n';
    out_ << "adversarial defects everywhere: "
         << (raised ? "InconsistentCrudeFlow raised" : "NOT detected") << '\n';
    return rep.exact_pass && raised ? kExitPass : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Simulation and law checks for random semi-flows of SDEs", "rdsim"};
    app.set_config("--config", "", "flat key = value file; flags override it");
    app.add_option("command", cfg.command, "noise | simulate | verify | conditions | convergence | perfect-demo")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("--field", cfg.field, "registry field name")->capture_default_str();
    app.add_option("--param", cfg.params, "field parameter key=value (repeatable)");
    app.add_option("--dt", cfg.dt, "grid step")->capture_default_str();
    app.add_option("--t-max", cfg.t_max, "right end of the window")->capture_default_str();
    app.add_option("--t-min", cfg.t_min, "left end of the window (<= 0)");
    app.add_option("--seed", cfg.seed, "root seed")->capture_default_str();
    app.add_option("--probes", cfg.probes, "law probes or condition samples")->capture_default_str();
    app.add_option("--paths", cfg.paths, "Monte Carlo paths")->capture_default_str();
    app.add_option("--levels", cfg.levels, "explosion levels: a:b for 10^a..10^b or a comma list")
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    app.add_flag("--deterministic", cfg.deterministic, "omit timestamps from sidecars");
    app.add_option("--threshold", cfg.threshold, "p-value threshold")->capture_default_str();
    app.add_option("--x", cfg.x, "start point (one value or d values)")->delimiter(',');
    app.add_option("--dim", cfg.dim, "noise dimension for the noise command")->capture_default_str();
    app.add_option("--kind", cfg.noise_kind, "noise kind: brownian | jump")->capture_default_str();
    app.add_option("--jump-rate", cfg.jump_rate, "jump intensity")->capture_default_str();
    app.add_option("--jump-scale", cfg.jump_scale, "jump size standard deviation")->capture_default_str();
    app.add_option("--eps", cfg.eps, "perfect-demo: maximal offset in steps")->capture_default_str();
    app.add_option("--m", cfg.m, "perfect-demo: crude evaluations per estimate")->capture_default_str();
    app.add_option("--defects", cfg.defects, "perfect-demo: size of the defect set")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        return Session(cfg, out, err).dispatch();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace rds::cli
