#include "fracctl/experiment.hpp"

#include "fracctl/parallel_kernels.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace fs = std::filesystem;

namespace fracctl {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Writer {
public:
    explicit Writer(fs::path dir) : dir_(std::move(dir)) {}

    void write(const std::string& name, const std::string& body) {
        std::ofstream f(dir_ / name, std::ios::binary);
        f << body;
        if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
        files_.push_back(name);
    }
    const std::vector<std::string>& files() const { return files_; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string iterations_text(const IterationReport& r) {
    std::ostringstream os;
    os << "# n residual image_residual boundary_error cost update_norm picard_sweeps\n";
    for (const auto& rec : r.records) {
        os << rec.n << ' ' << num(rec.residual) << ' ' << num(rec.image_residual) << ' ' << num(rec.boundary_error)
           << ' ' << num(rec.cost) << ' ' << num(rec.update_norm) << ' ' << rec.picard_sweeps << '\n';
    }
    os << "# status " << to_string(r.status);
    if (!r.message.empty()) os << ": " << r.message;
    os << '\n';
    return os.str();
}

std::string control_text(const ControlSignal& u) {
    std::ostringstream os;
    os << "# k t_start t_end u\n";
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        os << k << ' ' << num(u.grid.t(int(k))) << ' ' << num(u.grid.t(int(k) + 1)) << ' ' << num(u.values[k])
           << '\n';
    }
    return os.str();
}

std::string boundary_text(const ControlProblem& p, const std::optional<Field>& reached) {
    std::optional<BoundaryProfile> tr;
    if (reached) tr = trace(*reached, p.gamma);
    std::ostringstream os;
    os << "# s z_d reached\n";
    for (int i = 0; i < p.z_d.size(); ++i) {
        const double r = tr ? tr->values[i] : std::numeric_limits<double>::quiet_NaN();
        os << num(p.z_d.s[i]) << ' ' << num(p.z_d.values[i]) << ' ' << num(r) << '\n';
    }
    return os.str();
}

std::string omega_text(const ControlProblem& p, const std::optional<Field>& reached) {
    const RectDomain& d = p.basis.domain();
    std::ostringstream os;
    os << "# x y d_s reached\n";
    for (std::size_t a = 0; a < p.d_s.ix.size(); ++a) {
        for (std::size_t b = 0; b < p.d_s.iy.size(); ++b) {
            const int i = p.d_s.ix[a], j = p.d_s.iy[b];
            const double r = reached ? (*reached)(i, j) : std::numeric_limits<double>::quiet_NaN();
            os << num(d.x(i)) << ' ' << num(d.y(j)) << ' ' << num(p.d_s.values(int(a), int(b))) << ' ' << num(r)
               << '\n';
        }
        os << '\n';
    }
    return os.str();
}

std::string full_text(const RectDomain& d, const std::optional<Field>& reached) {
    std::ostringstream os;
    os << "# x y reached\n";
    for (int i = 0; i < d.nx; ++i) {
        for (int j = 0; j < d.ny; ++j) {
            const double r = reached ? (*reached)(i, j) : std::numeric_limits<double>::quiet_NaN();
            os << num(d.x(i)) << ' ' << num(d.y(j)) << ' ' << num(r) << '\n';
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json nan_safe(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

void write_manifest(Writer& w, const std::string& command, const ExperimentConfig& cfg, const RunOptions& opts,
                    const std::string& started, const std::string& summary_block, const std::string& hypotheses) {
    std::ostringstream os;
    os << "# run manifest\n"
       << "tool = " << kToolVersion << "\n"
       << "command = " << command << "\n";
    if (!opts.command_line.empty()) os << "invocation = " << opts.command_line << "\n";
    os << "threads = " << worker_threads() << "\n"
       << "started = " << started << "\n"
       << "finished = " << utc_now() << "\n\n"
       << ">>> config\n"
       << format_config(cfg) << "<<< config\n\n";
    if (!summary_block.empty()) os << summary_block << "\n";
    if (!hypotheses.empty()) os << hypotheses << "\n";
    os << "[files]\n";
    for (const auto& f : w.files()) {
        const fs::path path = w.dir() / f;
        os << sha256_file(path.string()) << "  " << fs::file_size(path) << "  " << f << "\n";
    }
    std::ofstream out(w.dir() / "manifest.txt", std::ios::binary);
    out << os.str();
}

void apply_threads(const RunOptions& opts) {
    if (opts.threads > 0) set_worker_threads(opts.threads);
}

fs::path prepare_dir(const std::string& dir) {
    const fs::path p = dir.empty() ? fs::path("fracctl_out") : fs::path(dir);
    fs::create_directories(p);
    return p;
}

}  // namespace

std::string sha256_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + path);
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (f) {
        f.read(buf, sizeof buf);
        if (f.gcount() > 0) EVP_DigestUpdate(ctx, buf, std::size_t(f.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return os.str();
}

int exit_code_for(RunStatus s) {
    switch (s) {
        case RunStatus::converged: return exit_ok;
        case RunStatus::diverged: return exit_diverged;
        case RunStatus::max_iterations: return exit_max_iterations;
    }
    return exit_diverged;
}

RunOutcome run_experiment(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& log) {
    apply_threads(opts);
    const std::string started = utc_now();
    Writer w(prepare_dir(opts.out_dir));

    const ControlProblem p = build_problem(cfg, Exec::parallel);
    const SpectralSolver solver(p.basis, p.actuator, p.grid, p.alpha, p.exec);
    const ControllabilityOperator H = assemble_H(solver, p.omega_c, p.lambda_reg);

    ControlResult res;
    switch (cfg.method) {
        case Method::algorithm1: res = algorithm1(p, solver, H); break;
        case Method::picard: res = picard_sequence(p, solver, H); break;
        case Method::linear: res = linear_run(p, solver, H); break;
    }
    if (res.control.values.empty()) res.control = ControlSignal(p.grid);

    std::optional<Field> reached;
    if (!res.trajectory.snapshots.empty()) reached = res.trajectory.final_state();

    RunOutcome out;
    out.status = res.report.status;
    out.iterations = int(res.report.records.size());
    out.cost = res.control.cost();
    out.residual = std::numeric_limits<double>::quiet_NaN();
    out.boundary_error = std::numeric_limits<double>::quiet_NaN();
    if (!res.report.records.empty()) {
        out.residual = res.report.records.back().residual;
        out.boundary_error = res.report.records.back().boundary_error;
    }
    out.exit_code = exit_code_for(out.status);

    std::string hypotheses;
    std::optional<HypothesisReport> rep;
    if (opts.diagnostics) {
        DiagnosticsOptions dopt;
        dopt.q = cfg.q;
        dopt.fn_samples = cfg.fn_samples;
        dopt.seed = cfg.seed;
        rep = run_diagnostics(p, solver, H, dopt);
        if (reached) attach_run(*rep, res.trajectory, p.basis, p.grid);
        hypotheses = format_report(*rep);
    }

    w.write("iterations.txt", iterations_text(res.report));
    w.write("control.dat", control_text(res.control));
    w.write("boundary.dat", boundary_text(p, reached));
    w.write("state_omega_c.dat", omega_text(p, reached));
    w.write("state_full.dat", full_text(p.basis.domain(), reached));
    if (rep) w.write("hypotheses.txt", hypotheses);

    nlohmann::ordered_json js;
    js["name"] = cfg.name;
    js["method"] = to_string(cfg.method);
    js["status"] = to_string(out.status);
    js["message"] = res.report.message;
    js["iterations"] = out.iterations;
    js["residual_omega_c"] = nan_safe(out.residual);
    js["boundary_error"] = nan_safe(out.boundary_error);
    js["cost"] = nan_safe(out.cost);
    js["lambda_reg"] = H.lambda_reg();
    js["picard_sweeps_total"] = res.trajectory.snapshots.empty() ? 0 : res.trajectory.total_sweeps();
    nlohmann::ordered_json ratios = nlohmann::ordered_json::array();
    for (double r : res.report.contraction_ratios()) ratios.push_back(nan_safe(r));
    js["contraction_ratios"] = ratios;
    if (rep) {
        js["hypotheses"] = {
            {"A1", rep->A1},
            {"A1_q0", rep->A1_q0},
            {"A1_q0_closed_form", rep->A1_q0_closed_form},
            {"mu", rep->mu},
            {"g_alpha_norm", nan_safe(rep->g_alpha_norm)},
            {"A_s", nan_safe(rep->constants.A_s)},
            {"kappa", rep->constants.kappa},
            {"sigma_min", rep->spectrum.sigma_min},
            {"sigma_max", rep->spectrum.sigma_max},
            {"gram_sigma_min", rep->gram_sigma_min},
            {"effective_rank", rep->spectrum.effective_rank},
            {"H1", to_string(rep->h1)},
            {"H2", to_string(rep->h2)},
            {"contraction", to_string(rep->contraction)},
        };
        if (rep->constants_run) js["hypotheses"]["A_s_run"] = nan_safe(rep->constants_run->A_s);
    }
    w.write("summary.json", js.dump(2) + "\n");

    std::ostringstream summary;
    summary << "[summary]\nstatus = " << to_string(out.status) << "\niterations = " << out.iterations
            << "\nresidual_omega_c = " << num(out.residual) << "\nboundary_error = " << num(out.boundary_error)
            << "\ncost = " << num(out.cost) << "\n";
    write_manifest(w, "run", cfg, opts, started, summary.str(), hypotheses);
    out.files = w.files();
    out.files.push_back("manifest.txt");

    log << cfg.name << ": " << to_string(cfg.method) << " " << to_string(out.status) << " after " << out.iterations
        << " iteration(s)";
    if (!res.report.message.empty()) log << " (" << res.report.message << ")";
    log << "\n  residual on omega_c " << num(out.residual) << "\n  boundary error " << num(out.boundary_error)
        << "\n  cost " << num(out.cost) << "\n  artifacts in " << w.dir().string() << "\n";
    return out;
}

int verify_experiment(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& log) {
    apply_threads(opts);
    const std::string started = utc_now();
    const ControlProblem p = build_problem(cfg, Exec::parallel);
    const SpectralSolver solver(p.basis, p.actuator, p.grid, p.alpha, p.exec);
    const ControllabilityOperator H = assemble_H(solver, p.omega_c, p.lambda_reg);
    DiagnosticsOptions dopt;
    dopt.q = cfg.q;
    dopt.fn_samples = cfg.fn_samples;
    dopt.seed = cfg.seed;
    const HypothesisReport rep = run_diagnostics(p, solver, H, dopt);
    const std::string text = format_report(rep);
    log << text;
    if (!opts.out_dir.empty()) {
        Writer w(prepare_dir(opts.out_dir));
        w.write("hypotheses.txt", text);
        write_manifest(w, "verify", cfg, opts, started, "", text);
    }
    return rep.any_violated() ? exit_hypothesis : exit_ok;
}

int sweep_experiment(const ExperimentConfig& cfg, const std::string& parameter, const std::vector<std::string>& values,
                     const RunOptions& opts, std::ostream& log) {
    static const std::vector<std::string> allowed = {"alpha", "K", "mx", "epsilon", "lambda_reg"};
    if (std::find(allowed.begin(), allowed.end(), parameter) == allowed.end()) {
        throw ConfigError("sweep parameter must be one of alpha, K, mx, epsilon, lambda_reg", 0);
    }
    const fs::path root = prepare_dir(opts.out_dir);
    std::ostringstream table;
    table << "# " << parameter << " status boundary_error cost iterations exit_code\n";
    int code = exit_ok;
    for (const std::string& v : values) {
        ExperimentConfig row = cfg;
        RunOptions ro = opts;
        ro.out_dir = (root / (parameter + "=" + v)).string();
        ro.diagnostics = false;
        std::string status;
        RunOutcome o;
        try {
            set_parameter(row, parameter, v);
            o = run_experiment(row, ro, log);
            status = to_string(o.status);
        } catch (const ConfigError& e) {
            log << parameter << " = " << v << ": " << e.what() << "\n";
            status = "config-error";
            o.exit_code = exit_config;
            o.boundary_error = o.cost = std::numeric_limits<double>::quiet_NaN();
        }
        table << v << ' ' << status << ' ' << num(o.boundary_error) << ' ' << num(o.cost) << ' ' << o.iterations << ' '
              << o.exit_code << '\n';
        if (code == exit_ok) code = o.exit_code;
    }
    std::ofstream(root / "sweep.dat", std::ios::binary) << table.str();
    log << table.str();
    return code;
}

}  // namespace fracctl
