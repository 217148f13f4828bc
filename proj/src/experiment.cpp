#include "spinforge/experiment.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "spinforge/evolve.hpp"
#include "spinforge/probe.hpp"
#include "spinforge/swt.hpp"

namespace spinforge {

const char* kVersion = "0.1.0";

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw config_error("key '" + key + "': expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': expected a number, got '" + v + "'");
    }
}

long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': expected an integer, got '" + v + "'");
    }
}

std::string frame_to_string(FrameMode m) {
    switch (m) {
        case FrameMode::Identity: return "identity";
        case FrameMode::FixedRotation: return "fixed";
        case FrameMode::Optimize: return "optimize";
    }
    return "?";
}

FrameMode frame_from_string(const std::string& s) {
    if (s == "identity") return FrameMode::Identity;
    if (s == "fixed" || s == "fixed_rotation") return FrameMode::FixedRotation;
    if (s == "optimize") return FrameMode::Optimize;
    throw config_error("unknown frame mode '" + s + "'");
}

double effective_chi(const ModelSpec& spec) { return analytic_chi(spec); }

// Time horizon: pi/|chi| puts the peak coherence time chi t = pi/2 mid-grid.
double default_t_max(const ModelSpec& spec) {
    const double chi = effective_chi(spec);
    if (std::abs(chi) < 1e-12) return 10.0 / spec.j0;
    return kPi / std::abs(chi);
}

std::vector<double> time_grid(double t_max, int n_points) {
    if (n_points < 2) throw config_error("n_points must be at least 2");
    if (!(t_max > 0)) throw config_error("t_max must be positive");
    std::vector<double> t(n_points);
    for (int j = 0; j < n_points; ++j) t[j] = t_max * j / (n_points - 1);
    return t;
}

// Closed-form OAT evolution of the coherent state: a phase chi t m^2 per sector.
StateVector oat_state(int n, double chi, double t) {
    StateVector s = coherent_x_state(n);
    const std::complex<double> i(0.0, 1.0);
    for (Eigen::Index b = 0; b < s.amplitudes.size(); ++b) {
        const double m = 0.5 * n - std::popcount(static_cast<std::uint64_t>(b));
        s.amplitudes[b] *= std::exp(-i * chi * t * m * m);
    }
    return s;
}

double bell_value(const StateVector& psi, FrameMode mode) { return bell_q(psi, mode).q; }

double xi2_or_nan(const StateVector& psi) {
    try {
        return spin_squeezing(psi).xi2;
    } catch (const undefined_mean_spin_error&) {
        return kNan;
    }
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string to_string(Command c) {
    switch (c) {
        case Command::Dispersion: return "dispersion";
        case Command::Chi: return "chi";
        case Command::Evolve: return "evolve";
        case Command::Bell: return "bell";
        case Command::Squeeze: return "squeeze";
        case Command::Probe: return "probe";
        case Command::Fidelity: return "fidelity";
        case Command::PhaseDiagram: return "phase-diagram";
    }
    return "?";
}

Command command_from_string(const std::string& s) {
    if (s == "dispersion") return Command::Dispersion;
    if (s == "chi") return Command::Chi;
    if (s == "evolve") return Command::Evolve;
    if (s == "bell") return Command::Bell;
    if (s == "squeeze") return Command::Squeeze;
    if (s == "probe") return Command::Probe;
    if (s == "fidelity") return Command::Fidelity;
    if (s == "phase-diagram") return Command::PhaseDiagram;
    throw config_error("unknown command '" + s + "'");
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    try {
        if (key == "command") command = command_from_string(value);
        else if (key == "kind") model.kind = model_kind_from_string(value);
        else if (key == "n") model.n_sites = int(parse_int(key, value));
        else if (key == "j0") model.j0 = parse_double(key, value);
        else if (key == "hz") model.h_z = parse_double(key, value);
        else if (key == "delta") model.delta = parse_double(key, value);
        else if (key == "gamma") model.gamma = parse_double(key, value);
        else if (key == "kac") model.kac = parse_bool(key, value);
        else if (key == "distance") model.distance = distance_from_string(value);
        else if (key == "chi") model.chi = parse_double(key, value);
        else if (key == "t_max") t_max = parse_double(key, value);
        else if (key == "n_points") n_points = int(parse_int(key, value));
        else if (key == "delta_min") sweep.delta_min = parse_double(key, value);
        else if (key == "delta_max") sweep.delta_max = parse_double(key, value);
        else if (key == "n_delta") sweep.n_delta = int(parse_int(key, value));
        else if (key == "gamma_min") sweep.gamma_min = parse_double(key, value);
        else if (key == "gamma_max") sweep.gamma_max = parse_double(key, value);
        else if (key == "n_gamma") sweep.n_gamma = int(parse_int(key, value));
        else if (key == "out") output_path = value;
        else if (key == "seed") seed = std::uint64_t(parse_int(key, value));
        else if (key == "jobs") jobs = int(parse_int(key, value));
        else if (key == "n_theta") n_theta = int(parse_int(key, value));
        else if (key == "trotter_steps") trotter_steps = int(parse_int(key, value));
        else if (key == "trotter_dt_max") trotter_dt_max = parse_double(key, value);
        else if (key == "frame") frame = frame_from_string(value);
        else if (key == "probe_state") probe_state = value;
        else if (key == "probe_time") probe_time = parse_double(key, value);
        else throw config_error("unknown config key '" + key + "'");
    } catch (const argument_error&) {
        throw;
    }
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
    std::map<std::string, std::string> kv;
    kv["command"] = to_string(command);
    kv["kind"] = spinforge::to_string(model.kind);
    kv["n"] = std::to_string(model.n_sites);
    kv["j0"] = format_double(model.j0);
    kv["hz"] = format_double(model.h_z);
    kv["delta"] = format_double(model.delta);
    kv["gamma"] = format_double(model.gamma);
    kv["kac"] = model.kac ? "true" : "false";
    kv["distance"] = spinforge::to_string(model.distance);
    kv["chi"] = format_double(model.chi);
    kv["t_max"] = format_double(t_max);
    kv["n_points"] = std::to_string(n_points);
    kv["delta_min"] = format_double(sweep.delta_min);
    kv["delta_max"] = format_double(sweep.delta_max);
    kv["n_delta"] = std::to_string(sweep.n_delta);
    kv["gamma_min"] = format_double(sweep.gamma_min);
    kv["gamma_max"] = format_double(sweep.gamma_max);
    kv["n_gamma"] = std::to_string(sweep.n_gamma);
    kv["out"] = output_path;
    kv["seed"] = std::to_string(seed);
    kv["jobs"] = std::to_string(jobs);
    kv["n_theta"] = std::to_string(n_theta);
    kv["trotter_steps"] = std::to_string(trotter_steps);
    kv["trotter_dt_max"] = format_double(trotter_dt_max);
    kv["frame"] = frame_to_string(frame);
    kv["probe_state"] = probe_state;
    kv["probe_time"] = format_double(probe_time);
    return kv;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) + ": expected key = value");
        }
        config.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return config;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_csv(const ResultTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw numerical_error("cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw numerical_error("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw numerical_error("rename to '" + path + "' failed");
    }
}

namespace {

ResultTable run_dispersion(const ExperimentConfig& config) {
    const ModelSpec& spec = config.model;
    if (spec.kind != ModelKind::StaggeredXXX && spec.kind != ModelKind::LongRangeXXZ) {
        throw config_error("dispersion command supports staggered_xxx and longrange_xxz");
    }
    if (spec.kind == ModelKind::StaggeredXXX && spec.h_z != 0.0) {
        throw config_error("dispersion needs the translation-invariant chain: set hz = 0");
    }
    const CouplingProfile profile = coupling_profile(spec);
    const double delta = spec.kind == ModelKind::LongRangeXXZ ? spec.delta : 0.0;
    const auto numeric = one_magnon_energies(build_model(spec));
    ResultTable table;
    table.columns = {"q", "eps_analytic", "eps_numeric", "abs_diff"};
    for (const auto& [q, e_num] : numeric) {
        const double e_ana = dispersion(profile, delta, q);
        table.rows.push_back({q, e_ana, e_num, std::abs(e_num - e_ana)});
    }
    return table;
}

ResultTable run_chi(const ExperimentConfig& config) {
    const ModelSpec& spec = config.model;
    const double chi_ana = analytic_chi(spec);
    const double chi_num = chi_numeric(build_model(spec), spec.n_sites);
    ResultTable table;
    table.columns = {"n", "chi_analytic", "chi_numeric", "abs_dev", "rel_dev"};
    std::vector<double> row = {double(spec.n_sites), chi_ana, chi_num,
                               std::abs(chi_num - chi_ana),
                               chi_ana != 0.0 ? std::abs(chi_num - chi_ana) / std::abs(chi_ana)
                                              : kNan};
    if (spec.kind == ModelKind::StaggeredXXX || spec.kind == ModelKind::LongRangeXXZ) {
        const CouplingProfile profile = coupling_profile(spec);
        const double delta = spec.kind == ModelKind::LongRangeXXZ ? spec.delta : 0.0;
        table.columns.push_back("gap");
        row.push_back(magnon_gap(profile, delta));
        if (spec.kind == ModelKind::StaggeredXXX) {
            // The staggered field drives the q = pi mode, so the protecting
            // gap is eps(pi) = 2 J0, not the band minimum.
            const ValidityResult v = perturbative_validity(spec.h_z, dispersion(profile, 0.0, kPi));
            table.columns.push_back("h_over_gap");
            table.columns.push_back("valid");
            row.push_back(v.ratio);
            row.push_back(v.valid ? 1.0 : 0.0);
        }
    }
    table.rows.push_back(std::move(row));
    return table;
}

struct EvolutionContext {
    HamiltonianOp h;
    Propagator prop;
    StateVector psi0;
    double chi;
    std::vector<double> times;
};

EvolutionContext make_context(const ExperimentConfig& config) {
    const ModelSpec& spec = config.model;
    HamiltonianOp h = build_model(spec);
    const double t_max = config.t_max > 0 ? config.t_max : default_t_max(spec);
    EvolutionContext ctx{std::move(h), {}, coherent_x_state(spec.n_sites),
                         effective_chi(spec), time_grid(t_max, config.n_points)};
    ctx.prop = make_propagator(ctx.h);
    return ctx;
}

ResultTable run_evolve(const ExperimentConfig& config) {
    EvolutionContext ctx = make_context(config);
    const int n = config.model.n_sites;
    const SymmetricProjector proj = symmetric_projector(n);
    std::array<HamiltonianOp, 3> coll = {collective_operator(SpinAxis::X, n),
                                         collective_operator(SpinAxis::Y, n),
                                         collective_operator(SpinAxis::Z, n)};
    ResultTable table;
    table.columns = {"t", "chi_t_over_pi", "energy", "s_x", "s_y", "s_z", "f_sym"};
    for (double t : ctx.times) {
        const StateVector psi = ctx.prop.evolve(ctx.psi0, t);
        std::vector<double> row = {t, std::abs(ctx.chi) * t / kPi,
                                   ctx.h.expectation(psi).real()};
        for (int a = 0; a < 3; ++a) row.push_back(coll[a].expectation(psi).real());
        row.push_back(symmetric_fidelity(psi, proj));
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_bell(const ExperimentConfig& config) {
    const ModelSpec& spec = config.model;
    EvolutionContext ctx = make_context(config);
    const int n = spec.n_sites;
    const bool with_trotter = spec.kind == ModelKind::StaggeredXXX;
    ResultTable table;
    table.columns = {"t", "chi_t_over_pi", "Q_exact", "Q_oat"};
    if (with_trotter) table.columns.push_back("Q_trotter");

    // Continuous Trotter stepping across the uniform grid.
    int steps_per_interval = 0;
    TrotterPlan plan;
    StateVector trotter_state = ctx.psi0;
    if (with_trotter) {
        const double interval = ctx.times[1] - ctx.times[0];
        const double scale = std::max(spec.j0, std::abs(spec.h_z));
        if (config.trotter_steps > 0) {
            steps_per_interval = std::max(
                1, (config.trotter_steps + config.n_points - 2) / (config.n_points - 1));
        } else {
            steps_per_interval = std::max(1, int(std::ceil(interval * scale /
                                                           config.trotter_dt_max)));
        }
        plan = build_trotter_plan(spec, interval, steps_per_interval);
        table.extra_meta["trotter_total_steps"] =
            std::to_string(std::size_t(steps_per_interval) * (config.n_points - 1));
        table.extra_meta["trotter_dt"] = format_double(plan.dt);
    }
    for (std::size_t j = 0; j < ctx.times.size(); ++j) {
        const double t = ctx.times[j];
        if (with_trotter && j > 0) {
            for (int s = 0; s < steps_per_interval; ++s) apply_trotter_step(plan, trotter_state);
        }
        std::vector<double> row = {t, std::abs(ctx.chi) * t / kPi,
                                   bell_value(ctx.prop.evolve(ctx.psi0, t), config.frame),
                                   bell_value(oat_state(n, ctx.chi, t), config.frame)};
        if (with_trotter) row.push_back(bell_value(trotter_state, config.frame));
        table.rows.push_back(std::move(row));
    }
    return table;
}

ResultTable run_squeeze(const ExperimentConfig& config) {
    EvolutionContext ctx = make_context(config);
    ResultTable table;
    table.columns = {"t", "chi_t_over_pi", "xi2_exact", "xi2_oat"};
    for (double t : ctx.times) {
        table.rows.push_back({t, std::abs(ctx.chi) * t / kPi,
                              xi2_or_nan(ctx.prop.evolve(ctx.psi0, t)),
                              xi2_or_nan(oat_state(config.model.n_sites, ctx.chi, t))});
    }
    return table;
}

ResultTable run_fidelity(const ExperimentConfig& config) {
    EvolutionContext ctx = make_context(config);
    const SymmetricProjector proj = symmetric_projector(config.model.n_sites);
    std::vector<double> values;
    values.reserve(ctx.times.size());
    for (double t : ctx.times) {
        values.push_back(symmetric_fidelity(ctx.prop.evolve(ctx.psi0, t), proj));
    }
    const TimeSeries series = make_time_series(ctx.times, std::move(values), ctx.chi,
                                               to_string(config.model.kind));
    ResultTable table;
    table.columns = {"t", "chi_t_over_pi", "f_sym"};
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        table.rows.push_back({series.times[k], series.rescaled[k], series.values[k]});
    }
    return table;
}

StateVector probe_input_state(const ExperimentConfig& config) {
    const ModelSpec& spec = config.model;
    const int n = spec.n_sites;
    if (config.probe_state == "coherent") return coherent_x_state(n);
    if (config.probe_state == "ghz") return ghz_z_state(n);
    if (config.probe_state == "oat_ghz") {
        return oat_state(n, 1.0, kPi / 2);
    }
    if (config.probe_state == "random_symmetric") {
        std::mt19937_64 rng(config.seed);
        std::normal_distribution<double> dist;
        Eigen::VectorXcd coeff(n + 1);
        for (int k = 0; k <= n; ++k) coeff[k] = std::complex<double>(dist(rng), dist(rng));
        const SymmetricProjector proj = symmetric_projector(n);
        Eigen::VectorXcd amps = proj.basis_vectors * coeff;
        amps /= amps.norm();
        return make_state(n, std::move(amps));
    }
    if (config.probe_state == "evolved") {
        const double chi = effective_chi(spec);
        double t = config.probe_time;
        if (t < 0) {
            t = std::abs(chi) < 1e-12 ? 0.0 : kPi / (2 * std::abs(chi));
        }
        return exact_evolve(build_model(spec), coherent_x_state(n), {t}).front();
    }
    throw config_error("unknown probe_state '" + config.probe_state + "'");
}

ResultTable run_probe(const ExperimentConfig& config) {
    const int n = config.model.n_sites;
    const int n_theta = config.n_theta > 0 ? config.n_theta : 4 * (n + 1);
    const ProbeGrid grid = sample_probe_grid(probe_input_state(config), n_theta);
    ResultTable table;
    table.columns = {"k", "tau", "theta", "re_a", "im_a"};
    for (int k = 0; k < grid.a.rows(); ++k) {
        for (int j = 0; j < grid.a.cols(); ++j) {
            table.rows.push_back({double(k), grid.tau_grid[k], grid.theta_grid[j],
                                  grid.a(k, j).real(), grid.a(k, j).imag()});
        }
    }
    return table;
}

struct SweepCell {
    double q_max;
    double xi2_min;
    double f_sym_min;
};

SweepCell compute_cell(ModelSpec spec, const ExperimentConfig& config,
                       const SymmetricProjector& proj) {
    const HamiltonianOp h = build_longrange_xxz(spec);
    const Propagator prop = make_propagator(h);
    const StateVector psi0 = coherent_x_state(spec.n_sites);
    const double t_max = config.t_max > 0 ? config.t_max : default_t_max(spec);
    SweepCell cell{-std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
    for (double t : time_grid(t_max, config.n_points)) {
        const StateVector psi = prop.evolve(psi0, t);
        cell.q_max = std::max(cell.q_max, bell_value(psi, config.frame));
        const double xi = xi2_or_nan(psi);
        if (!std::isnan(xi)) cell.xi2_min = std::min(cell.xi2_min, xi);
        cell.f_sym_min = std::min(cell.f_sym_min, symmetric_fidelity(psi, proj));
    }
    return cell;
}

}  // namespace

ResultTable sweep(const ExperimentConfig& config) {
    if (config.model.kind != ModelKind::LongRangeXXZ) {
        throw config_error("phase-diagram sweeps run over the longrange_xxz model");
    }
    const SweepSpec& sw = config.sweep;
    if (sw.n_delta < 1 || sw.n_gamma < 1) throw config_error("sweep grid sizes must be >= 1");
    const SymmetricProjector proj = symmetric_projector(config.model.n_sites);
    const int n_cells = sw.n_delta * sw.n_gamma;
    std::vector<SweepCell> cells(n_cells);
    std::vector<std::pair<double, double>> params(n_cells);
    for (int id = 0; id < sw.n_delta; ++id) {
        const double delta = sw.n_delta == 1
                                 ? sw.delta_min
                                 : sw.delta_min + (sw.delta_max - sw.delta_min) * id /
                                                      (sw.n_delta - 1);
        for (int ig = 0; ig < sw.n_gamma; ++ig) {
            const double gamma = sw.n_gamma == 1
                                     ? sw.gamma_min
                                     : sw.gamma_min + (sw.gamma_max - sw.gamma_min) * ig /
                                                          (sw.n_gamma - 1);
            params[id * sw.n_gamma + ig] = {delta, gamma};
        }
    }
    int jobs = config.jobs > 0 ? config.jobs
                               : int(std::max(1u, std::thread::hardware_concurrency()));
    jobs = std::min(jobs, n_cells);
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    auto worker = [&](int worker_id) {
        try {
            for (int c = next.fetch_add(1); c < n_cells; c = next.fetch_add(1)) {
                ModelSpec spec = config.model;
                spec.delta = params[c].first;
                spec.gamma = params[c].second;
                cells[c] = compute_cell(spec, config, proj);
            }
        } catch (...) {
            errors[worker_id] = std::current_exception();
        }
    };
    if (jobs <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
    ResultTable table;
    table.columns = {"delta", "gamma", "q_max", "xi2_min", "f_sym_min"};
    for (int c = 0; c < n_cells; ++c) {
        table.rows.push_back({params[c].first, params[c].second, cells[c].q_max,
                              cells[c].xi2_min, cells[c].f_sym_min});
    }
    return table;
}

ResultTable run(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    config.model.validate();
    ResultTable table;
    switch (config.command) {
        case Command::Dispersion: table = run_dispersion(config); break;
        case Command::Chi: table = run_chi(config); break;
        case Command::Evolve: table = run_evolve(config); break;
        case Command::Bell: table = run_bell(config); break;
        case Command::Squeeze: table = run_squeeze(config); break;
        case Command::Probe: table = run_probe(config); break;
        case Command::Fidelity: table = run_fidelity(config); break;
        case Command::PhaseDiagram: table = sweep(config); break;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json meta;
    meta["version"] = kVersion;
    meta["command"] = to_string(config.command);
    meta["config"] = config.echo();
    meta["columns"] = table.columns;
    meta["rows"] = table.rows.size();
    meta["wall_time_s"] = wall;
    meta["timestamp_utc"] = iso_timestamp();
    for (const auto& [key, value] : table.extra_meta) meta[key] = value;
    table.meta_json = meta.dump(2);
    if (!config.output_path.empty()) {
        write_text_atomic(config.output_path, format_csv(table));
        write_text_atomic(config.output_path + ".meta.json", table.meta_json);
    }
    return table;
}

}  // namespace spinforge
