#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinforge/models.hpp"
#include "spinforge/observables.hpp"

namespace spinforge {

enum class Command { Dispersion, Chi, Evolve, Bell, Squeeze, Probe, Fidelity, PhaseDiagram };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

struct SweepSpec {
    double delta_min = -3.0;
    double delta_max = 3.0;
    int n_delta = 25;
    double gamma_min = 0.0;
    double gamma_max = 6.0;
    int n_gamma = 25;
};

struct ExperimentConfig {
    Command command = Command::Bell;
    ModelSpec model;
    double t_max = 0.0;       // 0 => pi / |chi|
    int n_points = 401;       // samples on [0, t_max], endpoints included
    SweepSpec sweep;
    std::string output_path;
    std::uint64_t seed = 0;
    int jobs = 0;             // 0 => hardware concurrency
    int n_theta = 0;          // 0 => 4 (N+1)
    int trotter_steps = 0;    // total steps over [0, t_max]; 0 => from dt cap
    double trotter_dt_max = 0.05;  // cap on dt * max(J0, h_z)
    FrameMode frame = FrameMode::Optimize;
    std::string probe_state = "evolved";  // coherent | ghz | oat_ghz | random_symmetric
    double probe_time = -1.0;             // evolved-state time; <0 => pi/(2|chi|)

    // Applies one "key = value" pair; throws config_error on unknown keys.
    void set(const std::string& key, const std::string& value);
    // Canonical echo of every key, for the metadata sidecar.
    std::map<std::string, std::string> echo() const;
};

ExperimentConfig parse_config_file(const std::string& path);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> extra_meta;  // command-specific entries
    std::string meta_json;
};

// Runs one experiment; writes <out>.csv atomically plus <out>.meta.json when
// output_path is set. Deterministic for a fixed config and seed.
ResultTable run(const ExperimentConfig& config);

// The phase-diagram scan: per (delta, gamma) cell, Qmax = max_t Q(t),
// min_t xi^2 (undefined-mean-spin times skipped) and min_t F_sym, rows in
// row-major (delta, gamma) order. Cells are dispatched to a worker pool.
ResultTable sweep(const ExperimentConfig& config);

// Format/IO helpers shared with the probe CSV writer.
std::string format_csv(const ResultTable& table);
void write_text_atomic(const std::string& path, const std::string& content);
std::string format_double(double v);  // 17 significant digits

extern const char* kVersion;

}  // namespace spinforge
