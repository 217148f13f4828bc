#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "spinforge/spinspace.hpp"

namespace spinforge {

enum class FrameMode { Identity, FixedRotation, Optimize };

struct BellResult {
    double coherence = 0.0;  // E in [0, 1/4]
    double q = 0.0;          // N + log2(E); -inf sentinel when E = 0
    CollectiveFrame frame;
};

struct SqueezingResult {
    double xi2 = 0.0;
    Eigen::Vector3d mean_spin = Eigen::Vector3d::Zero();
    double optimal_angle = 0.0;  // minimizing direction in the perpendicular plane
};

// Ordered (time, value) records plus the rescaled |chi| t / pi axis.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> rescaled;  // optional, |chi| t / pi
    std::string metadata;
};

// Validates strictly increasing times and matching lengths.
TimeSeries make_time_series(std::vector<double> times, std::vector<double> values,
                            double chi, std::string metadata);

// E = |<up^N|psi'>|^2 |<down^N|psi'>|^2 of the frame-rotated state.
double ghz_coherence(const StateVector& state, const CollectiveFrame& frame);

// Q = N + log2 E. Optimize mode scans the two-angle family
// psi' = exp(-i beta S_y) exp(-i alpha S_z) psi on a 64x64 grid with a local
// refinement pass; the fixed frame is the single rotation exp(-i pi/2 S_y)
// that maps the x-aligned coherences of the twisting dynamics onto z (the
// same frame the probe protocol certifies against).
BellResult bell_q(const StateVector& state, FrameMode mode);

// xi_R^2 = N (Delta S_perp^2)_min / |<S>|^2, minimized analytically over the
// plane perpendicular to the mean spin.
SqueezingResult spin_squeezing(const StateVector& state);

// F_sym = <psi| Pi |psi>
double symmetric_fidelity(const StateVector& state, const SymmetricProjector& projector);

// psi_theta = exp(-i pi/2 S_x) exp(-i theta S_z) exp(-i pi/2 S_y) psi,
// rightmost factor first.
StateVector phase_probe_state(const StateVector& state, double theta);

// Squared magnitudes |F_k|^2 of the forward DFT of p0(theta) on its uniform
// grid, normalized by the number of samples, for harmonics k = 0 .. N.
std::vector<double> harmonic_spectrum(const std::vector<double>& p0_of_theta, int n_sites);

}  // namespace spinforge
