#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "spinforge/spinspace.hpp"

namespace spinforge {

// Coherence samples a(tau_k, theta_j) on the (N+1) x n_theta lattice,
// tau_k = 2 pi k / (N+1), theta_j uniform on [0, 2 pi).
struct ProbeGrid {
    int n_sites = 0;
    Eigen::MatrixXcd a;
    std::vector<double> tau_grid;
    std::vector<double> theta_grid;
};

// Attaches the probe in |up_x>, evolves the composite under kappa S_z S_z^(p)
// to tau = kappa t, traces out the chain and returns the probe coherence,
// ordered so that a(tau) = 1/2 sum_m p_m e^{-i m tau}.
std::complex<double> probe_coherence(const StateVector& chain_state, double tau);

// Applies phase_probe_state at each theta_j and samples probe_coherence at
// each tau_k. n_theta must satisfy the Nyquist bound 2N+1.
ProbeGrid sample_probe_grid(const StateVector& psi_t, int n_theta);

struct PmTable {
    int n_sites = 0;
    std::vector<double> m_values;  // ascending, -N/2 .. N/2
    Eigen::MatrixXd p;             // (N+1) x n_theta, row i belongs to m_values[i]
    std::vector<double> theta_grid;

    // row of p for a given magnetization, e.g. m = 0
    std::vector<double> row(double m) const;
};

// Inverts the tau series: p_m(theta_j) = 2/(N+1) sum_k a(tau_k,theta_j) e^{+i m tau_k}.
PmTable reconstruct_pm(const ProbeGrid& grid);

// rho_{N/2,-N/2} from the frequency-N Fourier coefficient of p_0(theta),
// divided by d^2_{0,N/2}(pi/2). Even N only. The certified magnitude equals
// |<up^N|phi><phi|down^N>| of phi = exp(-i pi/2 S_y) psi, the state after the
// first pipeline rotation.
std::complex<double> extract_ghz_coherence(const std::vector<double>& p0_of_theta,
                                           int n_sites);

// CSV serialization: columns k, tau, theta, re_a, im_a at 17 significant digits.
void write_probe_grid_csv(const ProbeGrid& grid, const std::string& path);

}  // namespace spinforge
