#include "spinforge/probe.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>

#include "spinforge/experiment.hpp"
#include "spinforge/observables.hpp"

namespace spinforge {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::complex<double> probe_coherence(const StateVector& chain_state, double tau) {
    if (chain_state.has_probe) throw argument_error("probe already attached");
    const int n = chain_state.n_sites;
    detail::check_capacity(n + 1);
    const Eigen::Index dim = chain_state.amplitudes.size();
    // Composite state psi x |up_x>, probe = qubit n. H_int = kappa S_z S_z^(p)
    // is diagonal, so the evolution is a phase per (m, probe) sector.
    Eigen::VectorXcd composite(2 * dim);
    const std::complex<double> i(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const double m = 0.5 * n - std::popcount(static_cast<std::uint64_t>(b));
        const std::complex<double> amp = chain_state.amplitudes[b] * inv_sqrt2;
        composite[b] = amp * std::exp(-i * tau * m * 0.5);        // probe up
        composite[b + dim] = amp * std::exp(i * tau * m * 0.5);   // probe down
    }
    // Trace out the chain; the element ordered so that a = 1/2 sum p_m e^{-im tau}
    // (its conjugate is the transposed entry of rho_p).
    std::complex<double> a = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b) {
        a += composite[b] * std::conj(composite[b + dim]);
    }
    return a;
}

ProbeGrid sample_probe_grid(const StateVector& psi_t, int n_theta) {
    if (psi_t.has_probe) throw argument_error("probe already attached");
    const int n = psi_t.n_sites;
    if (n_theta < 2 * n + 1) {
        throw aliasing_error("need at least 2N+1 theta samples to resolve harmonic N");
    }
    ProbeGrid grid;
    grid.n_sites = n;
    grid.a.resize(n + 1, n_theta);
    grid.tau_grid.resize(n + 1);
    grid.theta_grid.resize(n_theta);
    for (int k = 0; k <= n; ++k) grid.tau_grid[k] = 2 * kPi * k / (n + 1);
    for (int j = 0; j < n_theta; ++j) grid.theta_grid[j] = 2 * kPi * j / n_theta;
    for (int j = 0; j < n_theta; ++j) {
        const StateVector rotated = phase_probe_state(psi_t, grid.theta_grid[j]);
        for (int k = 0; k <= n; ++k) {
            grid.a(k, j) = probe_coherence(rotated, grid.tau_grid[k]);
        }
    }
    return grid;
}

PmTable reconstruct_pm(const ProbeGrid& grid) {
    const int n = grid.n_sites;
    if (grid.a.rows() != n + 1) throw argument_error("grid must hold all N+1 tau rows");
    const int n_theta = int(grid.a.cols());
    PmTable table;
    table.n_sites = n;
    table.theta_grid = grid.theta_grid;
    table.m_values.resize(n + 1);
    table.p.resize(n + 1, n_theta);
    const std::complex<double> i(0.0, 1.0);
    for (int row = 0; row <= n; ++row) {
        table.m_values[row] = -0.5 * n + row;
    }
    for (int j = 0; j < n_theta; ++j) {
        for (int row = 0; row <= n; ++row) {
            const double m = table.m_values[row];
            std::complex<double> s = 0.0;
            for (int k = 0; k <= n; ++k) {
                s += grid.a(k, j) * std::exp(i * m * grid.tau_grid[k]);
            }
            table.p(row, j) = (2.0 / (n + 1)) * s.real();
        }
    }
    return table;
}

std::vector<double> PmTable::row(double m) const {
    for (int r = 0; r < int(m_values.size()); ++r) {
        if (std::abs(m_values[r] - m) < 1e-9) {
            std::vector<double> out(p.cols());
            for (int j = 0; j < p.cols(); ++j) out[j] = p(r, j);
            return out;
        }
    }
    throw argument_error("magnetization row not present");
}

std::complex<double> extract_ghz_coherence(const std::vector<double>& p0_of_theta,
                                           int n_sites) {
    if (n_sites % 2 != 0) {
        throw parity_error("extraction needs the m = 0 row, hence even N");
    }
    const int n_theta = int(p0_of_theta.size());
    if (n_theta < 2 * n_sites + 1) {
        throw aliasing_error("theta grid must hold at least 2N+1 points");
    }
    const WignerDTable d = wigner_d(0.5 * n_sites, kPi / 2);
    const double d0j = d(0.0, 0.5 * n_sites);
    if (std::abs(d0j) < 1e-14) {
        throw conditioning_error("d_{0,N/2}(pi/2) too small to divide by");
    }
    // Coefficient of e^{-i N theta} in the sampled series, unnormalized
    // inverse DFT divided by N_theta.
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> c = 0.0;
    for (int j = 0; j < n_theta; ++j) {
        c += p0_of_theta[j] * std::exp(i * (2 * kPi * n_sites * j / double(n_theta)));
    }
    return c / (double(n_theta) * d0j * d0j);
}

void write_probe_grid_csv(const ProbeGrid& grid, const std::string& path) {
    std::string out = "k,tau,theta,re_a,im_a\n";
    for (int k = 0; k < grid.a.rows(); ++k) {
        for (int j = 0; j < grid.a.cols(); ++j) {
            out += std::to_string(k);
            out += ',';
            out += format_double(grid.tau_grid[k]);
            out += ',';
            out += format_double(grid.theta_grid[j]);
            out += ',';
            out += format_double(grid.a(k, j).real());
            out += ',';
            out += format_double(grid.a(k, j).imag());
            out += '\n';
        }
    }
    write_text_atomic(path, out);
}

}  // namespace spinforge
