#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "spinforge/observables.hpp"
#include "spinforge/probe.hpp"
#include "support/oracles.hpp"

using namespace spinforge;
constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

namespace {

// Independent oracle: the coherence is the Fourier series of the
// magnetization distribution, a(tau) = 1/2 sum_m p_m e^{-i m tau}.
cplx fourier_sum_oracle(const StateVector& psi, double tau) {
    cplx a = 0.0;
    for (const auto& [m, p] : magnetization_distribution(psi)) {
        a += 0.5 * p * std::exp(cplx(0.0, -m * tau));
    }
    return a;
}

}  // namespace

TEST_CASE("probe coherence") {
    std::mt19937_64 rng(41);
    const StateVector psi = oracle::random_state(4, rng);
    CHECK(std::abs(probe_coherence(psi, 0.0) - cplx(0.5, 0.0)) < 1e-14);

    // GHZ chain: two-term series, |a| = |cos(N tau / 2)| / 2
    const int n = 6;
    const StateVector ghz = ghz_z_state(n);
    for (double tau : {0.3, 1.1, 2.9}) {
        const cplx a = probe_coherence(ghz, tau);
        CHECK(std::abs(a) == doctest::Approx(0.5 * std::abs(std::cos(n * tau / 2)))
                                 .epsilon(1e-12));
    }

    // composite evolution matches the analytic series
    std::uniform_real_distribution<double> taus(0.0, 2 * pi);
    for (int trial = 0; trial < 10; ++trial) {
        const double tau = taus(rng);
        CHECK(std::abs(probe_coherence(psi, tau) - fourier_sum_oracle(psi, tau)) < 1e-12);
    }
}

TEST_CASE("grid sampling") {
    const int n = 4;
    const StateVector psi = coherent_x_state(n);
    const ProbeGrid grid = sample_probe_grid(psi, 4 * (n + 1));
    CHECK(grid.a.rows() == n + 1);
    CHECK(grid.a.cols() == 4 * (n + 1));
    for (int j = 0; j < grid.a.cols(); ++j) {
        CHECK(std::abs(grid.a(0, j) - cplx(0.5, 0.0)) < 1e-12);
    }
    CHECK(grid.a.cwiseAbs().maxCoeff() <= 0.5 + 1e-12);
    CHECK_THROWS_AS(sample_probe_grid(psi, 2 * n), aliasing_error);
}

TEST_CASE("reconstruction round trip") {
    std::mt19937_64 rng(13);
    for (int n : {4, 6, 8}) {
        std::vector<StateVector> states = {coherent_x_state(n), ghz_z_state(n),
                                           oracle::oat_state(n, pi / 4),
                                           oracle::random_symmetric_state(n, rng)};
        for (const StateVector& psi : states) {
            const ProbeGrid grid = sample_probe_grid(psi, 4 * (n + 1));
            const PmTable table = reconstruct_pm(grid);
            double max_dev = 0.0;
            for (std::size_t j = 0; j < table.theta_grid.size(); ++j) {
                const auto direct =
                    magnetization_distribution(phase_probe_state(psi, table.theta_grid[j]));
                double sum = 0.0;
                for (int row = 0; row <= n; ++row) {
                    max_dev = std::max(max_dev,
                                       std::abs(table.p(row, j) - direct[row].second));
                    CHECK(table.p(row, j) >= -1e-10);
                    sum += table.p(row, j);
                }
                CHECK(std::abs(sum - 1.0) < 1e-10);
            }
            CHECK(max_dev < 1e-10);
        }
    }
}

TEST_CASE("reconstruction of the bare coherent state") {
    // Sampling the tau series on the unrotated N = 2 coherent state inverts
    // straight to the binomial populations (1/4, 1/2, 1/4).
    const int n = 2;
    const StateVector psi = coherent_x_state(n);
    ProbeGrid grid;
    grid.n_sites = n;
    grid.a.resize(n + 1, 1);
    grid.tau_grid.resize(n + 1);
    grid.theta_grid = {0.0};
    for (int k = 0; k <= n; ++k) {
        grid.tau_grid[k] = 2 * pi * k / (n + 1);
        grid.a(k, 0) = probe_coherence(psi, grid.tau_grid[k]);
    }
    const PmTable table = reconstruct_pm(grid);
    CHECK(table.p(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(table.p(1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(table.p(2, 0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("extraction of the extremal coherence") {
    std::mt19937_64 rng(19);
    // the dynamically generated peak state certifies Q = N - 2
    for (int n : {4, 6}) {
        const StateVector peak = oracle::oat_state(n, pi / 2);
        const PmTable table = reconstruct_pm(sample_probe_grid(peak, 4 * (n + 1)));
        const cplx rho = extract_ghz_coherence(table.row(0.0), n);
        CHECK(std::abs(rho) == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(n + std::log2(std::norm(rho)) == doctest::Approx(double(n - 2)).epsilon(1e-6));
    }

    // generic symmetric state: matches the y-rotated state's direct coherence
    const int n = 6;
    for (int trial = 0; trial < 3; ++trial) {
        const StateVector psi = oracle::random_symmetric_state(n, rng);
        const PmTable table = reconstruct_pm(sample_probe_grid(psi, 4 * (n + 1)));
        const cplx rho = extract_ghz_coherence(table.row(0.0), n);
        const StateVector phi = rotate(psi, SpinAxis::Y, pi / 2);
        const double direct = std::abs(phi.amplitudes[0]) *
                              std::abs(phi.amplitudes[phi.amplitudes.size() - 1]);
        CHECK(std::abs(std::abs(rho) - direct) < 1e-8);
    }

    // coherent input: the pipeline maps it onto the pole, so both the
    // extracted and the direct coherence vanish together
    const StateVector coh = coherent_x_state(n);
    const PmTable table = reconstruct_pm(sample_probe_grid(coh, 4 * (n + 1)));
    const cplx rho = extract_ghz_coherence(table.row(0.0), n);
    const StateVector phi = rotate(coh, SpinAxis::Y, pi / 2);
    const double direct =
        std::abs(phi.amplitudes[0]) * std::abs(phi.amplitudes[phi.amplitudes.size() - 1]);
    CHECK(std::abs(std::abs(rho) - direct) < 1e-10);

    CHECK_THROWS_AS(extract_ghz_coherence(std::vector<double>(16, 0.1), 5), parity_error);
    CHECK_THROWS_AS(extract_ghz_coherence(std::vector<double>(8, 0.1), 6), aliasing_error);
}

TEST_CASE("grid csv serialization") {
    const int n = 2;
    const ProbeGrid grid = sample_probe_grid(coherent_x_state(n), 2 * n + 1);
    const std::string path = "probe_grid_test.csv";
    write_probe_grid_csv(grid, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,tau,theta,re_a,im_a");
    int rows = 0;
    double k, tau, theta, re, im;
    char comma;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        ss >> k >> comma >> tau >> comma >> theta >> comma >> re >> comma >> im;
        if (k == 0.0) CHECK(re == doctest::Approx(0.5).epsilon(1e-12));
        ++rows;
    }
    CHECK(rows == (n + 1) * (2 * n + 1));
    std::remove(path.c_str());
    std::ifstream tmp(path + ".tmp");
    CHECK_FALSE(tmp.good());
}

TEST_CASE("certification equivalence with the fixed frame") {
    std::mt19937_64 rng(29);
    const int n = 6;
    std::vector<StateVector> states = {ghz_z_state(n), oracle::oat_state(n, pi / 4),
                                       oracle::random_symmetric_state(n, rng)};
    for (const StateVector& psi : states) {
        const PmTable table = reconstruct_pm(sample_probe_grid(psi, 4 * (n + 1)));
        const cplx rho = extract_ghz_coherence(table.row(0.0), n);
        const double q_probe = n + std::log2(std::norm(rho));
        const double q_direct = bell_q(psi, FrameMode::FixedRotation).q;
        CHECK(std::abs(q_probe - q_direct) < 0.01);
    }
}
