#include "spinforge/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "spinforge/hamiltonian.hpp"

namespace spinforge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMeanSpinFloor = 1e-8;

double q_from_coherence(int n, double e) {
    if (e <= 0.0) return -std::numeric_limits<double>::infinity();
    return n + std::log2(e);
}

// Frame family of the optimizer: psi' = exp(-i beta S_y) exp(-i alpha S_z) psi.
// With A_k the fixed-popcount amplitude sums (m = N/2 - k),
//   <up^N |psi'> = sum_k cos^{N-k}(b/2) (-sin(b/2))^k e^{-i alpha m_k} A_k
//   <down^N|psi'> = sum_k sin^{N-k}(b/2)   cos(b/2)^k  e^{-i alpha m_k} A_k
// so each (alpha, beta) evaluation is O(N) after one O(2^N) pass.
struct FrameScanner {
    int n;
    Eigen::VectorXcd a;  // sector sums

    double coherence(double alpha, double beta) const {
        const double c = std::cos(beta / 2);
        const double s = std::sin(beta / 2);
        const std::complex<double> i(0.0, 1.0);
        std::complex<double> cu = 0.0, cd = 0.0;
        double up_w = std::pow(c, n);   // c^{N-k} (-s)^k, updated incrementally
        double dn_w = std::pow(s, n);   // s^{N-k} c^k
        const bool c_ok = std::abs(c) > 1e-300;
        const bool s_ok = std::abs(s) > 1e-300;
        for (int k = 0; k <= n; ++k) {
            if (!(c_ok && s_ok)) {  // degenerate angles: compute weights directly
                up_w = std::pow(c, n - k) * std::pow(-s, k);
                dn_w = std::pow(s, n - k) * std::pow(c, k);
            }
            const double m = 0.5 * n - k;
            const std::complex<double> ph = std::exp(-i * alpha * m);
            cu += up_w * ph * a[k];
            cd += dn_w * ph * a[k];
            if (c_ok && s_ok) {
                up_w *= -s / c;
                dn_w *= c / s;
            }
        }
        const double prod = std::abs(cu) * std::abs(cd);
        return prod * prod;
    }
};

}  // namespace

TimeSeries make_time_series(std::vector<double> times, std::vector<double> values,
                            double chi, std::string metadata) {
    if (times.size() != values.size()) {
        throw argument_error("time and value arrays differ in length");
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) {
            throw argument_error("times must be strictly increasing");
        }
    }
    TimeSeries s;
    s.rescaled.reserve(times.size());
    for (double t : times) s.rescaled.push_back(std::abs(chi) * t / kPi);
    s.times = std::move(times);
    s.values = std::move(values);
    s.metadata = std::move(metadata);
    return s;
}

double ghz_coherence(const StateVector& state, const CollectiveFrame& frame) {
    if (state.has_probe) throw argument_error("probe qubit attached");
    const StateVector rotated = apply_frame(state, frame);
    const double cu = std::abs(rotated.amplitudes[0]);
    const double cd = std::abs(rotated.amplitudes[rotated.amplitudes.size() - 1]);
    const double prod = cu * cd;
    return prod * prod;
}

BellResult bell_q(const StateVector& state, FrameMode mode) {
    if (state.has_probe) throw argument_error("probe qubit attached");
    const int n = state.n_sites;
    BellResult r;
    if (mode == FrameMode::Identity) {
        r.frame = CollectiveFrame{};
        r.coherence = ghz_coherence(state, r.frame);
        r.q = q_from_coherence(n, r.coherence);
        return r;
    }
    if (mode == FrameMode::FixedRotation) {
        r.frame = CollectiveFrame{{{SpinAxis::Y, kPi / 2}}};
        r.coherence = ghz_coherence(state, r.frame);
        r.q = q_from_coherence(n, r.coherence);
        return r;
    }
    const FrameScanner scan{n, sector_sums(state)};
    constexpr int kGrid = 64;
    // Coarse pass with the alpha phases and beta weights tabulated once, so a
    // grid point costs a plain O(N) multiply-add.
    std::vector<std::complex<double>> ph((kGrid) * (n + 1));
    std::vector<double> wu(kGrid * (n + 1)), wd(kGrid * (n + 1));
    {
        const std::complex<double> i(0.0, 1.0);
        for (int ia = 0; ia < kGrid; ++ia) {
            const double alpha = 2 * kPi * ia / kGrid;
            for (int k = 0; k <= n; ++k) {
                const double m = 0.5 * n - k;
                ph[ia * (n + 1) + k] = std::exp(-i * alpha * m) * scan.a[k];
            }
        }
        for (int ib = 0; ib < kGrid; ++ib) {
            const double beta = 2 * kPi * ib / kGrid;
            const double c = std::cos(beta / 2);
            const double s = std::sin(beta / 2);
            for (int k = 0; k <= n; ++k) {
                wu[ib * (n + 1) + k] = std::pow(c, n - k) * std::pow(-s, k);
                wd[ib * (n + 1) + k] = std::pow(s, n - k) * std::pow(c, k);
            }
        }
    }
    double best_e = -1.0, best_a = 0.0, best_b = 0.0;
    for (int ia = 0; ia < kGrid; ++ia) {
        const std::complex<double>* pa = &ph[ia * (n + 1)];
        for (int ib = 0; ib < kGrid; ++ib) {
            const double* u = &wu[ib * (n + 1)];
            const double* d = &wd[ib * (n + 1)];
            std::complex<double> cu = 0.0, cd = 0.0;
            for (int k = 0; k <= n; ++k) {
                cu += u[k] * pa[k];
                cd += d[k] * pa[k];
            }
            const double prod = std::abs(cu) * std::abs(cd);
            const double e = prod * prod;
            if (e > best_e) {
                best_e = e;
                best_a = 2 * kPi * ia / kGrid;
                best_b = 2 * kPi * ib / kGrid;
            }
        }
    }
    // Local refinement around the best coarse cell: a shrinking 9x9 window.
    double w = 2 * kPi / kGrid;
    for (int pass = 0; pass < 10; ++pass) {
        double ca = best_a, cb = best_b;
        for (int ia = -4; ia <= 4; ++ia) {
            for (int ib = -4; ib <= 4; ++ib) {
                const double alpha = ca + w * ia / 4;
                const double beta = cb + w * ib / 4;
                const double e = scan.coherence(alpha, beta);
                if (e > best_e) {
                    best_e = e;
                    best_a = alpha;
                    best_b = beta;
                }
            }
        }
        w /= 4;
    }
    r.frame = CollectiveFrame{{{SpinAxis::Z, best_a}, {SpinAxis::Y, best_b}}};
    r.coherence = best_e;
    r.q = q_from_coherence(n, best_e);
    return r;
}

SqueezingResult spin_squeezing(const StateVector& state) {
    if (state.has_probe) throw argument_error("probe qubit attached");
    const int n = state.n_sites;
    std::array<Eigen::VectorXcd, 3> s_psi;
    for (int a = 0; a < 3; ++a) {
        const auto axis = static_cast<SpinAxis>(a);
        collective_operator(axis, n).apply_into(state.amplitudes, s_psi[a]);
    }
    Eigen::Vector3d mean;
    for (int a = 0; a < 3; ++a) mean[a] = state.amplitudes.dot(s_psi[a]).real();
    const double mean_norm = mean.norm();
    if (mean_norm <= kMeanSpinFloor) {
        throw undefined_mean_spin_error("mean spin below threshold; xi^2 undefined");
    }
    const Eigen::Vector3d dir = mean / mean_norm;
    Eigen::Vector3d e1 = dir.cross(Eigen::Vector3d::UnitZ());
    if (e1.norm() < 1e-8) e1 = dir.cross(Eigen::Vector3d::UnitY());
    e1.normalize();
    const Eigen::Vector3d e2 = dir.cross(e1);
    const Eigen::VectorXcd u = e1[0] * s_psi[0] + e1[1] * s_psi[1] + e1[2] * s_psi[2];
    const Eigen::VectorXcd v = e2[0] * s_psi[0] + e2[1] * s_psi[1] + e2[2] * s_psi[2];
    // <S_perp> = 0 by construction, so the symmetrized covariance is
    // [[<u|u>, Re<u|v>], [Re<u|v>, <v|v>]] over the perpendicular plane.
    Eigen::Matrix2d cov;
    cov(0, 0) = u.squaredNorm();
    cov(1, 1) = v.squaredNorm();
    cov(0, 1) = cov(1, 0) = u.dot(v).real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    const double lam = es.eigenvalues()[0];
    const Eigen::Vector2d vec = es.eigenvectors().col(0);
    SqueezingResult r;
    r.xi2 = n * lam / (mean_norm * mean_norm);
    r.mean_spin = mean;
    r.optimal_angle = std::atan2(vec[1], vec[0]);
    return r;
}

double symmetric_fidelity(const StateVector& state, const SymmetricProjector& projector) {
    if (state.has_probe || state.n_sites != projector.n_sites) {
        throw argument_error("state and projector dimensions do not match");
    }
    const Eigen::VectorXcd overlaps = projector.basis_vectors.adjoint() * state.amplitudes;
    return overlaps.squaredNorm();
}

StateVector phase_probe_state(const StateVector& state, double theta) {
    if (state.has_probe) throw argument_error("probe qubit attached");
    StateVector out = rotate(state, SpinAxis::Y, kPi / 2);
    out = rotate(out, SpinAxis::Z, theta);
    return rotate(out, SpinAxis::X, kPi / 2);
}

std::vector<double> harmonic_spectrum(const std::vector<double>& p0_of_theta, int n_sites) {
    const int n_theta = int(p0_of_theta.size());
    if (n_theta < 2 * n_sites + 1) {
        throw aliasing_error("theta grid must hold at least 2N+1 points");
    }
    const std::complex<double> i(0.0, 1.0);
    std::vector<double> weights(n_sites + 1, 0.0);
    for (int k = 0; k <= n_sites; ++k) {
        std::complex<double> f = 0.0;
        for (int j = 0; j < n_theta; ++j) {
            f += p0_of_theta[j] * std::exp(-i * (2 * kPi * k * j / double(n_theta)));
        }
        weights[k] = std::norm(f / double(n_theta));
    }
    return weights;
}

}  // namespace spinforge
