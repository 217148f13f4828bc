#include "spinforge/spinspace.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <string>

#include "spinforge/hamiltonian.hpp"

namespace spinforge {

namespace detail {

void check_capacity(int n_sites) {
    if (n_sites < 1 || n_sites > kMaxSites) {
        throw capacity_error("site count " + std::to_string(n_sites) +
                             " outside the dense-vector range [1, " +
                             std::to_string(kMaxSites) + "]");
    }
}

void apply_single_qubit(Eigen::VectorXcd& amps, int qubit, const Eigen::Matrix2cd& gate) {
    const Eigen::Index dim = amps.size();
    const Eigen::Index bit = Eigen::Index(1) << qubit;
    for (Eigen::Index base = 0; base < dim; ++base) {
        if (base & bit) continue;
        const Eigen::Index up = base;
        const Eigen::Index dn = base | bit;
        const std::complex<double> a = amps[up];
        const std::complex<double> b = amps[dn];
        amps[up] = gate(0, 0) * a + gate(0, 1) * b;
        amps[dn] = gate(1, 0) * a + gate(1, 1) * b;
    }
}

}  // namespace detail

StateVector make_state(int n_sites, Eigen::VectorXcd amplitudes, bool has_probe) {
    detail::check_capacity(n_sites + (has_probe ? 1 : 0));
    StateVector s;
    s.n_sites = n_sites;
    s.has_probe = has_probe;
    s.amplitudes = std::move(amplitudes);
    if (s.amplitudes.size() != s.dim()) {
        throw argument_error("amplitude array length does not equal 2^(n_sites + has_probe)");
    }
    return s;
}

StateVector coherent_x_state(int n_sites) {
    detail::check_capacity(n_sites);
    Eigen::VectorXcd amps =
        Eigen::VectorXcd::Constant(Eigen::Index(1) << n_sites, std::pow(2.0, -0.5 * n_sites));
    return make_state(n_sites, std::move(amps));
}

StateVector ghz_z_state(int n_sites) {
    detail::check_capacity(n_sites);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index(1) << n_sites);
    amps[0] = amps[amps.size() - 1] = 1.0 / std::sqrt(2.0);
    return make_state(n_sites, std::move(amps));
}

static Eigen::Matrix2cd single_qubit_rotation(SpinAxis axis, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix2cd g;
    switch (axis) {
        case SpinAxis::X: g << c, -i * s, -i * s, c; break;
        case SpinAxis::Y: g << c, -s, s, c; break;
        case SpinAxis::Z: g << std::exp(-i * (angle / 2)), 0.0, 0.0, std::exp(i * (angle / 2)); break;
    }
    return g;
}

StateVector rotate(const StateVector& state, SpinAxis axis, double angle) {
    if (!std::isfinite(angle)) throw argument_error("rotation angle is not finite");
    StateVector out = state;
    const Eigen::Matrix2cd g = single_qubit_rotation(axis, angle);
    for (int j = 0; j < state.n_sites; ++j) {
        detail::apply_single_qubit(out.amplitudes, j, g);
    }
    return out;
}

StateVector apply_frame(const StateVector& state, const CollectiveFrame& frame) {
    if (frame.rotations.size() > 4) throw argument_error("frame holds more than 4 rotations");
    StateVector out = state;
    for (const auto& [axis, angle] : frame.rotations) {
        out = rotate(out, axis, angle);
    }
    return out;
}

double WignerDTable::operator()(double m_prime, double m) const {
    const double r = j - m_prime;
    const double c = j - m;
    const auto ri = static_cast<Eigen::Index>(std::llround(r));
    const auto ci = static_cast<Eigen::Index>(std::llround(c));
    if (std::abs(r - double(ri)) > 1e-9 || std::abs(c - double(ci)) > 1e-9 || ri < 0 ||
        ci < 0 || ri >= entries.rows() || ci >= entries.cols()) {
        throw argument_error("magnetization label off the (m', m) lattice");
    }
    return entries(ri, ci);
}

WignerDTable wigner_d(double j, double beta) {
    const double two_j = 2.0 * j;
    const auto tj = static_cast<long>(std::llround(two_j));
    if (tj < 0 || std::abs(two_j - double(tj)) > 1e-9) {
        throw argument_error("2J must be a nonnegative integer");
    }
    const Eigen::Index dim = tj + 1;
    // J_y in the |J,m> basis with m descending (row r holds m = J - r),
    // diagonalized for the exponential; robust for the J <= 7 used here.
    Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(dim, dim);
    const std::complex<double> i(0.0, 1.0);
    for (Eigen::Index r = 1; r < dim; ++r) {
        const double m = j - double(r);
        const double amp = 0.5 * std::sqrt(j * (j + 1) - m * (m + 1));  // <m+1|J+|m>/2
        jy(r - 1, r) = -i * amp;  // (J+ - J-)/(2i)
        jy(r, r - 1) = i * amp;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jy);
    if (es.info() != Eigen::Success) throw numerical_error("J_y eigendecomposition failed");
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        phases[k] = std::exp(-i * beta * es.eigenvalues()[k]);
    }
    const Eigen::MatrixXcd u =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    WignerDTable table;
    table.j = j;
    table.beta = beta;
    table.entries = u.real();
    return table;
}

SymmetricProjector symmetric_projector(int n_sites) {
    detail::check_capacity(n_sites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(dim, n_sites + 1);
    std::vector<double> binom(n_sites + 1, 1.0);
    for (int k = 1; k <= n_sites; ++k) {
        binom[k] = binom[k - 1] * double(n_sites - k + 1) / double(k);
    }
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int k = std::popcount(static_cast<std::uint64_t>(b));
        basis(b, k) = 1.0 / std::sqrt(binom[k]);
    }
    SymmetricProjector p;
    p.n_sites = n_sites;
    p.basis_vectors = std::move(basis);
    return p;
}

StateVector SymmetricProjector::apply(const StateVector& state) const {
    if (state.has_probe || state.n_sites != n_sites) {
        throw argument_error("projector and state dimensions do not match");
    }
    StateVector out = state;
    out.amplitudes = basis_vectors * (basis_vectors.adjoint() * state.amplitudes);
    return out;
}

Eigen::VectorXcd sector_sums(const StateVector& state) {
    if (state.has_probe) throw argument_error("probe qubit attached");
    const int n = state.n_sites;
    Eigen::VectorXcd sums = Eigen::VectorXcd::Zero(n + 1);
    for (Eigen::Index b = 0; b < state.amplitudes.size(); ++b) {
        sums[std::popcount(static_cast<std::uint64_t>(b))] += state.amplitudes[b];
    }
    return sums;
}

std::vector<double> sector_probabilities(const StateVector& state) {
    if (state.has_probe) throw argument_error("probe qubit attached");
    const int n = state.n_sites;
    std::vector<double> p(n + 1, 0.0);
    for (Eigen::Index b = 0; b < state.amplitudes.size(); ++b) {
        p[std::popcount(static_cast<std::uint64_t>(b))] += std::norm(state.amplitudes[b]);
    }
    return p;
}

std::vector<std::pair<double, double>> magnetization_distribution(const StateVector& state) {
    const std::vector<double> p = sector_probabilities(state);
    const int n = state.n_sites;
    std::vector<std::pair<double, double>> dist;
    dist.reserve(n + 1);
    for (int k = n; k >= 0; --k) {  // ascending m = n/2 - k
        dist.emplace_back(0.5 * n - k, p[k]);
    }
    return dist;
}

HamiltonianOp collective_operator(SpinAxis axis, int n_sites) {
    detail::check_capacity(n_sites);
    std::vector<PauliTerm> terms;
    terms.reserve(n_sites);
    for (int j = 0; j < n_sites; ++j) {
        terms.push_back(PauliTerm{1.0, {{j, axis}}});
    }
    return HamiltonianOp(n_sites, std::move(terms));
}

}  // namespace spinforge
