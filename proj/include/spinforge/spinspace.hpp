#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "spinforge/errors.hpp"

namespace spinforge {

class HamiltonianOp;

// Dense 2^N state vectors are capped here; larger chains are served by the
// single-flip machinery in swt.hpp which never builds the full space.
inline constexpr int kMaxSites = 14;

enum class SpinAxis { X, Y, Z };

// Product basis: an N-bit integer indexes the basis, bit j belongs to site j,
// bit value 0 means spin up (m_j = +1/2). Index 0 is the all-up state.
// When a probe qubit is attached it occupies bit n_sites.
struct StateVector {
    int n_sites = 0;
    bool has_probe = false;
    Eigen::VectorXcd amplitudes;

    int total_qubits() const { return n_sites + (has_probe ? 1 : 0); }
    Eigen::Index dim() const { return Eigen::Index(1) << total_qubits(); }
    double squared_norm() const { return amplitudes.squaredNorm(); }
};

StateVector make_state(int n_sites, Eigen::VectorXcd amplitudes, bool has_probe = false);

// |+x>^N: every product-basis amplitude equals 2^{-N/2}.
StateVector coherent_x_state(int n_sites);

// (|up^N> + |down^N>)/sqrt(2)
StateVector ghz_z_state(int n_sites);

// exp(-i angle S_axis) |psi>, applied as a product of single-qubit rotations.
// Acts on the chain qubits only; a probe qubit, if attached, is untouched.
StateVector rotate(const StateVector& state, SpinAxis axis, double angle);

// Ordered list of collective rotations; the first entry acts on the state first.
struct CollectiveFrame {
    std::vector<std::pair<SpinAxis, double>> rotations;
};

StateVector apply_frame(const StateVector& state, const CollectiveFrame& frame);

// d^J_{m'm}(beta) = <J,m'|exp(-i beta J_y)|J,m>, real in the standard
// Condon-Shortley basis. Stored in the textbook layout: row r holds m' = J - r,
// column c holds m = J - c (m descending).
struct WignerDTable {
    double j = 0;
    double beta = 0;
    Eigen::MatrixXd entries;

    double operator()(double m_prime, double m) const;
};

WignerDTable wigner_d(double j, double beta);

// Orthonormal basis of the S = N/2 eigenspace of total spin squared: the N+1
// Dicke states, column k uniform over the popcount-k product states.
struct SymmetricProjector {
    int n_sites = 0;
    Eigen::MatrixXcd basis_vectors;  // 2^N x (N+1)

    StateVector apply(const StateVector& state) const;
};

SymmetricProjector symmetric_projector(int n_sites);

// Sum of amplitudes in each fixed-popcount sector, index k = number of down
// spins = N/2 - m.  Building block for magnetization statistics and the
// coherence frame scans.
Eigen::VectorXcd sector_sums(const StateVector& state);

// Probability weight of each popcount sector, same indexing as sector_sums.
std::vector<double> sector_probabilities(const StateVector& state);

// (m, p_m) pairs with m ascending from -N/2 to N/2 in unit steps.
std::vector<std::pair<double, double>> magnetization_distribution(const StateVector& state);

// S_alpha = sum_i S_i^alpha as a HamiltonianOp.
HamiltonianOp collective_operator(SpinAxis axis, int n_sites);

namespace detail {
void check_capacity(int n_sites);
void apply_single_qubit(Eigen::VectorXcd& amps, int qubit,
                        const Eigen::Matrix2cd& gate);
}  // namespace detail

}  // namespace spinforge
