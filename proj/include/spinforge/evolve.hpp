#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinforge/models.hpp"

namespace spinforge {

// Exact propagation backend: dense Hermitian eigendecomposition of H.
struct Propagator {
    int n_qubits = 0;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;

    StateVector evolve(const StateVector& psi0, double t) const;
};

Propagator make_propagator(const HamiltonianOp& h);

// psi(t) = exp(-i H t) psi0 for each entry of times.
std::vector<StateVector> exact_evolve(const HamiltonianOp& h, const StateVector& psi0,
                                      const std::vector<double>& times);

// Second-order split step for the staggered XXX chain. One step of size dt:
//   U_V(dt/2) U_e(dt/2) U_o(dt/2) U_o(dt/2) U_e(dt/2) U_V(dt/2)
// i.e. the even/odd bond layers swept forward and back at half steps between
// two half-step field layers. Counts per step: N/2 + N/2 two-site gates,
// twice, plus 2 field layers.
struct TrotterPlan {
    int n_sites = 0;
    int n_steps = 0;
    double dt = 0.0;
    double j0 = 0.0;
    double h_z = 0.0;
    std::vector<std::pair<int, int>> even_bonds;  // (0,1),(2,3),...
    std::vector<std::pair<int, int>> odd_bonds;   // (1,2),...,(N-1,0)
    std::vector<double> stagger_weight;           // sum_i (-1)^i m_i(b) per basis index
    // exp(-i (dt/2) V) phases, precomputed once since dt is fixed per plan
    std::vector<std::complex<double>> field_half_phase;
};

TrotterPlan build_trotter_plan(const ModelSpec& spec, double t, int n_steps);

// Applies one symmetric step of the plan in place.
void apply_trotter_step(const TrotterPlan& plan, StateVector& state);

StateVector trotter_evolve(const ModelSpec& spec, const StateVector& psi0, double t,
                           int n_steps);

}  // namespace spinforge
