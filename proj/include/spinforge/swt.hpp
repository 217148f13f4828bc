#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "spinforge/models.hpp"

namespace spinforge {

// Couplings by separation r = 1 .. N-1 (entry r-1). Symmetric under
// r <-> N-r when built with the ring-minimal distance.
struct CouplingProfile {
    int n_sites = 0;
    std::vector<double> j_of_r;
};

CouplingProfile coupling_profile(const ModelSpec& spec);

// J~(q) = sum_r J(r) e^{iqr}; real on the momentum grid for ring profiles.
double j_tilde(const CouplingProfile& profile, double q);

// eps_XXZ(q) = 1/2 [(1+delta) J~(0) - J~(q)], delta = 0 gives the isotropic
// magnon dispersion. q must lie on the grid {2 pi k / N}.
double dispersion(const CouplingProfile& profile, double delta, double q);

// min over q != 0 of the dispersion.
double magnon_gap(const CouplingProfile& profile, double delta);

// chi = h_z^2 / (2 J0 (N-1)) for the staggered nearest-neighbor chain.
double chi_staggered(int n_sites, double j0, double h_z);

// chi = -(delta/2) J~(0)/(N-1) for the long-range XXZ chain.
double chi_xxz(int n_sites, const CouplingProfile& profile, double delta);

// Analytic effective OAT coupling of a model spec (dispatch over kinds).
double analytic_chi(const ModelSpec& spec);

// Per-site field components h_j^alpha, shape (N, 3), columns x, y, z.
struct FieldProfile {
    Eigen::MatrixXd h;
};

FieldProfile staggered_field(int n_sites, double h_z);

// Second-order coupling tensor for a one-body field on an isotropic chain:
//   chi_ab = Re sum_{q!=0} h~_a(q) h~_b(-q) / [N (N-1) eps(q)]
// plus the collective linear term sourced by the antisymmetric part.
// Fourier convention: h~_a(q) = N^{-1/2} sum_j dh_j^a e^{iqj}, uniform part
// removed first.
struct ChiTensor {
    Eigen::Matrix3d chi = Eigen::Matrix3d::Zero();
    Eigen::Vector3d linear_term = Eigen::Vector3d::Zero();
};

ChiTensor chi_tensor(const CouplingProfile& profile, const FieldProfile& field);

// eps_num(q_k) = <q_k|H|q_k> - E_F over the travelling-wave basis of the
// single-flip sector; requires a translation-invariant H. Works from the
// terms directly, so N up to 64 is fine.
std::vector<std::pair<double, double>> one_magnon_energies(const HamiltonianOp& h);

// chi_num = (E_F - E_W)/(N-1), E_F = <F|H|F>, E_W = lowest eigenvalue of the
// single-flip sector.
double chi_numeric(const HamiltonianOp& h, int n_sites);

struct ValidityResult {
    double ratio = 0.0;
    bool valid = false;  // ratio <= 0.3, inclusive
};

ValidityResult perturbative_validity(double h, double gap);

}  // namespace spinforge
