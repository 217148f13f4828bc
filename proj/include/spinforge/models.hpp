#pragma once

#include <string>

#include "spinforge/hamiltonian.hpp"

namespace spinforge {

enum class ModelKind { StaggeredXXX, LongRangeXXZ, OAT, IsingLimit };
enum class DistanceConvention { RingMinimal, Linear };

struct ModelSpec {
    ModelKind kind = ModelKind::StaggeredXXX;
    int n_sites = 8;
    double j0 = 1.0;
    double h_z = 0.0;      // staggered field amplitude
    double delta = 0.0;    // XXZ anisotropy
    double gamma = 0.0;    // power-law range exponent
    bool kac = true;
    DistanceConvention distance = DistanceConvention::RingMinimal;
    double chi = 0.0;      // effective coupling, used only by kind = OAT

    void validate() const;
};

std::string to_string(ModelKind kind);
std::string to_string(DistanceConvention d);
ModelKind model_kind_from_string(const std::string& s);
DistanceConvention distance_from_string(const std::string& s);

// Pairwise coupling J(r) for separations r = 1 .. N-1 along the ring,
// including the Kac divisor when requested. For N = 2 the two ring bonds of
// the nearest-neighbor chain land on the same pair, doubling the coupling.
std::vector<double> coupling_row(const ModelSpec& spec);

// H = -J0 sum_i S_i.S_{i+1} - h_z sum_i (-1)^i S_i^z, periodic, even N.
HamiltonianOp build_staggered_xxx(const ModelSpec& spec);

// H = -1/2 sum_{i!=j} J(r_ij) [S_i.S_j + delta S_i^z S_j^z]
HamiltonianOp build_longrange_xxz(const ModelSpec& spec);

// H = chi S_z^2 (diagonal entries chi m^2)
HamiltonianOp build_oat(int n_sites, double chi);

// Ising part of the XXZ chain: H = -(1+delta)/2 sum_{i!=j} J(r_ij) S_i^z S_j^z
HamiltonianOp build_ising_limit(const ModelSpec& spec);

HamiltonianOp build_model(const ModelSpec& spec);

// kappa S_z S_z^{(p)} on the (n_sites+1)-qubit space; the probe is qubit n_sites.
HamiltonianOp attach_probe_coupling(int n_sites, double kappa);

}  // namespace spinforge
