#include "spinforge/evolve.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>

namespace spinforge {

Propagator make_propagator(const HamiltonianOp& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
    if (es.info() != Eigen::Success) {
        throw numerical_error("Hermitian eigendecomposition failed");
    }
    Propagator p;
    p.n_qubits = h.n_sites();
    p.eigenvalues = es.eigenvalues();
    p.eigenvectors = es.eigenvectors();
    return p;
}

StateVector Propagator::evolve(const StateVector& psi0, double t) const {
    if (!std::isfinite(t)) throw argument_error("evolution time is not finite");
    if (psi0.total_qubits() != n_qubits) {
        throw argument_error("state dimension does not match propagator");
    }
    const std::complex<double> i(0.0, 1.0);
    Eigen::VectorXcd coeff = eigenvectors.adjoint() * psi0.amplitudes;
    for (Eigen::Index k = 0; k < coeff.size(); ++k) {
        coeff[k] *= std::exp(-i * eigenvalues[k] * t);
    }
    StateVector out = psi0;
    out.amplitudes = eigenvectors * coeff;
    return out;
}

std::vector<StateVector> exact_evolve(const HamiltonianOp& h, const StateVector& psi0,
                                      const std::vector<double>& times) {
    const Propagator prop = make_propagator(h);
    std::vector<StateVector> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(prop.evolve(psi0, t));
    return out;
}

TrotterPlan build_trotter_plan(const ModelSpec& spec, double t, int n_steps) {
    if (spec.kind != ModelKind::StaggeredXXX) {
        throw argument_error("Trotter circuit is defined for the staggered XXX chain");
    }
    spec.validate();
    if (n_steps < 1) throw argument_error("n_steps must be at least 1");
    const int n = spec.n_sites;
    detail::check_capacity(n);
    TrotterPlan plan;
    plan.n_sites = n;
    plan.n_steps = n_steps;
    plan.dt = t / n_steps;
    plan.j0 = spec.j0;
    plan.h_z = spec.h_z;
    for (int i = 0; i + 1 < n; i += 2) plan.even_bonds.emplace_back(i, i + 1);
    for (int i = 1; i < n; i += 2) plan.odd_bonds.emplace_back(i, (i + 1) % n);
    const Eigen::Index dim = Eigen::Index(1) << n;
    plan.stagger_weight.resize(dim);
    plan.field_half_phase.resize(dim);
    const std::complex<double> im(0.0, 1.0);
    for (Eigen::Index b = 0; b < dim; ++b) {
        double w = 0.0;
        for (int i = 0; i < n; ++i) {
            const double m = (b >> i) & 1 ? -0.5 : 0.5;
            w += (i % 2 == 0 ? 1.0 : -1.0) * m;
        }
        plan.stagger_weight[b] = w;
        // exp(-i s V) with V = -h_z sum (-1)^i S_i^z, at the half step s = dt/2
        plan.field_half_phase[b] = std::exp(im * (plan.dt / 2) * plan.h_z * w);
    }
    return plan;
}

namespace {

// exp(-i phi S_i.S_j) in closed form from the singlet/triplet split:
// e^{-i phi/4} on the aligned states, e^{+i phi/4}[cos(phi/2) - i sin(phi/2) flip]
// on the {ud, du} block.
struct HeisenbergGate {
    std::complex<double> aligned;
    std::complex<double> mid_diag;
    std::complex<double> mid_off;
};

HeisenbergGate heisenberg_gate(double phi) {
    const std::complex<double> i(0.0, 1.0);
    HeisenbergGate g;
    g.aligned = std::exp(-i * (phi / 4));
    const std::complex<double> outer = std::exp(i * (phi / 4));
    g.mid_diag = outer * std::cos(phi / 2);
    g.mid_off = -i * outer * std::sin(phi / 2);
    return g;
}

void apply_bond_gate(Eigen::VectorXcd& amps, int i, int j, const HeisenbergGate& g) {
    const Eigen::Index bi = Eigen::Index(1) << i;
    const Eigen::Index bj = Eigen::Index(1) << j;
    const Eigen::Index dim = amps.size();
    for (Eigen::Index b = 0; b < dim; ++b) {
        if (b & (bi | bj)) continue;
        const Eigen::Index uu = b;
        const Eigen::Index ud = b | bj;
        const Eigen::Index du = b | bi;
        const Eigen::Index dd = b | bi | bj;
        amps[uu] *= g.aligned;
        amps[dd] *= g.aligned;
        const std::complex<double> x = amps[ud];
        const std::complex<double> y = amps[du];
        amps[ud] = g.mid_diag * x + g.mid_off * y;
        amps[du] = g.mid_off * x + g.mid_diag * y;
    }
}

void apply_field_half_layer(const TrotterPlan& plan, Eigen::VectorXcd& amps) {
    if (plan.h_z == 0.0) return;  // U_V reduces to the identity
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        amps[b] *= plan.field_half_phase[b];
    }
}

}  // namespace

void apply_trotter_step(const TrotterPlan& plan, StateVector& state) {
    if (state.total_qubits() != plan.n_sites) {
        throw argument_error("state dimension does not match plan");
    }
    const HeisenbergGate g = heisenberg_gate(-plan.j0 * plan.dt / 2);
    auto layer = [&](const std::vector<std::pair<int, int>>& bonds) {
        for (const auto& [i, j] : bonds) apply_bond_gate(state.amplitudes, i, j, g);
    };
    apply_field_half_layer(plan, state.amplitudes);
    layer(plan.even_bonds);
    layer(plan.odd_bonds);
    layer(plan.odd_bonds);
    layer(plan.even_bonds);
    apply_field_half_layer(plan, state.amplitudes);
}

StateVector trotter_evolve(const ModelSpec& spec, const StateVector& psi0, double t,
                           int n_steps) {
    const TrotterPlan plan = build_trotter_plan(spec, t, n_steps);
    StateVector state = psi0;
    for (int s = 0; s < n_steps; ++s) apply_trotter_step(plan, state);
    return state;
}

}  // namespace spinforge
