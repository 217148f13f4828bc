#include "spinforge/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace spinforge {

namespace {
constexpr std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

HamiltonianOp::HamiltonianOp(int n_sites, std::vector<PauliTerm> terms)
    : n_(n_sites), terms_(std::move(terms)), cache_(std::make_shared<DenseCache>()) {
    if (n_sites < 1 || n_sites > 64) {
        throw argument_error("operator needs between 1 and 64 qubits");
    }
    compiled_.reserve(terms_.size());
    for (const auto& term : terms_) {
        CompiledTerm c;
        int prev = -1;
        for (const auto& [site, axis] : term.factors) {
            if (site <= prev || site >= n_sites) {
                throw argument_error("term sites must be strictly increasing and < n_sites");
            }
            prev = site;
            const std::uint64_t bit = std::uint64_t(1) << site;
            switch (axis) {
                case SpinAxis::X: c.flip_mask |= bit; break;
                case SpinAxis::Y: c.flip_mask |= bit; c.sign_mask |= bit; ++c.n_y; break;
                case SpinAxis::Z: c.sign_mask |= bit; break;
            }
        }
        c.scaled_coeff = term.coeff * std::pow(0.5, double(term.factors.size()));
        compiled_.push_back(c);
    }
}

std::uint64_t HamiltonianOp::apply_to_mask(const CompiledTerm& term, std::uint64_t mask,
                                           std::complex<double>& phase) {
    // sigma^z: (-1) on a flipped (down) site; sigma^y: i on up->down, -i on
    // down->up, i.e. i^{n_y} (-1)^{#down y-sites}. Both fold into one parity.
    const int parity = std::popcount(mask & term.sign_mask) & 1;
    phase = kIPowers[term.n_y & 3] * term.scaled_coeff;
    if (parity) phase = -phase;
    return mask ^ term.flip_mask;
}

void HamiltonianOp::apply_into(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    const Eigen::Index dim = Eigen::Index(1) << n_;
    if (in.size() != dim) throw argument_error("state dimension does not match operator");
    out.setZero(dim);
    for (const auto& term : compiled_) {
        if (term.flip_mask == 0) {  // diagonal term
            for (Eigen::Index b = 0; b < dim; ++b) {
                const int parity = std::popcount(std::uint64_t(b) & term.sign_mask) & 1;
                out[b] += (parity ? -term.scaled_coeff : term.scaled_coeff) * in[b];
            }
            continue;
        }
        for (Eigen::Index b = 0; b < dim; ++b) {
            std::complex<double> phase;
            const std::uint64_t target = apply_to_mask(term, std::uint64_t(b), phase);
            out[Eigen::Index(target)] += phase * in[b];
        }
    }
}

StateVector HamiltonianOp::apply(const StateVector& state) const {
    if (state.total_qubits() != n_) {
        throw argument_error("state qubit count does not match operator");
    }
    StateVector out = state;
    apply_into(state.amplitudes, out.amplitudes);
    return out;
}

std::complex<double> HamiltonianOp::expectation(const StateVector& state) const {
    Eigen::VectorXcd h_psi;
    apply_into(state.amplitudes, h_psi);
    return state.amplitudes.dot(h_psi);
}

double HamiltonianOp::ferro_expectation() const {
    // All-up state: only flip-free terms contribute, every z parity is even.
    double e = 0.0;
    for (const auto& term : compiled_) {
        if (term.flip_mask == 0) e += term.scaled_coeff;
    }
    return e;
}

Eigen::MatrixXcd HamiltonianOp::single_flip_block() const {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n_, n_);
    for (int j = 0; j < n_; ++j) {
        const std::uint64_t source = std::uint64_t(1) << j;
        for (const auto& term : compiled_) {
            std::complex<double> phase;
            const std::uint64_t target = apply_to_mask(term, source, phase);
            if (std::popcount(target) == 1) {
                const int l = std::countr_zero(target);
                block(l, j) += phase;
            }
        }
    }
    return block;
}

const Eigen::MatrixXcd& HamiltonianOp::dense() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (!cache_->matrix) {
        if (n_ > kMaxSites) {
            throw capacity_error("dense materialization capped at " +
                                 std::to_string(kMaxSites) + " qubits");
        }
        const Eigen::Index dim = Eigen::Index(1) << n_;
        auto m = std::make_shared<Eigen::MatrixXcd>(Eigen::MatrixXcd::Zero(dim, dim));
        for (const auto& term : compiled_) {
            for (Eigen::Index b = 0; b < dim; ++b) {
                std::complex<double> phase;
                const std::uint64_t target = apply_to_mask(term, std::uint64_t(b), phase);
                (*m)(Eigen::Index(target), b) += phase;
            }
        }
        cache_->matrix = std::move(m);
    }
    return *cache_->matrix;
}

}  // namespace spinforge
