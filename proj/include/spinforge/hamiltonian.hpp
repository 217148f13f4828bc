#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "spinforge/spinspace.hpp"

namespace spinforge {

// One weighted product of spin-1/2 operators, coeff * prod_i S_{site_i}^{axis_i}
// with S = sigma/2. An empty factor list is a multiple of the identity.
struct PauliTerm {
    double coeff = 0.0;
    std::vector<std::pair<int, SpinAxis>> factors;  // strictly increasing sites
};

// Hermitian operator on the chain (or chain+probe) Hilbert space. Terms are
// immutable after construction; matrix-free apply is the default path and the
// dense matrix is materialized lazily, at most once, behind a mutex so
// concurrent readers see either no cache or the finished matrix.
class HamiltonianOp {
  public:
    HamiltonianOp(int n_sites, std::vector<PauliTerm> terms);

    int n_sites() const { return n_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    // H |psi>, matrix-free. Requires state.total_qubits() == n_sites().
    StateVector apply(const StateVector& state) const;
    void apply_into(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

    std::complex<double> expectation(const StateVector& state) const;

    // <F|H|F> on the all-up state, evaluated term by term (works for any N,
    // no 2^N storage).
    double ferro_expectation() const;

    // N x N block <l|H|j> over the single-flip states |j> = S_j^- |F>,
    // evaluated from the terms (works for N up to 64).
    Eigen::MatrixXcd single_flip_block() const;

    // Dense 2^N x 2^N materialization, lazily built and cached.
    const Eigen::MatrixXcd& dense() const;

  private:
    struct CompiledTerm {
        std::uint64_t flip_mask = 0;   // x and y sites
        std::uint64_t sign_mask = 0;   // y and z sites: (-1)^popcount(b & mask)
        int n_y = 0;                   // global i^{n_y}
        double scaled_coeff = 0.0;     // coeff / 2^{n_factors}
    };

    struct DenseCache {
        std::mutex mutex;
        std::shared_ptr<const Eigen::MatrixXcd> matrix;
    };

    // Applies the sigma-product of `term` to the basis ket `mask` (bit = 1
    // means flipped/down); returns the target mask and accumulates the phase.
    static std::uint64_t apply_to_mask(const CompiledTerm& term, std::uint64_t mask,
                                       std::complex<double>& phase);

    int n_;
    std::vector<PauliTerm> terms_;
    std::vector<CompiledTerm> compiled_;
    std::shared_ptr<DenseCache> cache_;
};

}  // namespace spinforge
