#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "spinforge/hamiltonian.hpp"
#include "spinforge/spinspace.hpp"
#include "support/oracles.hpp"

using namespace spinforge;
constexpr double pi = std::numbers::pi;

TEST_CASE("coherent x state") {
    const StateVector s1 = coherent_x_state(1);
    CHECK(s1.amplitudes[0].real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s1.amplitudes[1].real() == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));

    const StateVector s2 = coherent_x_state(2);
    for (int b = 0; b < 4; ++b) {
        CHECK(s2.amplitudes[b] == std::complex<double>(0.5, 0.0));
    }

    const StateVector s10 = coherent_x_state(10);
    CHECK(collective_operator(SpinAxis::X, 10).expectation(s10).real() ==
          doctest::Approx(5.0).epsilon(1e-12));
    CHECK(std::abs(collective_operator(SpinAxis::Y, 10).expectation(s10)) < 1e-12);
    CHECK(std::abs(collective_operator(SpinAxis::Z, 10).expectation(s10)) < 1e-12);

    CHECK_THROWS_AS(coherent_x_state(0), capacity_error);
    CHECK_THROWS_AS(coherent_x_state(15), capacity_error);
}

TEST_CASE("collective operators") {
    const Eigen::MatrixXcd sz1 = collective_operator(SpinAxis::Z, 1).dense();
    CHECK(sz1(0, 0).real() == doctest::Approx(0.5));
    CHECK(sz1(1, 1).real() == doctest::Approx(-0.5));

    const Eigen::MatrixXcd sz2 = collective_operator(SpinAxis::Z, 2).dense();
    CHECK(sz2(0, 0).real() == doctest::Approx(1.0));
    CHECK(sz2(1, 1).real() == doctest::Approx(0.0));
    CHECK(sz2(2, 2).real() == doctest::Approx(0.0));
    CHECK(sz2(3, 3).real() == doctest::Approx(-1.0));

    // su(2) closure, checked against the kron-built oracle as well
    for (int n : {2, 4, 6}) {
        const Eigen::MatrixXcd sx = collective_operator(SpinAxis::X, n).dense();
        const Eigen::MatrixXcd sy = collective_operator(SpinAxis::Y, n).dense();
        const Eigen::MatrixXcd sz = collective_operator(SpinAxis::Z, n).dense();
        const std::complex<double> i(0, 1);
        CHECK(oracle::max_abs(sx * sy - sy * sx - i * sz) < 1e-12);
        CHECK(oracle::max_abs(sy * sz - sz * sy - i * sx) < 1e-12);
        CHECK(oracle::max_abs(sz * sx - sx * sz - i * sy) < 1e-12);
        CHECK(oracle::max_abs(sx - oracle::collective(n, SpinAxis::X)) < 1e-14);
        CHECK(oracle::max_abs(sy - oracle::collective(n, SpinAxis::Y)) < 1e-14);
    }
}

TEST_CASE("rotations") {
    const int n = 4;
    Eigen::VectorXcd up = Eigen::VectorXcd::Zero(16);
    up[0] = 1.0;
    const StateVector all_up = make_state(n, std::move(up));
    const StateVector rotated = rotate(all_up, SpinAxis::Y, pi / 2);
    CHECK(collective_operator(SpinAxis::X, n).expectation(rotated).real() ==
          doctest::Approx(n / 2.0).epsilon(1e-12));

    std::mt19937_64 rng(11);
    const StateVector psi = oracle::random_state(n, rng);
    const StateVector same = rotate(psi, SpinAxis::Z, 0.0);
    CHECK((same.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() < 1e-15);

    // 2 pi rotation picks up (-1)^N for half-integer spins
    for (int m : {3, 4}) {
        const StateVector phi = oracle::random_state(m, rng);
        const StateVector full = rotate(phi, SpinAxis::Y, 2 * pi);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        CHECK((full.amplitudes - sign * phi.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
    }

    CHECK_THROWS_AS(rotate(psi, SpinAxis::X, std::nan("")), argument_error);

    // oracle: rotate equals the dense matrix exponential of the collective generator
    for (auto axis : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z}) {
        const double angle = 0.7123;
        const Eigen::MatrixXcd u = oracle::expm_i(oracle::collective(n, axis), angle);
        const StateVector ours = rotate(psi, axis, angle);
        CHECK((ours.amplitudes - u * psi.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
    }

    // norm preservation over a random rotation sequence
    StateVector walk = psi;
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int step = 0; step < 50; ++step) {
        walk = rotate(walk, static_cast<SpinAxis>(step % 3), angle(rng));
    }
    CHECK(std::abs(walk.squared_norm() - 1.0) < 1e-10);
}

TEST_CASE("wigner d") {
    const WignerDTable d_half = wigner_d(0.5, pi / 2);
    const double c = std::cos(pi / 4), s = std::sin(pi / 4);
    CHECK(d_half.entries(0, 0) == doctest::Approx(c).epsilon(1e-14));
    CHECK(d_half.entries(0, 1) == doctest::Approx(-s).epsilon(1e-14));
    CHECK(d_half.entries(1, 0) == doctest::Approx(s).epsilon(1e-14));
    CHECK(d_half.entries(1, 1) == doctest::Approx(c).epsilon(1e-14));

    // stretched-state element d^J_{J,J}(beta) = cos^{2J}(beta/2)
    const WignerDTable d2 = wigner_d(2.0, pi / 3);
    CHECK(d2(2.0, 2.0) == doctest::Approx(std::pow(std::cos(pi / 6), 4)).epsilon(1e-13));

    // identity at beta = 0
    const WignerDTable d0 = wigner_d(1.5, 0.0);
    CHECK((d0.entries - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);

    // unitarity: unit row and column norms
    const WignerDTable d5 = wigner_d(5.0, pi / 2);
    for (int r = 0; r < 11; ++r) {
        CHECK(d5.entries.row(r).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d5.entries.col(r).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    // independent construction: generic matrix exponential of -i beta J_y in
    // the (2J+1)-dimensional ladder representation
    for (double j : {1.5, 3.0, 3.5}) {
        const double beta = 1.234;
        const int dim = int(std::lround(2 * j)) + 1;
        Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(dim, dim);
        const std::complex<double> i(0, 1);
        for (int r = 1; r < dim; ++r) {
            const double m = j - r;
            const double amp = 0.5 * std::sqrt(j * (j + 1) - m * (m + 1));
            jy(r - 1, r) = -i * amp;
            jy(r, r - 1) = i * amp;
        }
        const Eigen::MatrixXcd u = oracle::expm_i(jy, beta);
        const WignerDTable d = wigner_d(j, beta);
        CHECK(oracle::max_abs(u - d.entries.cast<std::complex<double>>()) < 1e-12);
    }

    // parity zeros of d^J_{0,m}(pi/2) at odd J+m
    const WignerDTable d3 = wigner_d(3.0, pi / 2);
    for (int m = -3; m <= 3; ++m) {
        if ((3 + m) % 2 != 0) CHECK(std::abs(d3(0.0, double(m))) < 1e-12);
    }

    CHECK_THROWS_AS(wigner_d(0.3, 1.0), argument_error);
    CHECK_THROWS_AS(d3(0.25, 1.0), argument_error);
}

TEST_CASE("symmetric projector") {
    const SymmetricProjector p2 = symmetric_projector(2);
    CHECK(p2.basis_vectors.cols() == 3);
    Eigen::VectorXcd singlet = Eigen::VectorXcd::Zero(4);
    singlet[1] = 1 / std::sqrt(2.0);
    singlet[2] = -1 / std::sqrt(2.0);
    CHECK((p2.basis_vectors.adjoint() * singlet).norm() < 1e-14);

    const StateVector coh = coherent_x_state(6);
    const SymmetricProjector p6 = symmetric_projector(6);
    CHECK((p6.apply(coh).amplitudes - coh.amplitudes).cwiseAbs().maxCoeff() < 1e-13);

    // idempotence of the dense projector
    const SymmetricProjector p4 = symmetric_projector(4);
    const Eigen::MatrixXcd proj = p4.basis_vectors * p4.basis_vectors.adjoint();
    CHECK(oracle::max_abs(proj * proj - proj) < 1e-12);
    // orthonormal basis, rank N+1
    CHECK(oracle::max_abs(p4.basis_vectors.adjoint() * p4.basis_vectors -
                          Eigen::MatrixXcd::Identity(5, 5)) < 1e-13);

    // spans exactly the (N/2)(N/2+1) eigenspace of S^2
    const Eigen::MatrixXcd s2 = oracle::total_spin_squared(4);
    CHECK(oracle::max_abs(s2 * proj - (2.0 * 3.0) * proj) < 1e-12);
}

TEST_CASE("projection identities") {
    for (int n : {3, 4, 5}) {
        const SymmetricProjector p = symmetric_projector(n);
        const Eigen::MatrixXcd proj = p.basis_vectors * p.basis_vectors.adjoint();
        const Eigen::MatrixXcd sz = oracle::collective(n, SpinAxis::Z);
        const Eigen::MatrixXcd dim_id = Eigen::MatrixXcd::Identity(proj.rows(), proj.cols());
        for (int i = 0; i < n; ++i) {
            // one-body: Pi S_i^a Pi = (1/N) S_a Pi
            for (auto axis : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z}) {
                const Eigen::MatrixXcd lhs = proj * oracle::spin(n, i, axis) * proj;
                const Eigen::MatrixXcd rhs = oracle::collective(n, axis) * proj / double(n);
                CHECK(oracle::max_abs(lhs - rhs) < 1e-12);
            }
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                const Eigen::MatrixXcd lhs = proj * oracle::spin(n, i, SpinAxis::Z) *
                                             oracle::spin(n, j, SpinAxis::Z) * proj;
                const Eigen::MatrixXcd rhs =
                    (sz * sz - 0.25 * n * dim_id) * proj / double(n * (n - 1));
                CHECK(oracle::max_abs(lhs - rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("magnetization distribution") {
    const auto ghz = magnetization_distribution(ghz_z_state(6));
    CHECK(ghz.front().first == doctest::Approx(-3.0));
    CHECK(ghz.front().second == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ghz.back().second == doctest::Approx(0.5).epsilon(1e-14));
    for (std::size_t k = 1; k + 1 < ghz.size(); ++k) CHECK(ghz[k].second < 1e-14);

    const auto c2 = magnetization_distribution(coherent_x_state(2));
    CHECK(c2[0].second == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(c2[1].second == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(c2[2].second == doctest::Approx(0.25).epsilon(1e-14));

    // binomial profile of the coherent state
    const int n = 8;
    const auto c8 = magnetization_distribution(coherent_x_state(n));
    double total = 0;
    for (const auto& [m, prob] : c8) {
        const int k = int(std::lround(n / 2.0 - m));
        double binom = 1.0;
        for (int t = 1; t <= k; ++t) binom *= double(n - t + 1) / t;
        CHECK(prob == doctest::Approx(binom * std::pow(2.0, -n)).epsilon(1e-12));
        CHECK(prob >= 0.0);
        total += prob;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

    StateVector with_probe = coherent_x_state(3);
    with_probe.has_probe = true;
    with_probe.amplitudes = Eigen::VectorXcd::Constant(16, 0.25);
    CHECK_THROWS_AS(magnetization_distribution(with_probe), argument_error);
}

TEST_CASE("state construction guards") {
    CHECK_THROWS_AS(make_state(3, Eigen::VectorXcd::Zero(7)), argument_error);
    CHECK_THROWS_AS(make_state(14, Eigen::VectorXcd::Zero(1 << 14), true), capacity_error);
}

TEST_CASE("frame length cap") {
    CollectiveFrame frame;
    frame.rotations.assign(5, {SpinAxis::Z, 0.1});
    CHECK_THROWS_AS(apply_frame(coherent_x_state(2), frame), argument_error);
    frame.rotations.assign(4, {SpinAxis::Z, 0.1});
    CHECK(std::abs(apply_frame(coherent_x_state(2), frame).squared_norm() - 1.0) < 1e-12);
}
