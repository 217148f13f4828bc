#include "spinforge/swt.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <numbers>

namespace spinforge {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGridTol = 1e-9;
}

CouplingProfile coupling_profile(const ModelSpec& spec) {
    CouplingProfile p;
    p.n_sites = spec.n_sites;
    p.j_of_r = coupling_row(spec);
    return p;
}

double j_tilde(const CouplingProfile& profile, double q) {
    std::complex<double> s = 0.0;
    const std::complex<double> i(0.0, 1.0);
    for (int r = 1; r <= int(profile.j_of_r.size()); ++r) {
        s += profile.j_of_r[r - 1] * std::exp(i * q * double(r));
    }
    return s.real();
}

static void check_on_grid(int n, double q) {
    const double k = q * n / (2 * kPi);
    if (std::abs(k - std::round(k)) > kGridTol * n) {
        throw argument_error("momentum off the 2 pi k / N grid");
    }
}

double dispersion(const CouplingProfile& profile, double delta, double q) {
    check_on_grid(profile.n_sites, q);
    return 0.5 * ((1.0 + delta) * j_tilde(profile, 0.0) - j_tilde(profile, q));
}

double magnon_gap(const CouplingProfile& profile, double delta) {
    const int n = profile.n_sites;
    if (n < 2) throw argument_error("gap needs at least two sites");
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 1; k < n; ++k) {
        gap = std::min(gap, dispersion(profile, delta, 2 * kPi * k / n));
    }
    return gap;
}

double chi_staggered(int n_sites, double j0, double h_z) {
    if (n_sites < 4 || n_sites % 2 != 0) {
        throw argument_error("staggered coupling needs an even chain of at least 4 sites");
    }
    return h_z * h_z / (2.0 * j0 * (n_sites - 1));
}

double chi_xxz(int n_sites, const CouplingProfile& profile, double delta) {
    if (n_sites < 2) throw argument_error("need at least two sites");
    return -0.5 * delta * j_tilde(profile, 0.0) / (n_sites - 1);
}

double analytic_chi(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::StaggeredXXX:
            return chi_staggered(spec.n_sites, spec.j0, spec.h_z);
        case ModelKind::LongRangeXXZ:
            return chi_xxz(spec.n_sites, coupling_profile(spec), spec.delta);
        case ModelKind::OAT:
            return spec.chi;
        case ModelKind::IsingLimit:
            return -0.5 * (1.0 + spec.delta) * j_tilde(coupling_profile(spec), 0.0) /
                   (spec.n_sites - 1);
    }
    throw argument_error("unknown model kind");
}

FieldProfile staggered_field(int n_sites, double h_z) {
    FieldProfile f;
    f.h = Eigen::MatrixXd::Zero(n_sites, 3);
    for (int j = 0; j < n_sites; ++j) {
        f.h(j, 2) = -h_z * (j % 2 == 0 ? 1.0 : -1.0);
    }
    return f;
}

ChiTensor chi_tensor(const CouplingProfile& profile, const FieldProfile& field) {
    const int n = profile.n_sites;
    if (field.h.rows() != n || field.h.cols() != 3) {
        throw argument_error("field profile shape must be (N, 3)");
    }
    if (!field.h.allFinite()) throw argument_error("field entries must be finite");
    // Remove the uniform component; only q != 0 modes enter.
    Eigen::MatrixXd dh = field.h;
    for (int a = 0; a < 3; ++a) dh.col(a).array() -= field.h.col(a).mean();

    const std::complex<double> i(0.0, 1.0);
    Eigen::Matrix3cd lambda = Eigen::Matrix3cd::Zero();
    for (int k = 1; k < n; ++k) {
        const double q = 2 * kPi * k / n;
        const double eps = dispersion(profile, 0.0, q);
        if (std::abs(eps) < 1e-14) {
            throw singularity_error("vanishing magnon energy at q = 2 pi " +
                                    std::to_string(k) + "/" + std::to_string(n));
        }
        Eigen::Vector3cd hq = Eigen::Vector3cd::Zero();
        for (int j = 0; j < n; ++j) {
            const std::complex<double> ph = std::exp(i * q * double(j)) / std::sqrt(double(n));
            for (int a = 0; a < 3; ++a) hq[a] += dh(j, a) * ph;
        }
        // h~_a(q) h~_b(-q) = h~_a(q) conj(h~_b(q)) for a real field
        lambda += (hq * hq.adjoint()) / eps;
    }
    ChiTensor t;
    t.chi = lambda.real() / (double(n) * (n - 1));  // symmetric (Hermitian) part
    // B_c = -(i/2N) eps_{abc} Lambda_{ab}; only the antisymmetric part i Im(Lambda) survives
    const Eigen::Matrix3d im = lambda.imag();
    t.linear_term[0] = (im(1, 2) - im(2, 1)) / (2.0 * n);
    t.linear_term[1] = (im(2, 0) - im(0, 2)) / (2.0 * n);
    t.linear_term[2] = (im(0, 1) - im(1, 0)) / (2.0 * n);
    return t;
}

std::vector<std::pair<double, double>> one_magnon_energies(const HamiltonianOp& h) {
    const int n = h.n_sites();
    const double e_f = h.ferro_expectation();
    const Eigen::MatrixXcd block = h.single_flip_block();
    // Translation invariance: H1[l][j] must equal H1[l+1][j+1] on the ring.
    double dev = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < n; ++l) {
            dev = std::max(dev, std::abs(block(l, j) - block((l + 1) % n, (j + 1) % n)));
        }
    }
    if (dev > 1e-10) {
        throw argument_error("Hamiltonian is not translation invariant on the ring");
    }
    const std::complex<double> i(0.0, 1.0);
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double q = 2 * kPi * k / n;
        std::complex<double> e = 0.0;
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                e += std::exp(i * q * double(j - l)) * block(l, j);
            }
        }
        out.emplace_back(q, e.real() / n - e_f);
    }
    return out;
}

double chi_numeric(const HamiltonianOp& h, int n_sites) {
    if (n_sites != h.n_sites()) throw argument_error("site count mismatch");
    if (n_sites < 2) throw argument_error("need at least two sites");
    const double e_f = h.ferro_expectation();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.single_flip_block());
    if (es.info() != Eigen::Success) {
        throw numerical_error("single-flip eigendecomposition failed");
    }
    const double e_w = es.eigenvalues().minCoeff();
    return (e_f - e_w) / (n_sites - 1);
}

ValidityResult perturbative_validity(double h, double gap) {
    if (!(gap > 0)) throw argument_error("gap must be positive");
    ValidityResult r;
    r.ratio = h / gap;
    r.valid = r.ratio <= 0.3;
    return r;
}

}  // namespace spinforge
