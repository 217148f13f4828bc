#include "spinforge/models.hpp"

#include <cmath>

namespace spinforge {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::StaggeredXXX: return "staggered_xxx";
        case ModelKind::LongRangeXXZ: return "longrange_xxz";
        case ModelKind::OAT: return "oat";
        case ModelKind::IsingLimit: return "ising_limit";
    }
    return "?";
}

std::string to_string(DistanceConvention d) {
    return d == DistanceConvention::RingMinimal ? "ring_minimal" : "linear";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "staggered_xxx") return ModelKind::StaggeredXXX;
    if (s == "longrange_xxz") return ModelKind::LongRangeXXZ;
    if (s == "oat") return ModelKind::OAT;
    if (s == "ising_limit") return ModelKind::IsingLimit;
    throw argument_error("unknown model kind '" + s + "'");
}

DistanceConvention distance_from_string(const std::string& s) {
    if (s == "ring_minimal") return DistanceConvention::RingMinimal;
    if (s == "linear") return DistanceConvention::Linear;
    throw argument_error("unknown distance convention '" + s + "'");
}

void ModelSpec::validate() const {
    if (n_sites < 1) throw argument_error("n_sites must be positive");
    if (j0 <= 0) throw argument_error("J0 must be positive");
    if (gamma < 0) throw argument_error("gamma must be nonnegative");
    if (kind == ModelKind::StaggeredXXX && n_sites % 2 != 0) {
        throw argument_error("staggered XXX needs an even ring");
    }
}

std::vector<double> coupling_row(const ModelSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    std::vector<double> j(std::max(n - 1, 1), 0.0);
    if (spec.kind == ModelKind::StaggeredXXX) {
        if (n == 2) {
            j[0] = 2.0 * spec.j0;  // the two ring bonds coincide
        } else {
            j[0] = spec.j0;
            j[n - 2] = spec.j0;
        }
        return j;
    }
    for (int r = 1; r < n; ++r) {
        const double d = spec.distance == DistanceConvention::RingMinimal
                             ? double(std::min(r, n - r))
                             : double(r);
        j[r - 1] = spec.j0 * std::pow(d, -spec.gamma);
    }
    if (spec.kac) {
        // Ring-minimal rows all share one sum; with the linear distance the
        // rows differ and the divisor uses the largest (site 0 or N-1).
        double divisor = 0.0;
        if (spec.distance == DistanceConvention::RingMinimal) {
            for (double v : j) divisor += v;
        } else {
            for (int i = 0; i < n; ++i) {
                double row = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k != i) row += spec.j0 * std::pow(double(std::abs(k - i)), -spec.gamma);
                }
                divisor = std::max(divisor, row);
            }
        }
        divisor /= spec.j0;
        for (double& v : j) v /= divisor;
    }
    return j;
}

static void add_exchange(std::vector<PauliTerm>& terms, int i, int j, double coeff) {
    terms.push_back(PauliTerm{coeff, {{i, SpinAxis::X}, {j, SpinAxis::X}}});
    terms.push_back(PauliTerm{coeff, {{i, SpinAxis::Y}, {j, SpinAxis::Y}}});
    terms.push_back(PauliTerm{coeff, {{i, SpinAxis::Z}, {j, SpinAxis::Z}}});
}

HamiltonianOp build_staggered_xxx(const ModelSpec& spec) {
    spec.validate();
    if (spec.kind != ModelKind::StaggeredXXX) {
        throw argument_error("spec kind is not staggered_xxx");
    }
    const int n = spec.n_sites;
    std::vector<PauliTerm> terms;
    for (int i = 0; i < n; ++i) {
        const int a = std::min(i, (i + 1) % n);
        const int b = std::max(i, (i + 1) % n);
        add_exchange(terms, a, b, -spec.j0);
    }
    if (spec.h_z != 0.0) {
        for (int i = 0; i < n; ++i) {
            const double sign = (i % 2 == 0) ? 1.0 : -1.0;
            terms.push_back(PauliTerm{-spec.h_z * sign, {{i, SpinAxis::Z}}});
        }
    }
    return HamiltonianOp(n, std::move(terms));
}

HamiltonianOp build_longrange_xxz(const ModelSpec& spec) {
    spec.validate();
    if (spec.kind != ModelKind::LongRangeXXZ) {
        throw argument_error("spec kind is not longrange_xxz");
    }
    const int n = spec.n_sites;
    const std::vector<double> j = coupling_row(spec);
    std::vector<PauliTerm> terms;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double jab = j[b - a - 1];  // ordered-pair sum folds to -J per pair
            add_exchange(terms, a, b, -jab);
            if (spec.delta != 0.0) {
                terms.push_back(
                    PauliTerm{-jab * spec.delta, {{a, SpinAxis::Z}, {b, SpinAxis::Z}}});
            }
        }
    }
    return HamiltonianOp(n, std::move(terms));
}

HamiltonianOp build_oat(int n_sites, double chi) {
    detail::check_capacity(n_sites);
    // S_z^2 = N/4 + 2 sum_{i<j} S_i^z S_j^z
    std::vector<PauliTerm> terms;
    terms.push_back(PauliTerm{chi * 0.25 * n_sites, {}});
    for (int a = 0; a < n_sites; ++a) {
        for (int b = a + 1; b < n_sites; ++b) {
            terms.push_back(PauliTerm{2.0 * chi, {{a, SpinAxis::Z}, {b, SpinAxis::Z}}});
        }
    }
    return HamiltonianOp(n_sites, std::move(terms));
}

HamiltonianOp build_ising_limit(const ModelSpec& spec) {
    spec.validate();
    const int n = spec.n_sites;
    const std::vector<double> j = coupling_row(spec);
    std::vector<PauliTerm> terms;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            terms.push_back(PauliTerm{-(1.0 + spec.delta) * j[b - a - 1],
                                      {{a, SpinAxis::Z}, {b, SpinAxis::Z}}});
        }
    }
    return HamiltonianOp(n, std::move(terms));
}

HamiltonianOp build_model(const ModelSpec& spec) {
    switch (spec.kind) {
        case ModelKind::StaggeredXXX: return build_staggered_xxx(spec);
        case ModelKind::LongRangeXXZ: return build_longrange_xxz(spec);
        case ModelKind::OAT: return build_oat(spec.n_sites, spec.chi);
        case ModelKind::IsingLimit: return build_ising_limit(spec);
    }
    throw argument_error("unknown model kind");
}

HamiltonianOp attach_probe_coupling(int n_sites, double kappa) {
    if (n_sites + 1 > kMaxSites + 1) {
        throw capacity_error("chain plus probe exceeds the qubit cap");
    }
    std::vector<PauliTerm> terms;
    if (kappa != 0.0) {
        for (int i = 0; i < n_sites; ++i) {
            terms.push_back(PauliTerm{kappa, {{i, SpinAxis::Z}, {n_sites, SpinAxis::Z}}});
        }
    }
    if (terms.empty()) terms.push_back(PauliTerm{0.0, {}});
    return HamiltonianOp(n_sites + 1, std::move(terms));
}

}  // namespace spinforge
