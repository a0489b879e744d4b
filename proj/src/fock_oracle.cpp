#include "fchain/fock_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fchain {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxOracleSites = 12;

// |P> = c+_{j1} c+_{j2} ... |0> with j1 < j2 < ...; an operator at position
// pos picks up one minus sign per occupied lower position.
double lower_sign(std::uint32_t pattern, int pos) {
    std::uint32_t below = pattern & ((1u << pos) - 1u);
    return (std::popcount(below) & 1) ? -1.0 : 1.0;
}

std::int64_t find_index(const std::vector<std::uint32_t>& basis, std::uint32_t pattern) {
    auto it = std::lower_bound(basis.begin(), basis.end(), pattern);
    if (it == basis.end() || *it != pattern) return -1;
    return it - basis.begin();
}

// Single-particle matrix h(a, b) multiplying c+_a c_b, assembled bond by
// bond in real space. Ring displacements use h(a, a+n) = tau_n together with
// the conjugate entry.
Eigen::MatrixXcd hopping_single_particle(const ModelSpec& spec) {
    int n = spec.geometry.n_sites;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    auto add_bond = [&](int j, int displacement, std::complex<double> tau) {
        int b = ((j + displacement) % n + n) % n;
        h(j, b) += tau;
        h(b, j) += std::conj(tau);
    };
    if (const auto* p = std::get_if<PowerLawHopping>(&spec.variant)) {
        for (int m = 1; m <= n / 2; ++m) {
            double tau = -p->t * std::pow(static_cast<double>(m), -p->alpha);
            for (int j = 0; j < n; ++j) add_bond(j, m, tau);
        }
    } else if (const auto* pm = std::get_if<PhaseModulatedHopping>(&spec.variant)) {
        for (int m = 1; m <= n / 2; ++m) {
            std::complex<double> tau =
                -pm->t * std::pow(static_cast<double>(m), -pm->alpha) *
                std::exp(std::complex<double>(0.0, -pm->phi * m));
            for (int j = 0; j < n; ++j) add_bond(j, m, tau);
        }
    } else if (std::holds_alternative<FractalDispersion>(spec.variant)) {
        // No closed-form bond amplitudes; invert the dispersion over the
        // momentum grid (complex: the dispersion is odd in k). The many-body
        // treatment below stays independent.
        ModeGrid grid = build_mode_grid(spec);
        std::vector<std::complex<double>> tau(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r) {
            detail::CompensatedSum re, im;
            for (size_t i = 0; i < grid.momenta.size(); ++i) {
                re.add(grid.energies[i] * std::cos(grid.momenta[i] * r));
                im.add(grid.energies[i] * std::sin(grid.momenta[i] * r));
            }
            tau[static_cast<size_t>(r)] = {re.value() / n, im.value() / n};
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) h(a, b) = tau[static_cast<size_t>(((b - a) % n + n) % n)];
    } else if (const auto* se = std::get_if<SelectiveHopping>(&spec.variant)) {
        for (int q = -se->r; q <= se->r; ++q) {
            for (int j = 0; j < n; ++j) {
                add_bond(j, se->s1 + q, -se->t1);
                add_bond(j, se->s2 + q, -se->t2);
            }
        }
    } else {
        throw std::invalid_argument("oracle: not a hopping model");
    }
    return h;
}

struct SolveResult {
    double energy = 0.0;
    Eigen::VectorXcd ground;
};

SolveResult solve_lowest(const Eigen::MatrixXcd& h_many, const char* who) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_many);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error(std::string(who) + ": eigensolver failed");
    if (h_many.rows() > 1) {
        double gap = solver.eigenvalues()(1) - solver.eigenvalues()(0);
        if (gap <= 1e-9)
            throw std::runtime_error(std::string(who) +
                                     ": degenerate many-body ground state; comparisons "
                                     "require a unique ground state");
    }
    return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

FockState hopping_ground_state(const ModelSpec& spec) {
    int n = spec.geometry.n_sites;
    double f = std::get<FixedFilling>(spec.occupation).f;
    int n_filled = static_cast<int>(std::lround(f * n));
    Eigen::MatrixXcd h = hopping_single_particle(spec);
    FockState state;
    state.n_sites = n;
    for (std::uint32_t p = 0; p < (1u << n); ++p)
        if (std::popcount(p) == n_filled) state.basis.push_back(p);
    auto dim = static_cast<Eigen::Index>(state.basis.size());
    Eigen::MatrixXcd hm = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        std::uint32_t pat = state.basis[static_cast<size_t>(idx)];
        for (int b = 0; b < n; ++b) {
            if (!(pat >> b & 1u)) continue;
            hm(idx, idx) += h(b, b);
            double s1 = lower_sign(pat, b);
            std::uint32_t mid = pat ^ (1u << b);
            for (int a = 0; a < n; ++a) {
                if (a == b || (mid >> a & 1u) || h(a, b) == std::complex<double>(0.0)) continue;
                double s2 = lower_sign(mid, a);
                std::int64_t target = find_index(state.basis, mid | (1u << a));
                hm(target, idx) += h(a, b) * s1 * s2;
            }
        }
    }
    SolveResult sol = solve_lowest(hm, "oracle (hopping)");
    state.amplitudes = sol.ground;
    state.energy = sol.energy;
    return state;
}

FockState kitaev_ground_state(const ModelSpec& spec) {
    const auto& kc = spec.kitaev();
    int n = spec.geometry.n_sites;
    // Antiperiodic ring handled by an explicit seam: every bond or pairing
    // string that wraps past site n picks up a minus sign. The site-dependent
    // (-1)^j gauge on the hopping matches the k+pi momentum offset of the
    // engine's kinetic term.
    Eigen::MatrixXd hop = Eigen::MatrixXd::Zero(n, n);
    for (int m = 1; m < n / 2; ++m) {
        double tau;
        if (kc.beta)
            tau = -kc.t * ((m & 1) ? -1.0 : 1.0) * std::pow(static_cast<double>(m), -*kc.beta);
        else if (m == 1)
            tau = kc.t;
        else
            continue;
        for (int j = 0; j < n; ++j) {
            int raw = j + m;
            double seam = (raw < n) ? 1.0 : -1.0;
            int b = raw % n;
            hop(b, j) += seam * tau;
            hop(j, b) += seam * tau;
        }
    }
    Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(n, n);
    for (int m = 1; m < n; ++m) {
        int dm = std::min(m, n - m);
        double beta_m =
            0.5 * kc.delta * ((m & 1) ? 1.0 : -1.0) * std::pow(static_cast<double>(dm), -kc.alpha_pair);
        for (int j = 0; j < n; ++j) {
            int raw = j + m;
            double seam = (raw < n) ? 1.0 : -1.0;
            int p = raw % n;
            pair(p, j) += seam * beta_m;
            pair(j, p) -= seam * beta_m;
        }
    }
    FockState state;
    state.n_sites = n;
    std::uint32_t dim_full = 1u << n;
    state.basis.resize(dim_full);
    for (std::uint32_t p = 0; p < dim_full; ++p) state.basis[p] = p;
    Eigen::MatrixXcd hm = Eigen::MatrixXcd::Zero(dim_full, dim_full);
    for (std::uint32_t pat = 0; pat < dim_full; ++pat) {
        hm(pat, pat) = -kc.mu * std::popcount(pat) + 0.5 * kc.mu * n;
        for (int b = 0; b < n; ++b) {
            if (!(pat >> b & 1u)) continue;
            double s1 = lower_sign(pat, b);
            std::uint32_t mid = pat ^ (1u << b);
            for (int a = 0; a < n; ++a) {
                if (a == b || (mid >> a & 1u) || hop(a, b) == 0.0) continue;
                double s2 = lower_sign(mid, a);
                hm(mid | (1u << a), pat) += hop(a, b) * s1 * s2;
            }
        }
        // 1/2 sum_{pq} B_pq c+_p c+_q plus its conjugate.
        for (int q = 0; q < n; ++q) {
            for (int p = 0; p < n; ++p) {
                if (p == q || pair(p, q) == 0.0) continue;
                if (!(pat >> q & 1u) && !(pat >> p & 1u)) {
                    double s1 = lower_sign(pat, q);
                    std::uint32_t mid = pat | (1u << q);
                    if (!(mid >> p & 1u)) {
                        double s2 = lower_sign(mid, p);
                        hm(mid | (1u << p), pat) += 0.5 * pair(p, q) * s1 * s2;
                    }
                }
                if ((pat >> p & 1u) && (pat >> q & 1u)) {
                    double s1 = lower_sign(pat, p);
                    std::uint32_t mid = pat ^ (1u << p);
                    if (mid >> q & 1u) {
                        double s2 = lower_sign(mid, q);
                        hm(mid ^ (1u << q), pat) += 0.5 * pair(p, q) * s1 * s2;
                    }
                }
            }
        }
    }
    double herm_dev = (hm - hm.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > 1e-12 * std::max(1.0, hm.cwiseAbs().maxCoeff()))
        throw std::logic_error("oracle (kitaev): assembled Hamiltonian is not Hermitian");
    SolveResult sol = solve_lowest(hm, "oracle (kitaev)");
    state.amplitudes = sol.ground;
    state.energy = sol.energy;
    return state;
}

std::vector<int> checked_positions(const FockState& state, const std::vector<int>& sites) {
    if (sites.empty()) throw std::invalid_argument("oracle: empty subsystem");
    std::vector<int> pos;
    pos.reserve(sites.size());
    for (int s : sites) {
        if (s < 1 || s > state.n_sites)
            throw std::invalid_argument("oracle: site label outside [1, n_sites]");
        pos.push_back(s - 1);
    }
    std::sort(pos.begin(), pos.end());
    if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
        throw std::invalid_argument("oracle: duplicate site label");
    return pos;
}

}  // namespace

FockState oracle_ground_state(const ModelSpec& spec) {
    spec.validate();
    if (spec.geometry.n_sites > kMaxOracleSites) {
        std::ostringstream os;
        os << "oracle: dense diagonalization supports at most " << kMaxOracleSites
           << " sites, got " << spec.geometry.n_sites;
        throw std::invalid_argument(os.str());
    }
    return spec.is_kitaev() ? kitaev_ground_state(spec) : hopping_ground_state(spec);
}

double oracle_entropy(const FockState& state, const std::vector<int>& sites) {
    std::vector<int> pos_a = checked_positions(state, sites);
    std::uint32_t mask_a = 0;
    for (int p : pos_a) mask_a |= 1u << p;
    std::vector<int> pos_b;
    std::uint32_t mask_b = 0;
    for (int p = 0; p < state.n_sites; ++p) {
        if (!(mask_a >> p & 1u)) {
            pos_b.push_back(p);
            mask_b |= 1u << p;
        }
    }
    auto compress = [](std::uint32_t pat, const std::vector<int>& pos) {
        std::uint32_t out = 0;
        for (size_t i = 0; i < pos.size(); ++i)
            if (pat >> pos[i] & 1u) out |= 1u << i;
        return out;
    };
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(1u << pos_a.size(), 1u << pos_b.size());
    for (size_t idx = 0; idx < state.basis.size(); ++idx) {
        std::uint32_t pat = state.basis[idx];
        // Reordering c-operators so the traced block sits in front costs one
        // sign per occupied (a in A, b in B) pair with b below a.
        int crossings = 0;
        std::uint32_t occ_a = pat & mask_a;
        while (occ_a) {
            int a = std::countr_zero(occ_a);
            occ_a &= occ_a - 1u;
            crossings += std::popcount(pat & mask_b & ((1u << a) - 1u));
        }
        double sign = (crossings & 1) ? -1.0 : 1.0;
        m(compress(pat, pos_a), compress(pat, pos_b)) +=
            sign * state.amplitudes(static_cast<Eigen::Index>(idx));
    }
    Eigen::MatrixXcd rho = m * m.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("oracle: eigensolver failed on the reduced density matrix");
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double lam = solver.eigenvalues()(i);
        if (lam > 1e-14) s -= lam * std::log(lam);
    }
    return s;
}

double oracle_mi(const FockState& state, const Partition& p) {
    std::vector<int> a = block_a_sites(p, state.n_sites);
    std::vector<int> b = block_b_sites(p, state.n_sites);
    std::vector<int> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    return oracle_entropy(state, a) + oracle_entropy(state, b) - oracle_entropy(state, ab);
}

std::complex<double> oracle_c(const FockState& state, int i, int j) {
    if (i < 1 || i > state.n_sites || j < 1 || j > state.n_sites)
        throw std::invalid_argument("oracle: site label outside [1, n_sites]");
    int pi = i - 1, pj = j - 1;
    std::complex<double> acc = 0.0;
    for (size_t idx = 0; idx < state.basis.size(); ++idx) {
        std::uint32_t pat = state.basis[idx];
        if (!(pat >> pj & 1u)) continue;
        double s1 = lower_sign(pat, pj);
        std::uint32_t mid = pat ^ (1u << pj);
        if (mid >> pi & 1u) continue;
        double s2 = lower_sign(mid, pi);
        std::int64_t target = find_index(state.basis, mid | (1u << pi));
        if (target < 0) continue;
        acc += std::conj(state.amplitudes(target)) * state.amplitudes(static_cast<Eigen::Index>(idx)) *
               (s1 * s2);
    }
    return acc;
}

std::complex<double> oracle_f(const FockState& state, int i, int j) {
    if (i < 1 || i > state.n_sites || j < 1 || j > state.n_sites)
        throw std::invalid_argument("oracle: site label outside [1, n_sites]");
    int pi = i - 1, pj = j - 1;
    std::complex<double> acc = 0.0;
    for (size_t idx = 0; idx < state.basis.size(); ++idx) {
        std::uint32_t pat = state.basis[idx];
        if (!(pat >> pj & 1u)) continue;
        double s1 = lower_sign(pat, pj);
        std::uint32_t mid = pat ^ (1u << pj);
        if (!(mid >> pi & 1u)) continue;
        double s2 = lower_sign(mid, pi);
        std::int64_t target = find_index(state.basis, mid ^ (1u << pi));
        if (target < 0) continue;
        acc += std::conj(state.amplitudes(target)) * state.amplitudes(static_cast<Eigen::Index>(idx)) *
               (s1 * s2);
    }
    return acc;
}

double oracle_parity(const FockState& state) {
    double acc = 0.0;
    for (size_t idx = 0; idx < state.basis.size(); ++idx) {
        double w = std::norm(state.amplitudes(static_cast<Eigen::Index>(idx)));
        acc += (std::popcount(state.basis[idx]) & 1) ? -w : w;
    }
    return acc;
}

double oracle_covariance(const FockState& state, int i, int j) {
    if (i < 1 || i > state.n_sites || j < 1 || j > state.n_sites)
        throw std::invalid_argument("oracle: site label outside [1, n_sites]");
    std::uint32_t bi = 1u << (i - 1), bj = 1u << (j - 1);
    double nn = 0.0, ni = 0.0, nj = 0.0;
    for (size_t idx = 0; idx < state.basis.size(); ++idx) {
        double w = std::norm(state.amplitudes(static_cast<Eigen::Index>(idx)));
        std::uint32_t pat = state.basis[idx];
        if (pat & bi) ni += w;
        if (pat & bj) nj += w;
        if ((pat & bi) && (pat & bj)) nn += w;
    }
    return nn - ni * nj;
}

}  // namespace fchain
