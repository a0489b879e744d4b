#include "fchain/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

using detail::CompensatedSum;

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

}  // namespace

std::complex<double> GroundStateData::corr_c(int r) const {
    if (std::abs(r) > kernel_range)
        throw std::logic_error("ground state: displacement outside cached kernel range");
    return c_kernel[static_cast<size_t>(r + kernel_range)];
}

double GroundStateData::corr_f(int r) const {
    if (!has_pairing())
        throw std::logic_error("ground state: pairing kernel requested for a hopping model");
    if (std::abs(r) > kernel_range)
        throw std::logic_error("ground state: displacement outside cached kernel range");
    return f_kernel[static_cast<size_t>(r + kernel_range)];
}

std::vector<int> occupy_modes(const ModeGrid& grid, const OccupationRule& rule) {
    int n_modes = static_cast<int>(grid.momenta.size());
    std::vector<int> selected;
    if (const auto* cp = std::get_if<ChemicalPotential>(&rule)) {
        for (int i = 0; i < n_modes; ++i)
            if (grid.energies[static_cast<size_t>(i)] < cp->mu) selected.push_back(i);
        return selected;
    }
    double f = std::get<FixedFilling>(rule).f;
    double ft = f * n_modes;
    int n_filled = static_cast<int>(std::lround(ft));
    if (std::abs(ft - n_filled) > 1e-9 || n_filled < 0 || n_filled > n_modes)
        throw std::invalid_argument("occupy_modes: filling * n_sites must be an integer in range");
    std::vector<int> order(static_cast<size_t>(n_modes));
    for (int i = 0; i < n_modes; ++i) order[static_cast<size_t>(i)] = i;
    // Energy, then |label|, then the positive member of a +/-k pair first.
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const auto key = [&](int i) {
            return std::make_tuple(grid.energies[static_cast<size_t>(i)],
                                   std::abs(grid.labels[static_cast<size_t>(i)]),
                                   -grid.labels[static_cast<size_t>(i)]);
        };
        return key(a) < key(b);
    });
    if (n_filled > 0 && n_filled < n_modes) {
        double e_in = grid.energies[static_cast<size_t>(order[static_cast<size_t>(n_filled - 1)])];
        double e_out = grid.energies[static_cast<size_t>(order[static_cast<size_t>(n_filled)])];
        double scale = std::max({1.0, std::abs(e_in), std::abs(e_out)});
        if (e_out - e_in <= 1e-12 * scale) {
            std::ostringstream os;
            os << "occupy_modes: occupation boundary is degenerate at energy " << e_in
               << "; the ground state is not unique at this filling";
            fail(os.str());
        }
    }
    selected.assign(order.begin(), order.begin() + n_filled);
    std::sort(selected.begin(), selected.end());
    return selected;
}

GroundStateData make_ground_state(const ModelSpec& spec, int kernel_range) {
    spec.validate();
    GroundStateData state;
    state.spec = spec;
    state.grid = build_mode_grid(spec);
    int n_sites = spec.geometry.n_sites;
    int range = (kernel_range < 0) ? n_sites - 1 : std::min(kernel_range, n_sites - 1);
    state.kernel_range = range;
    size_t n_modes = state.grid.momenta.size();
    state.c_kernel.resize(static_cast<size_t>(2 * range + 1));

    if (spec.is_kitaev()) {
        for (size_t i = 0; i < n_modes; ++i) {
            if (state.grid.energies[i] < 1e-14) {
                std::ostringstream os;
                os << "ground state: gapless Bogoliubov spectrum at k = " << state.grid.momenta[i]
                   << " (" << spec.label() << ")";
                throw GaplessError(os.str());
            }
        }
        std::vector<double> occ(n_modes), pair(n_modes);
        CompensatedSum fill;
        for (size_t i = 0; i < n_modes; ++i) {
            double th = state.grid.bog_angles[i];
            double s = std::sin(th);
            occ[i] = s * s;
            pair[i] = std::sin(2.0 * th);
            fill.add(occ[i]);
        }
        state.achieved_filling = fill.value() / static_cast<double>(n_modes);
        state.f_kernel.resize(static_cast<size_t>(2 * range + 1));
        for (int r = -range; r <= range; ++r) {
            CompensatedSum cs, fs;
            for (size_t i = 0; i < n_modes; ++i) {
                double kr = state.grid.momenta[i] * r;
                cs.add(std::cos(kr) * occ[i]);
                fs.add(std::sin(kr) * pair[i]);
            }
            // <c+_i c_j> is real and even in r; <c_i c_j> real and odd, with
            // the sign fixed once against the exact-diagonalization oracle.
            state.c_kernel[static_cast<size_t>(r + range)] = cs.value() / n_sites;
            state.f_kernel[static_cast<size_t>(r + range)] = -0.5 * fs.value() / n_sites;
        }
        return state;
    }

    state.occupied = occupy_modes(state.grid, spec.occupation);
    state.achieved_filling =
        static_cast<double>(state.occupied.size()) / static_cast<double>(n_modes);
    for (int r = -range; r <= range; ++r) {
        CompensatedSum re, im;
        for (int idx : state.occupied) {
            double kr = state.grid.momenta[static_cast<size_t>(idx)] * r;
            re.add(std::cos(kr));
            im.add(std::sin(kr));
        }
        state.c_kernel[static_cast<size_t>(r + range)] =
            std::complex<double>(re.value() / n_sites, im.value() / n_sites);
    }
    return state;
}

double filling_from_mu(const ModelSpec& spec) {
    if (!spec.is_kitaev())
        throw std::invalid_argument("filling_from_mu: requires a Kitaev chain");
    return make_ground_state(spec, 0).achieved_filling;
}

double ground_state_energy(const GroundStateData& state) {
    CompensatedSum e;
    if (state.has_pairing()) {
        for (double eps : state.grid.energies) e.add(eps);
        return -0.5 * e.value();
    }
    for (int idx : state.occupied) e.add(state.grid.energies[static_cast<size_t>(idx)]);
    return e.value();
}

CorrelationData correlation_matrix(const GroundStateData& state, const std::vector<int>& sites) {
    int n_sites = state.spec.geometry.n_sites;
    if (sites.empty()) throw std::invalid_argument("correlation_matrix: empty site list");
    std::set<int> seen;
    for (int s : sites) {
        if (s < 1 || s > n_sites) {
            std::ostringstream os;
            os << "correlation_matrix: site label " << s << " outside [1, " << n_sites << "]";
            throw std::invalid_argument(os.str());
        }
        if (!seen.insert(s).second) {
            std::ostringstream os;
            os << "correlation_matrix: duplicate site label " << s;
            throw std::invalid_argument(os.str());
        }
    }
    auto l = static_cast<Eigen::Index>(sites.size());
    CorrelationData corr;
    corr.sites = sites;
    corr.C.resize(l, l);
    if (state.has_pairing()) corr.F.emplace(Eigen::MatrixXcd::Zero(l, l));
    for (Eigen::Index a = 0; a < l; ++a) {
        for (Eigen::Index b = 0; b < l; ++b) {
            int r = sites[static_cast<size_t>(a)] - sites[static_cast<size_t>(b)];
            corr.C(a, b) = state.corr_c(r);
            if (corr.F) (*corr.F)(a, b) = state.corr_f(r);
        }
    }
    return corr;
}

Eigen::MatrixXcd majorana_matrix(const CorrelationData& corr) {
    if (!corr.F)
        throw std::invalid_argument("majorana_matrix: pairing correlations required");
    auto l = corr.C.rows();
    double imag_max = 0.0;
    for (Eigen::Index a = 0; a < l; ++a)
        for (Eigen::Index b = 0; b < l; ++b)
            imag_max = std::max({imag_max, std::abs(corr.C(a, b).imag()),
                                 std::abs((*corr.F)(a, b).imag())});
    if (imag_max > 1e-12)
        fail("majorana_matrix: correlations must be real for the Majorana construction");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2 * l, 2 * l);
    const std::complex<double> iu(0.0, 1.0);
    for (Eigen::Index p = 0; p < l; ++p) {
        for (Eigen::Index q = 0; q < l; ++q) {
            double c = corr.C(p, q).real();
            double f = (*corr.F)(p, q).real();
            double delta = (p == q) ? 1.0 : 0.0;
            // a_{2p} = c_p + c+_p, a_{2p+1} = i (c_p - c+_p):
            // <a_{2p} a_{2q+1}> = i (2 F_pq + 2 C_pq - delta),
            // <a_{2p+1} a_{2q}> = i (2 F_pq - 2 C_pq + delta).
            m(2 * p, 2 * q + 1) += iu * (2.0 * f + 2.0 * c - delta);
            m(2 * p + 1, 2 * q) += iu * (2.0 * f - 2.0 * c + delta);
        }
    }
    return m;
}

}  // namespace fchain
