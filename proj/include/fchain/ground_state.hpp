#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fchain/model.hpp"

namespace fchain {

// Raised when a Bogoliubov spectrum has a (numerically) vanishing gap; sweeps
// catch this to retry at a nudged chemical potential.
struct GaplessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ground state of a quadratic chain, with translation-invariant two-point
// kernels cached over displacements r in [-kernel_range, kernel_range].
struct GroundStateData {
    ModelSpec spec;
    ModeGrid grid;
    std::vector<int> occupied;  // grid indices, ascending; empty for pairing models
    double achieved_filling = 0.0;
    int kernel_range = 0;
    std::vector<std::complex<double>> c_kernel;  // <c+_i c_j> at r = i - j
    std::vector<double> f_kernel;                // <c_i c_j> at r = i - j; pairing only

    bool has_pairing() const { return spec.is_kitaev(); }
    std::complex<double> corr_c(int r) const;
    double corr_f(int r) const;
};

// Correlation matrices restricted to an ordered list of distinct 1-based
// sites. F is present exactly for pairing models and holds <c_i c_j>.
struct CorrelationData {
    std::vector<int> sites;
    Eigen::MatrixXcd C;
    std::optional<Eigen::MatrixXcd> F;
};

// Fills the lowest n_filled = f * n_sites modes, ordering by energy, then by
// |label|, then positive label first. Throws when the boundary between the
// last filled and first empty mode is degenerate (the ground state would not
// be unique). Under a chemical potential, occupies every mode with energy
// strictly below mu.
std::vector<int> occupy_modes(const ModeGrid& grid, const OccupationRule& rule);

GroundStateData make_ground_state(const ModelSpec& spec, int kernel_range = -1);

// Mean occupation sum_k sin^2(theta_k) / n_sites of a Kitaev ground state.
double filling_from_mu(const ModelSpec& spec);

// Total ground-state energy: sum of occupied dispersion energies, or
// -1/2 sum_k eps_k for the paired chain.
double ground_state_energy(const GroundStateData& state);

CorrelationData correlation_matrix(const GroundStateData& state,
                                   const std::vector<int>& sites);

// Majorana two-point matrix M = 1 + i Gamma for a pairing-model block; Gamma
// is real antisymmetric with vanishing same-parity blocks. Requires F.
Eigen::MatrixXcd majorana_matrix(const CorrelationData& corr);

}  // namespace fchain
