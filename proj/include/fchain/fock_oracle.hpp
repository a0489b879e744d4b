#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "fchain/mi.hpp"

namespace fchain {

// Many-body ground state in an explicit Fock basis: the fixed-particle-number
// sector for hopping models, the full 2^N space for the paired chain. Site j
// (1-based) occupies bit j-1; operator phases count occupied lower bits.
struct FockState {
    int n_sites = 0;
    std::vector<std::uint32_t> basis;  // patterns, ascending
    Eigen::VectorXcd amplitudes;
    double energy = 0.0;
};

// Independent dense diagonalization for cross-checking the correlation-matrix
// engine; chains up to 12 sites.
FockState oracle_ground_state(const ModelSpec& spec);

double oracle_entropy(const FockState& state, const std::vector<int>& sites);
double oracle_mi(const FockState& state, const Partition& p);

std::complex<double> oracle_c(const FockState& state, int i, int j);  // <c+_i c_j>
std::complex<double> oracle_f(const FockState& state, int i, int j);  // <c_i c_j>

// Expectation of the fermion-parity operator; +/-1 for any parity eigenstate.
double oracle_parity(const FockState& state);

// Density-density covariance <n_i n_j> - <n_i> <n_j>.
double oracle_covariance(const FockState& state, int i, int j);

}  // namespace fchain
