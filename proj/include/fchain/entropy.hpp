#pragma once

#include <vector>

#include "fchain/ground_state.hpp"

namespace fchain {

// -p ln p - (1-p) ln(1-p); tolerates p within 1e-10 outside [0, 1] (clipped),
// rejects anything further out.
double binary_entropy(double p);

struct EntropyResult {
    std::vector<int> sites;
    double entropy = 0.0;
    // Occupation eigenvalues of the restricted C for hopping models, or the
    // paired Majorana eigenvalues nu (one per fermionic mode) for pairing
    // models; ascending.
    std::vector<double> spectrum;
};

// Von Neumann entropy of the reduced state on corr.sites. Uses the
// eigenvalues of C directly when no pairing is present, and the Majorana
// construction otherwise.
EntropyResult subsystem_entropy(const CorrelationData& corr);

EntropyResult subsystem_entropy(const GroundStateData& state, const std::vector<int>& sites);

}  // namespace fchain
