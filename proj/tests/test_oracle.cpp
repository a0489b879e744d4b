#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "fchain/fock_oracle.hpp"
#include "fchain/ground_state.hpp"

using namespace fchain;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

ModelSpec hopping_spec(int n, ModelVariant v, double f) {
    ModelSpec spec;
    spec.geometry = ChainGeometry(n, Boundary::Periodic);
    spec.variant = std::move(v);
    spec.occupation = FixedFilling{f};
    return spec;
}

ModelSpec kitaev_spec(int n, double alpha, double mu, std::optional<double> beta = {},
                      double delta = 1.0) {
    KitaevChain kc;
    kc.alpha_pair = alpha;
    kc.mu = mu;
    kc.beta = beta;
    kc.delta = delta;
    ModelSpec spec;
    spec.geometry = ChainGeometry(n, Boundary::Antiperiodic);
    spec.occupation = ChemicalPotential{mu};
    spec.variant = kc;
    return spec;
}

}  // namespace

TEST_CASE("two-site ring, by hand and by engine") {
    ModelSpec spec = hopping_spec(2, PowerLawHopping{kInf, 0.5}, 0.5);
    FockState fock = oracle_ground_state(spec);
    // One fermion delocalized over two sites through a doubled bond: E = -2t.
    CHECK(fock.energy == doctest::Approx(-1.0).epsilon(1e-13));
    GroundStateData state = make_ground_state(spec);
    CHECK(ground_state_energy(state) == doctest::Approx(fock.energy).epsilon(1e-13));
    CHECK(oracle_entropy(fock, {1}) == doctest::Approx(kLn2).epsilon(1e-12));
}

TEST_CASE("moderate-range hopping ring against the dense solver") {
    ModelSpec spec = hopping_spec(8, PowerLawHopping{kInf, 0.5}, 0.375);
    FockState fock = oracle_ground_state(spec);
    CHECK(fock.energy == doctest::Approx(-1.0 - std::sqrt(2.0)).epsilon(1e-13));
    GroundStateData state = make_ground_state(spec);
    CHECK(ground_state_energy(state) == doctest::Approx(fock.energy).epsilon(1e-12));
    // Full chain is pure; one site is a density bit.
    CHECK(std::abs(oracle_entropy(fock, {1, 2, 3, 4, 5, 6, 7, 8})) < 1e-10);
    for (int i = 1; i <= 8; ++i)
        CHECK(oracle_c(fock, i, i).real() == doctest::Approx(0.375).epsilon(1e-12));
    // Number-conserving states carry no anomalous correlations.
    CHECK(std::abs(oracle_f(fock, 1, 2)) < 1e-12);
}

TEST_CASE("engine and oracle agree on a generic metallic chain") {
    ModelSpec spec = hopping_spec(10, PowerLawHopping{1.7, 1.0}, 0.3);
    FockState fock = oracle_ground_state(spec);
    GroundStateData state = make_ground_state(spec);
    CHECK(ground_state_energy(state) == doctest::Approx(fock.energy).epsilon(1e-11));
    for (int i = 1; i <= 10; i += 3)
        for (int j = 1; j <= 10; j += 2)
            CHECK(std::abs(state.corr_c(i - j) - oracle_c(fock, i, j)) < 1e-10);
    double mi_engine = mutual_information(state, Partition{2, 1, 1}).mi;
    CHECK(std::abs(mi_engine - oracle_mi(fock, Partition{2, 1, 1})) < 1e-9);
    double cov = oracle_covariance(fock, 2, 6);
    double wick = std::norm(state.corr_c(2 - 6));
    CHECK(std::abs(cov + wick) < 1e-10);  // hopping: cov = -|C|^2
}

TEST_CASE("paired chain: frozen oracle values and engine agreement") {
    ModelSpec spec = kitaev_spec(8, 0.5, 1.5);
    FockState fock = oracle_ground_state(spec);
    CHECK(fock.energy == doctest::Approx(-8.902893465234435).epsilon(1e-12));
    CHECK(oracle_entropy(fock, {1}) == doctest::Approx(0.392493011852556).epsilon(1e-11));
    CHECK(oracle_entropy(fock, {1, 2}) == doctest::Approx(0.506378493691680).epsilon(1e-11));
    CHECK(oracle_mi(fock, Partition{2, 1, 1}) ==
          doctest::Approx(0.148895769749270).epsilon(1e-11));
    CHECK(oracle_f(fock, 2, 1).real() == doctest::Approx(0.217465228043437).epsilon(1e-11));
    CHECK(oracle_f(fock, 3, 1).real() == doctest::Approx(-0.034545239515002).epsilon(1e-11));

    GroundStateData state = make_ground_state(spec);
    CHECK(ground_state_energy(state) == doctest::Approx(fock.energy).epsilon(1e-12));
    for (int i = 1; i <= 8; i += 2) {
        for (int j = 2; j <= 8; j += 3) {
            CHECK(std::abs(state.corr_c(i - j) - oracle_c(fock, i, j)) < 1e-10);
            CHECK(std::abs(state.corr_f(i - j) - oracle_f(fock, i, j)) < 1e-10);
        }
    }
    double cov = oracle_covariance(fock, 2, 5);
    double wick = std::norm(state.corr_f(2 - 5)) - std::norm(state.corr_c(2 - 5));
    CHECK(std::abs(cov - wick) < 1e-10);

    // Longer-ranged hopping tail shifts the energy the same way in both.
    FockState lr = oracle_ground_state(kitaev_spec(8, 0.5, 1.5, 2.0));
    CHECK(lr.energy == doctest::Approx(-8.909559134309912).epsilon(1e-12));
    CHECK(ground_state_energy(make_ground_state(kitaev_spec(8, 0.5, 1.5, 2.0))) ==
          doctest::Approx(lr.energy).epsilon(1e-12));
}

TEST_CASE("paired ground states are parity eigenstates") {
    for (int n : {6, 8, 10}) {
        FockState fock = oracle_ground_state(kitaev_spec(n, 0.5, 1.5));
        CHECK(std::abs(std::abs(oracle_parity(fock)) - 1.0) < 1e-10);
    }
    // A fixed-number state has definite parity too.
    FockState hop = oracle_ground_state(hopping_spec(6, PowerLawHopping{2.0, 1.0}, 0.5));
    CHECK(oracle_parity(hop) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("antipodal Bell pairs in the oracle") {
    ModelSpec spec = hopping_spec(8, SelectiveHopping{4, 0, 1.0, 0.0, 0}, 0.5);
    FockState fock = oracle_ground_state(spec);
    CHECK(std::abs(oracle_mi(fock, Partition{1, 1, 1})) < 1e-10);
    CHECK(oracle_mi(fock, Partition{1, 3, 1}) == doctest::Approx(2.0 * kLn2).epsilon(1e-10));
}

TEST_CASE("asymmetric seas match the dense solver") {
    ModelSpec pm_spec = hopping_spec(8, PhaseModulatedHopping{0.3, 0.4, 0.5}, 0.5);
    FockState pm = oracle_ground_state(pm_spec);
    CHECK(pm.energy == doctest::Approx(-2.961333077456535).epsilon(1e-12));
    GroundStateData pm_state = make_ground_state(pm_spec);
    CHECK(ground_state_energy(pm_state) == doctest::Approx(pm.energy).epsilon(1e-12));
    CHECK(std::abs(pm_state.corr_c(3) - oracle_c(pm, 4, 1)) < 1e-10);

    ModelSpec fr_spec = hopping_spec(6, FractalDispersion{1, 0.5}, 0.5);
    FockState fr = oracle_ground_state(fr_spec);
    GroundStateData fr_state = make_ground_state(fr_spec);
    CHECK(ground_state_energy(fr_state) == doctest::Approx(fr.energy).epsilon(1e-11));
    CHECK(std::abs(mutual_information(fr_state, Partition{1, 1, 1}).mi -
                   oracle_mi(fr, Partition{1, 1, 1})) < 1e-9);
}

TEST_CASE("oracle input validation") {
    CHECK_THROWS_AS(oracle_ground_state(hopping_spec(14, PowerLawHopping{2.0, 1.0}, 0.5)),
                    std::invalid_argument);
    // Half filling of the plain 8-ring has a degenerate sector ground state.
    CHECK_THROWS_AS(oracle_ground_state(hopping_spec(8, PowerLawHopping{kInf, 1.0}, 0.5)),
                    std::runtime_error);

    FockState fock = oracle_ground_state(hopping_spec(6, PowerLawHopping{2.0, 1.0}, 0.5));
    CHECK_THROWS_AS(oracle_entropy(fock, {}), std::invalid_argument);
    CHECK_THROWS_AS(oracle_entropy(fock, {0}), std::invalid_argument);
    CHECK_THROWS_AS(oracle_entropy(fock, {7}), std::invalid_argument);
    CHECK_THROWS_AS(oracle_entropy(fock, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(oracle_c(fock, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(oracle_covariance(fock, 1, 7), std::invalid_argument);
}
