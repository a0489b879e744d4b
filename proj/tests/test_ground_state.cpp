#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "fchain/ground_state.hpp"

using namespace fchain;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

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

std::set<int> occupied_labels(const GroundStateData& state) {
    std::set<int> labels;
    for (int idx : state.occupied)
        labels.insert(state.grid.labels[static_cast<size_t>(idx)]);
    return labels;
}

}  // namespace

TEST_CASE("occupy_modes fills closed shells deterministically") {
    GroundStateData tb = make_ground_state(hopping_spec(8, PowerLawHopping{kInf, 1.0}, 0.375));
    CHECK(occupied_labels(tb) == std::set<int>{-1, 0, 1});
    CHECK(tb.achieved_filling == doctest::Approx(0.375).epsilon(1e-15));

    GroundStateData anti =
        make_ground_state(hopping_spec(8, SelectiveHopping{4, 0, 1.0, 0.0, 0}, 0.5));
    CHECK(occupied_labels(anti) == std::set<int>{-4, -2, 0, 2});

    GroundStateData empty = make_ground_state(hopping_spec(8, PowerLawHopping{2.0, 1.0}, 0.0));
    CHECK(empty.occupied.empty());
    GroundStateData full = make_ground_state(hopping_spec(8, PowerLawHopping{2.0, 1.0}, 1.0));
    CHECK(full.occupied.size() == 8);
}

TEST_CASE("occupy_modes refuses a degenerate occupation boundary") {
    // Half filling of the 8-ring cuts through the zero-energy +/-2 pair.
    CHECK_THROWS_WITH_AS(make_ground_state(hopping_spec(8, PowerLawHopping{kInf, 1.0}, 0.5)),
                         doctest::Contains("degenerate"), std::runtime_error);
    // Three fermions into the five-fold -2t shell of the antipodal band.
    CHECK_THROWS_AS(make_ground_state(hopping_spec(10, SelectiveHopping{5, 0, 1.0, 0.0, 0}, 0.3)),
                    std::runtime_error);
}

TEST_CASE("occupy_modes under a chemical potential is strict") {
    ModelSpec spec = hopping_spec(8, PowerLawHopping{kInf, 1.0}, 0.375);
    ModeGrid grid = build_mode_grid(spec);
    // Energies -2, -sqrt2, -sqrt2, ~0, ~0, ... ; the "zero" modes sit at
    // -2 cos(pi/2) ~ -1e-16, so bracket them from both sides.
    CHECK(occupy_modes(grid, ChemicalPotential{-1e-9}).size() == 3);
    CHECK(occupy_modes(grid, ChemicalPotential{1e-9}).size() == 5);
    CHECK(occupy_modes(grid, ChemicalPotential{-3.0}).empty());
    CHECK(occupy_modes(grid, ChemicalPotential{3.0}).size() == 8);
}

TEST_CASE("pairing-exponent changes that preserve occupations preserve correlations") {
    GroundStateData a = make_ground_state(hopping_spec(2004, PowerLawHopping{2.0, 1.0}, 0.25));
    GroundStateData b = make_ground_state(hopping_spec(2004, PowerLawHopping{10.0, 1.0}, 0.25));
    CHECK(occupied_labels(a) == occupied_labels(b));
    for (int r : {0, 1, 7, 500, -1203}) {
        CHECK(a.corr_c(r).real() == b.corr_c(r).real());
        CHECK(a.corr_c(r).imag() == b.corr_c(r).imag());
    }
}

TEST_CASE("hopping amplitude rescaling leaves correlations untouched") {
    GroundStateData a = make_ground_state(hopping_spec(40, PowerLawHopping{0.7, 1.0}, 0.325));
    GroundStateData b = make_ground_state(hopping_spec(40, PowerLawHopping{0.7, 2.5}, 0.325));
    for (int r = -39; r <= 39; ++r) CHECK(a.corr_c(r) == b.corr_c(r));
}

TEST_CASE("paired-chain reference values") {
    // N = 8, nearest-neighbor hopping, soft pairing tail; frozen against the
    // dense-diagonalization oracle.
    GroundStateData soft = make_ground_state(kitaev_spec(8, 0.5, 1.5));
    CHECK(std::abs(ground_state_energy(soft) - (-8.902893465234435)) < 1e-11);
    CHECK(std::abs(soft.achieved_filling - 0.866763586482318) < 1e-13);
    CHECK(std::abs(soft.corr_c(0).real() - 0.866763586482318) < 1e-13);
    CHECK(std::abs(soft.corr_c(1).real() - 0.035653379743749) < 1e-13);
    CHECK(std::abs(soft.corr_c(2).real() - (-0.002207296417590)) < 1e-13);
    CHECK(soft.corr_c(1).imag() == 0.0);
    // <c_i c_j> at displacements 1..3; odd in the displacement.
    CHECK(std::abs(soft.corr_f(1) - 0.217465228043437) < 1e-13);
    CHECK(std::abs(soft.corr_f(2) - (-0.034545239515002)) < 1e-13);
    CHECK(std::abs(soft.corr_f(3) - 0.086917114794203) < 1e-13);
    CHECK(soft.corr_f(-1) == doctest::Approx(-soft.corr_f(1)).epsilon(1e-15));
    CHECK(soft.corr_f(0) == 0.0);

    GroundStateData sharp = make_ground_state(kitaev_spec(8, 1000.0, 1.5));
    CHECK(std::abs(ground_state_energy(sharp) - (-8.297057228215039)) < 1e-11);
    CHECK(std::abs(sharp.achieved_filling - 0.848265852266876) < 1e-13);

    GroundStateData lrhop = make_ground_state(kitaev_spec(8, 0.5, 1.5, 2.0));
    CHECK(std::abs(ground_state_energy(lrhop) - (-8.909559134309912)) < 1e-11);
}

TEST_CASE("zero pairing reduces to a Fermi sea") {
    // Delta = 0: theta is exactly 0 or pi/2, and the filling counts modes
    // with kinetic energy below mu.
    ModelSpec spec = kitaev_spec(8, 0.5, 0.3, {}, 0.0);
    GroundStateData state = make_ground_state(spec);
    int below = 0;
    for (size_t i = 0; i < state.grid.momenta.size(); ++i) {
        double xi = std::cos(state.grid.momenta[i]) - 0.3;
        double occ = std::sin(state.grid.bog_angles[i]);
        occ *= occ;
        if (xi < 0) {
            CHECK(std::abs(occ - 1.0) < 1e-15);
            ++below;
        } else {
            CHECK(occ == 0.0);
        }
    }
    CHECK(state.achieved_filling == doctest::Approx(below / 8.0).epsilon(1e-15));
}

TEST_CASE("gapless spectra are refused") {
    ModelSpec probe = kitaev_spec(8, 0.5, 0.0, {}, 0.0);
    ModeGrid grid = build_mode_grid(probe);
    // Put mu exactly on a kinetic level; with Delta = 0 that mode has zero
    // Bogoliubov energy.
    double mu_exact = std::cos(grid.momenta[2]);
    CHECK_THROWS_AS(make_ground_state(kitaev_spec(8, 0.5, mu_exact, {}, 0.0)), GaplessError);
}

TEST_CASE("filling_from_mu is monotone and saturates") {
    double f_low = filling_from_mu(kitaev_spec(100, 0.5, -1.0));
    double f_mid = filling_from_mu(kitaev_spec(100, 0.5, 0.5));
    double f_high = filling_from_mu(kitaev_spec(100, 0.5, 2.0));
    CHECK(f_low < f_mid);
    CHECK(f_mid < f_high);
    CHECK(filling_from_mu(kitaev_spec(100, 0.5, 100.0)) > 0.999);
    CHECK(filling_from_mu(kitaev_spec(100, 0.5, -100.0)) < 0.001);
    CHECK_THROWS_AS(filling_from_mu(hopping_spec(8, PowerLawHopping{2.0, 1.0}, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("correlation matrices") {
    GroundStateData state = make_ground_state(hopping_spec(30, PowerLawHopping{kInf, 1.0}, 7.0 / 30.0));
    CorrelationData corr = correlation_matrix(state, {3, 4, 5});
    CHECK(corr.C.rows() == 3);
    CHECK(!corr.F.has_value());
    // Entries depend on displacements only: shifted windows agree exactly.
    CorrelationData shifted = correlation_matrix(state, {11, 12, 13});
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(corr.C(a, b) == shifted.C(a, b));
    // Hermitian, unit-trace-per-site bounds.
    CHECK((corr.C - corr.C.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(correlation_matrix(state, {}), std::invalid_argument);
    CHECK_THROWS_AS(correlation_matrix(state, {1, 2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(correlation_matrix(state, {0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(correlation_matrix(state, {1, 31}), std::invalid_argument);

    // Single site: C = [filling] for a translation-invariant sea.
    CorrelationData one = correlation_matrix(state, {17});
    CHECK(one.C(0, 0).real() == doctest::Approx(7.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("asymmetric seas give genuinely complex correlations") {
    GroundStateData pm = make_ground_state(
        hopping_spec(8, PhaseModulatedHopping{0.3, 0.4, 0.5}, 0.5));
    CHECK(std::abs(ground_state_energy(pm) - (-2.961333077456535)) < 1e-12);
    double max_imag = 0.0;
    for (int r = 1; r < 8; ++r) max_imag = std::max(max_imag, std::abs(pm.corr_c(r).imag()));
    CHECK(max_imag > 1e-3);

    GroundStateData fr = make_ground_state(hopping_spec(8, FractalDispersion{1, 0.5}, 0.5));
    CHECK(std::abs(ground_state_energy(fr) - (-0.981161261161361)) < 1e-12);
}

TEST_CASE("kernel range limits are enforced") {
    GroundStateData state = make_ground_state(hopping_spec(40, PowerLawHopping{2.0, 1.0}, 0.225), 5);
    CHECK_NOTHROW(state.corr_c(5));
    CHECK_THROWS_AS(state.corr_c(6), std::logic_error);
    CHECK_NOTHROW(correlation_matrix(state, {1, 2, 6}));
    CHECK_THROWS_AS(correlation_matrix(state, {1, 2, 7}), std::logic_error);
    GroundStateData hop = make_ground_state(hopping_spec(8, PowerLawHopping{2.0, 1.0}, 0.375));
    CHECK_THROWS_AS(hop.corr_f(1), std::logic_error);
}

TEST_CASE("majorana matrix structure") {
    GroundStateData state = make_ground_state(kitaev_spec(8, 0.5, 1.5));
    CorrelationData corr = correlation_matrix(state, {1, 2, 3});
    Eigen::MatrixXcd m = majorana_matrix(corr);
    REQUIRE(m.rows() == 6);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) {
            // Same-parity blocks vanish off the identity.
            CHECK(std::abs(m(2 * p, 2 * q) - ((p == q) ? 1.0 : 0.0)) < 1e-14);
            CHECK(std::abs(m(2 * p + 1, 2 * q + 1) - ((p == q) ? 1.0 : 0.0)) < 1e-14);
            // Cross blocks carry i Gamma with Gamma real: purely imaginary here.
            CHECK(std::abs(m(2 * p, 2 * q + 1).real()) < 1e-14);
        }
    }
    // Diagonal cross entry encodes the local density: i (2 <n> - 1).
    CHECK(m(0, 1).imag() == doctest::Approx(2.0 * state.achieved_filling - 1.0).epsilon(1e-12));

    GroundStateData hop = make_ground_state(hopping_spec(8, PowerLawHopping{2.0, 1.0}, 0.375));
    CHECK_THROWS_AS(majorana_matrix(correlation_matrix(hop, {1, 2})), std::invalid_argument);
}
