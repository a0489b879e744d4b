#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fchain {

enum class Boundary { Periodic, Antiperiodic };

// Ring of n_sites fermionic sites. n_sites must be even.
struct ChainGeometry {
    int n_sites = 0;
    Boundary boundary = Boundary::Periodic;

    ChainGeometry() = default;
    ChainGeometry(int n, Boundary b);
};

// Hopping/pairing variants. Energies follow the convention that a hopping
// bond of amplitude t at displacement n contributes -2t cos(nk)/n^alpha to
// the dispersion; the Kitaev chain uses the 2t = Delta = 1 unit convention
// by default (t = 0.5, delta = 1).
struct PowerLawHopping {
    double alpha = 2.0;  // may be +inf: nearest-neighbor limit
    double t = 1.0;
};

struct FractalDispersion {
    int gamma = 1;  // positive odd integer
    double t = 1.0;
};

struct PhaseModulatedHopping {
    double alpha = 1.0;
    double phi = 0.0;  // phase per unit distance, radians
    double t = 1.0;
};

struct SelectiveHopping {
    int s1 = 1;
    int s2 = 0;
    double t1 = 1.0;
    double t2 = 0.0;
    int r = 0;  // smearing half-width
};

struct KitaevChain {
    double alpha_pair = 1000.0;
    std::optional<double> beta;  // hopping exponent; empty = nearest-neighbor
    double t = 0.5;
    double delta = 1.0;
    double mu = 0.0;
};

using ModelVariant = std::variant<PowerLawHopping, FractalDispersion,
                                  PhaseModulatedHopping, SelectiveHopping,
                                  KitaevChain>;

struct FixedFilling {
    double f = 0.5;  // f * n_sites must be integral
};

struct ChemicalPotential {
    double mu = 0.0;
};

using OccupationRule = std::variant<FixedFilling, ChemicalPotential>;

struct ModelSpec {
    ChainGeometry geometry;
    ModelVariant variant;
    OccupationRule occupation;

    bool is_kitaev() const { return std::holds_alternative<KitaevChain>(variant); }
    const KitaevChain& kitaev() const;
    // Throws std::invalid_argument on any inconsistency: Kitaev requires an
    // antiperiodic ring and a chemical potential, hopping-only variants a
    // periodic ring and fixed filling; f*n_sites must be integral; fractal
    // gamma must be odd.
    void validate() const;
    std::string label() const;
};

// Brillouin-zone data. momenta strictly increasing; labels holds the integer
// mode index n_k of each momentum; bog_angles is filled for pairing models
// only (theta_k per mode).
struct ModeGrid {
    std::vector<double> momenta;
    std::vector<int> labels;
    std::vector<double> energies;
    std::vector<double> bog_angles;
};

int periodic_distance(int i, int j, int n_sites);

// Signed arc displacement: m folded into (-n_sites/2, n_sites/2]; the short
// arm keeps its sign, the wrapped arm is m -/+ n_sites.
int oriented_distance(int m, int n_sites);

// sum_{n=1}^{N/2} cos(nk)/n^alpha, compensated summation. alpha = +inf gives
// cos(k) exactly.
double ell_alpha(double k, double alpha, int n_sites);

// sum_{m=1}^{N-1} sin(mk)/d_m^alpha with d_m = min(m, N-m). Note both m and
// N-m carry the same weight, so each distance below N/2 enters twice; on the
// antiperiodic evaluation points this doubles the would-be thermodynamic
// kernel. alpha = +inf keeps the two distance-1 terms.
double f_alpha(double k, double alpha, int n_sites);

// Single-particle dispersion of the hopping-only variants at momentum k with
// integer mode label n_k. Rejects Kitaev (use bogoliubov_spectrum).
double dispersion(const ModelSpec& spec, double k, int n_k);

// Positive Bogoliubov branch sqrt(xi^2 + (delta f_alpha(k+pi))^2) with
// xi = -2t ell_beta(k+pi) - mu (nearest-neighbor: 2t cos k - mu).
double bogoliubov_spectrum(const ModelSpec& spec, double k);

ModeGrid build_mode_grid(const ModelSpec& spec);

namespace detail {

// Compensated (Kahan) accumulation; term order is part of the contract so
// results are reproducible bit-for-bit across runs and worker counts.
class CompensatedSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

std::vector<double> power_weights_half(double alpha, int n_sites);  // n^-alpha, n = 1..N/2
std::vector<double> ring_weights(double alpha, int n_sites);        // d_m^-alpha, m = 1..N-1
double ell_with_weights(double k, const std::vector<double>& w);
double f_with_weights(double k, const std::vector<double>& w);

}  // namespace detail

}  // namespace fchain
