#pragma once

#include <string>
#include <vector>

#include "fchain/entropy.hpp"

namespace fchain {

// Two equal blocks of l consecutive sites separated by d sites, the first
// starting at a_start (1-based); everything wraps around the ring.
struct Partition {
    int l = 1;
    int d = 0;
    int a_start = 1;
};

std::vector<int> block_a_sites(const Partition& p, int n_sites);
std::vector<int> block_b_sites(const Partition& p, int n_sites);

// Conformal four-point ratio x = l^2 / (l + d)^2 of the equal-block geometry.
double four_point_ratio(int l, int d);

// Continuum references at ratio x in [0, 1): free Dirac fermion
// (1/3) ln(1/(1-x)), and the holographic curve, zero below x = 1/2 and
// (c/3) ln(x/(1-x)) above.
double reference_dirac(double x);
double reference_holographic(double x, double central_charge = 1.0);

struct MIRecord {
    int l = 0;
    int d = 0;
    double x = 0.0;
    double s_a = 0.0;
    double s_b = 0.0;
    double s_ab = 0.0;
    double mi = 0.0;
};

MIRecord mutual_information(const GroundStateData& state, const Partition& p);

struct SweepRow {
    double param = 0.0;
    MIRecord rec;
    double filling = 0.0;
};

struct SweepResult {
    std::string axis;
    std::vector<SweepRow> rows;       // sorted by param, ascending
    std::vector<std::string> notes;   // skipped points, gap retries, ...
};

// One shared ground state, MI at each separation; separations that do not fit
// on the ring are skipped with a note.
SweepResult sweep_distance(const ModelSpec& spec, int l, const std::vector<int>& d_values,
                           int a_start = 1, int workers = 1);

// One ground state per chemical potential (Kitaev only). A gapless point is
// retried once at mu + 1e-6 and noted.
SweepResult sweep_mu(const ModelSpec& spec, const std::vector<double>& mu_values,
                     const Partition& partition, int workers = 1);

// One ground state per pairing exponent (Kitaev only).
SweepResult sweep_alpha(const ModelSpec& spec, const std::vector<double>& alpha_values,
                        const Partition& partition, int workers = 1);

// One shared ground state, MI at each block size.
SweepResult sweep_subsystem(const ModelSpec& spec, const std::vector<int>& l_values,
                            int d, int a_start = 1, int workers = 1);

// Least-squares fit of single-block entropies S(l) over l_values (at least
// five distinct sizes) to S = a l^beta in log-log space; rss_power and
// rss_log are residual sums of squares, in entropy units, of the best power
// law and of the best b + (1/3) c ln l fit, for deciding which family the
// data actually follows.
struct FitResult {
    double beta = 0.0;
    double prefactor = 0.0;
    double rss_power = 0.0;
    double rss_log = 0.0;
};

FitResult ee_scaling_fit(const ModelSpec& spec, const std::vector<int>& l_values);

// Quadratic-state density-density covariance <n_i n_j> - <n_i><n_j> between
// one site of A and one of B, and the lower bound cov^2 / 2 <= I it implies.
struct CorrelationBound {
    double mi = 0.0;
    double covariance = 0.0;
    double bound = 0.0;
    bool holds = false;
};

CorrelationBound mi_correlation_bound(const GroundStateData& state, const Partition& p,
                                      int site_in_a, int site_in_b);

}  // namespace fchain
