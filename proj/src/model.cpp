#include "fchain/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fchain {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool valid_exponent(double a) { return a > 0.0 && !std::isnan(a); }

}  // namespace

namespace detail {

std::vector<double> power_weights_half(double alpha, int n_sites) {
    std::vector<double> w(static_cast<size_t>(n_sites / 2));
    for (int n = 1; n <= n_sites / 2; ++n)
        w[static_cast<size_t>(n - 1)] = std::pow(static_cast<double>(n), -alpha);
    return w;
}

std::vector<double> ring_weights(double alpha, int n_sites) {
    std::vector<double> w(static_cast<size_t>(n_sites - 1));
    for (int m = 1; m < n_sites; ++m) {
        int dm = std::min(m, n_sites - m);
        w[static_cast<size_t>(m - 1)] = std::pow(static_cast<double>(dm), -alpha);
    }
    return w;
}

double ell_with_weights(double k, const std::vector<double>& w) {
    CompensatedSum s;
    for (size_t i = 0; i < w.size(); ++i)
        s.add(std::cos(static_cast<double>(i + 1) * k) * w[i]);
    return s.value();
}

double f_with_weights(double k, const std::vector<double>& w) {
    CompensatedSum s;
    for (size_t i = 0; i < w.size(); ++i)
        s.add(std::sin(static_cast<double>(i + 1) * k) * w[i]);
    return s.value();
}

}  // namespace detail

ChainGeometry::ChainGeometry(int n, Boundary b) : n_sites(n), boundary(b) {
    require(n >= 2, "chain geometry: n_sites must be at least 2");
    require(n % 2 == 0, "chain geometry: n_sites must be even");
}

const KitaevChain& ModelSpec::kitaev() const {
    const auto* k = std::get_if<KitaevChain>(&variant);
    require(k != nullptr, "model: not a Kitaev chain");
    return *k;
}

void ModelSpec::validate() const {
    require(geometry.n_sites >= 2 && geometry.n_sites % 2 == 0,
            "model: n_sites must be even and at least 2");
    if (is_kitaev()) {
        const auto& kc = std::get<KitaevChain>(variant);
        require(geometry.boundary == Boundary::Antiperiodic,
                "model: Kitaev chain requires an antiperiodic ring");
        require(std::holds_alternative<ChemicalPotential>(occupation),
                "model: Kitaev chain requires a chemical-potential occupation rule");
        require(valid_exponent(kc.alpha_pair), "model: pairing exponent must be positive");
        if (kc.beta) require(valid_exponent(*kc.beta), "model: hopping exponent must be positive");
        require(kc.t > 0.0, "model: hopping amplitude must be positive");
        require(kc.delta >= 0.0, "model: pairing amplitude must be non-negative");
        return;
    }
    require(geometry.boundary == Boundary::Periodic,
            "model: hopping-only variants require a periodic ring");
    require(std::holds_alternative<FixedFilling>(occupation),
            "model: hopping-only variants require a fixed-filling occupation rule");
    double f = std::get<FixedFilling>(occupation).f;
    require(f >= 0.0 && f <= 1.0, "model: filling must lie in [0, 1]");
    double ft = f * geometry.n_sites;
    require(std::abs(ft - std::round(ft)) < 1e-9,
            "model: filling * n_sites must be an integer");
    if (const auto* p = std::get_if<PowerLawHopping>(&variant)) {
        require(valid_exponent(p->alpha), "model: hopping exponent must be positive");
    } else if (const auto* fr = std::get_if<FractalDispersion>(&variant)) {
        require(fr->gamma > 0 && fr->gamma % 2 == 1,
                "model: fractal exponent must be a positive odd integer");
    } else if (const auto* pm = std::get_if<PhaseModulatedHopping>(&variant)) {
        require(valid_exponent(pm->alpha), "model: hopping exponent must be positive");
        require(std::isfinite(pm->phi), "model: modulation phase must be finite");
    } else if (const auto* se = std::get_if<SelectiveHopping>(&variant)) {
        require(se->r >= 0, "model: smearing half-width must be non-negative");
    }
}

std::string ModelSpec::label() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PowerLawHopping>)
                os << "power_law alpha=" << v.alpha;
            else if constexpr (std::is_same_v<T, FractalDispersion>)
                os << "fractal gamma=" << v.gamma;
            else if constexpr (std::is_same_v<T, PhaseModulatedHopping>)
                os << "phase_modulated alpha=" << v.alpha << " phi=" << v.phi;
            else if constexpr (std::is_same_v<T, SelectiveHopping>)
                os << "selective s1=" << v.s1 << " s2=" << v.s2 << " r=" << v.r;
            else
                os << "kitaev alpha=" << v.alpha_pair << " mu=" << v.mu;
        },
        variant);
    os << " N=" << geometry.n_sites;
    return os.str();
}

int periodic_distance(int i, int j, int n_sites) {
    require(n_sites >= 2, "periodic_distance: bad ring size");
    require(i >= 1 && i <= n_sites && j >= 1 && j <= n_sites,
            "periodic_distance: site labels must lie in [1, n_sites]");
    int d = std::abs(i - j);
    return std::min(d, n_sites - d);
}

int oriented_distance(int m, int n_sites) {
    require(n_sites >= 2, "oriented_distance: bad ring size");
    int r = ((m % n_sites) + n_sites) % n_sites;  // 0 .. N-1
    return (r > n_sites / 2) ? r - n_sites : r;
}

double ell_alpha(double k, double alpha, int n_sites) {
    require(valid_exponent(alpha), "ell_alpha: exponent must be positive");
    require(n_sites >= 2 && n_sites % 2 == 0, "ell_alpha: n_sites must be even");
    if (std::isinf(alpha)) return std::cos(k);
    return detail::ell_with_weights(k, detail::power_weights_half(alpha, n_sites));
}

double f_alpha(double k, double alpha, int n_sites) {
    require(valid_exponent(alpha), "f_alpha: exponent must be positive");
    require(n_sites >= 2 && n_sites % 2 == 0, "f_alpha: n_sites must be even");
    // pow(1, -inf) = 1, pow(d > 1, -inf) = 0, so the infinite-exponent limit
    // (both unit-distance terms m = 1 and m = N-1) falls out of the same loop.
    return detail::f_with_weights(k, detail::ring_weights(alpha, n_sites));
}

namespace {

// cos(2 pi m / N) evaluated through the integer label, so multiples of the
// ring size reduce exactly.
double cos_mode(long long m, int n_sites) {
    long long r = ((m % n_sites) + n_sites) % n_sites;
    return std::cos(2.0 * kPi * static_cast<double>(r) / n_sites);
}

// Dirichlet window sum_{q=-r}^{r} e^{ikq} at k = 2 pi n / N, with the
// removable singularity at n = 0 (mod N) filled with its limit 2r + 1.
double dirichlet_window(int n_k, int r, int n_sites) {
    long long n = ((n_k % n_sites) + n_sites) % n_sites;
    if (n == 0) return 2.0 * r + 1.0;
    double half = kPi * static_cast<double>(n) / n_sites;
    return std::sin((2.0 * r + 1.0) * half) / std::sin(half);
}

}  // namespace

double dispersion(const ModelSpec& spec, double k, int n_k) {
    int n_sites = spec.geometry.n_sites;
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, PowerLawHopping>) {
                return -2.0 * v.t * ell_alpha(k, v.alpha, n_sites);
            } else if constexpr (std::is_same_v<T, FractalDispersion>) {
                if (k == 0.0) return 0.0;
                return -v.t * std::sin(1.0 / std::pow(k, v.gamma));
            } else if constexpr (std::is_same_v<T, PhaseModulatedHopping>) {
                return -2.0 * v.t * ell_alpha(k + v.phi, v.alpha, n_sites);
            } else if constexpr (std::is_same_v<T, SelectiveHopping>) {
                double base = v.t1 * cos_mode(static_cast<long long>(v.s1) * n_k, n_sites) +
                              v.t2 * cos_mode(static_cast<long long>(v.s2) * n_k, n_sites);
                return -2.0 * base * dirichlet_window(n_k, v.r, n_sites);
            } else {
                throw std::invalid_argument(
                    "dispersion: Kitaev chain has no plain dispersion; use bogoliubov_spectrum");
            }
        },
        spec.variant);
}

double bogoliubov_spectrum(const ModelSpec& spec, double k) {
    const auto& kc = spec.kitaev();
    int n_sites = spec.geometry.n_sites;
    double ell = kc.beta ? ell_alpha(k + kPi, *kc.beta, n_sites) : std::cos(k + kPi);
    double xi = -2.0 * kc.t * ell - kc.mu;
    double pair = kc.delta * f_alpha(k + kPi, kc.alpha_pair, n_sites);
    return std::hypot(xi, pair);
}

ModeGrid build_mode_grid(const ModelSpec& spec) {
    spec.validate();
    int n_sites = spec.geometry.n_sites;
    ModeGrid grid;
    grid.momenta.reserve(static_cast<size_t>(n_sites));
    grid.labels.reserve(static_cast<size_t>(n_sites));
    if (spec.geometry.boundary == Boundary::Periodic) {
        for (int n = -n_sites / 2; n < n_sites / 2; ++n) {
            grid.labels.push_back(n);
            grid.momenta.push_back(2.0 * kPi * n / n_sites);
        }
    } else {
        for (int n = 0; n < n_sites; ++n) {
            grid.labels.push_back(n);
            grid.momenta.push_back(-kPi + (2.0 * kPi / n_sites) * (n + 0.5));
        }
    }
    grid.energies.resize(grid.momenta.size());
    if (spec.is_kitaev()) {
        const auto& kc = spec.kitaev();
        // One weight table per exponent; the per-mode sums are then plain
        // trig dot products, which keeps mu/alpha sweeps affordable.
        std::vector<double> wpair = detail::ring_weights(kc.alpha_pair, n_sites);
        std::vector<double> whop;
        if (kc.beta) whop = detail::power_weights_half(*kc.beta, n_sites);
        grid.bog_angles.resize(grid.momenta.size());
        for (size_t i = 0; i < grid.momenta.size(); ++i) {
            double q = grid.momenta[i] + kPi;
            double ell = kc.beta ? detail::ell_with_weights(q, whop) : std::cos(q);
            double xi = -2.0 * kc.t * ell - kc.mu;
            double pair = kc.delta * detail::f_with_weights(q, wpair);
            grid.energies[i] = std::hypot(xi, pair);
            grid.bog_angles[i] = 0.5 * std::atan2(pair, xi);
        }
    } else {
        for (size_t i = 0; i < grid.momenta.size(); ++i)
            grid.energies[i] = dispersion(spec, grid.momenta[i], grid.labels[i]);
    }
    return grid;
}

}  // namespace fchain
