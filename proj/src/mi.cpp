#include "fchain/mi.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fchain {

namespace {

void check_partition(const Partition& p, int n_sites) {
    if (p.l < 1) throw std::invalid_argument("partition: block size must be at least 1");
    if (p.d < 0) throw std::invalid_argument("partition: separation must be non-negative");
    if (p.a_start < 1 || p.a_start > n_sites)
        throw std::invalid_argument("partition: block start must lie in [1, n_sites]");
    if (2 * p.l + p.d > n_sites) {
        std::ostringstream os;
        os << "partition: 2l + d = " << 2 * p.l + p.d << " exceeds the ring size " << n_sites;
        throw std::invalid_argument(os.str());
    }
}

std::vector<int> window(int start, int length, int n_sites) {
    std::vector<int> sites(static_cast<size_t>(length));
    for (int i = 0; i < length; ++i)
        sites[static_cast<size_t>(i)] = (start - 1 + i) % n_sites + 1;
    return sites;
}

// Runs fn(0..n-1), optionally across a thread pool. Outputs are written into
// index-addressed slots by the callers, so results are identical for every
// worker count. The first exception wins and is rethrown after the join.
void run_indexed(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto body = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (first_error) return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

const KitaevChain& require_kitaev(const ModelSpec& spec, const char* who) {
    if (!spec.is_kitaev()) {
        std::ostringstream os;
        os << who << ": requires a Kitaev chain";
        throw std::invalid_argument(os.str());
    }
    return std::get<KitaevChain>(spec.variant);
}

void sort_rows(SweepResult& result) {
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.param < b.param; });
}

}  // namespace

std::vector<int> block_a_sites(const Partition& p, int n_sites) {
    check_partition(p, n_sites);
    return window(p.a_start, p.l, n_sites);
}

std::vector<int> block_b_sites(const Partition& p, int n_sites) {
    check_partition(p, n_sites);
    return window(p.a_start + p.l + p.d, p.l, n_sites);
}

double four_point_ratio(int l, int d) {
    if (l < 1) throw std::invalid_argument("four_point_ratio: block size must be at least 1");
    if (d < 0) throw std::invalid_argument("four_point_ratio: separation must be non-negative");
    double u = static_cast<double>(l) / static_cast<double>(l + d);
    return u * u;
}

double reference_dirac(double x) {
    if (!(x >= 0.0 && x < 1.0))
        throw std::invalid_argument("reference_dirac: ratio must lie in [0, 1)");
    return -std::log1p(-x) / 3.0;
}

double reference_holographic(double x, double central_charge) {
    if (!(x >= 0.0 && x < 1.0))
        throw std::invalid_argument("reference_holographic: ratio must lie in [0, 1)");
    if (x <= 0.5) return 0.0;
    return central_charge / 3.0 * std::log(x / (1.0 - x));
}

MIRecord mutual_information(const GroundStateData& state, const Partition& p) {
    int n_sites = state.spec.geometry.n_sites;
    std::vector<int> a = block_a_sites(p, n_sites);
    std::vector<int> b = block_b_sites(p, n_sites);
    std::vector<int> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    MIRecord rec;
    rec.l = p.l;
    rec.d = p.d;
    rec.x = four_point_ratio(p.l, p.d);
    rec.s_a = subsystem_entropy(state, a).entropy;
    rec.s_b = subsystem_entropy(state, b).entropy;
    rec.s_ab = subsystem_entropy(state, ab).entropy;
    rec.mi = rec.s_a + rec.s_b - rec.s_ab;
    return rec;
}

SweepResult sweep_distance(const ModelSpec& spec, int l, const std::vector<int>& d_values,
                           int a_start, int workers) {
    SweepResult result;
    result.axis = "distance";
    GroundStateData state = make_ground_state(spec);
    int n_sites = spec.geometry.n_sites;
    std::vector<int> valid;
    for (int d : d_values) {
        if (d < 0 || 2 * l + d > n_sites) {
            std::ostringstream os;
            os << "skipped d=" << d << ": blocks of size l=" << l
               << " with that separation do not fit on the ring";
            result.notes.push_back(os.str());
            continue;
        }
        valid.push_back(d);
    }
    result.rows.resize(valid.size());
    run_indexed(static_cast<int>(valid.size()), workers, [&](int i) {
        Partition p{l, valid[static_cast<size_t>(i)], a_start};
        SweepRow& row = result.rows[static_cast<size_t>(i)];
        row.param = p.d;
        row.rec = mutual_information(state, p);
        row.filling = state.achieved_filling;
    });
    sort_rows(result);
    return result;
}

SweepResult sweep_mu(const ModelSpec& spec, const std::vector<double>& mu_values,
                     const Partition& partition, int workers) {
    require_kitaev(spec, "sweep_mu");
    check_partition(partition, spec.geometry.n_sites);
    SweepResult result;
    result.axis = "mu";
    result.rows.resize(mu_values.size());
    std::vector<std::optional<std::string>> notes(mu_values.size());
    // Mutual information is exactly translation invariant, so the blocks are
    // anchored at site 1 and the kernel cached only over the window they span.
    Partition anchored{partition.l, partition.d, 1};
    int span = 2 * partition.l + partition.d;
    run_indexed(static_cast<int>(mu_values.size()), workers, [&](int i) {
        double mu = mu_values[static_cast<size_t>(i)];
        ModelSpec point = spec;
        std::get<KitaevChain>(point.variant).mu = mu;
        std::get<ChemicalPotential>(point.occupation).mu = mu;
        double used = mu;
        GroundStateData state;
        try {
            state = make_ground_state(point, span);
        } catch (const GaplessError&) {
            used = mu + 1e-6;
            std::get<KitaevChain>(point.variant).mu = used;
            std::get<ChemicalPotential>(point.occupation).mu = used;
            state = make_ground_state(point, span);  // second failure propagates
            std::ostringstream os;
            os << "gapless spectrum at mu=" << mu << "; evaluated at mu=" << used << " instead";
            notes[static_cast<size_t>(i)] = os.str();
        }
        SweepRow& row = result.rows[static_cast<size_t>(i)];
        row.param = used;
        row.rec = mutual_information(state, anchored);
        row.filling = state.achieved_filling;
    });
    for (const auto& n : notes)
        if (n) result.notes.push_back(*n);
    sort_rows(result);
    return result;
}

SweepResult sweep_alpha(const ModelSpec& spec, const std::vector<double>& alpha_values,
                        const Partition& partition, int workers) {
    require_kitaev(spec, "sweep_alpha");
    check_partition(partition, spec.geometry.n_sites);
    SweepResult result;
    result.axis = "alpha";
    result.rows.resize(alpha_values.size());
    Partition anchored{partition.l, partition.d, 1};
    int span = 2 * partition.l + partition.d;
    run_indexed(static_cast<int>(alpha_values.size()), workers, [&](int i) {
        ModelSpec point = spec;
        std::get<KitaevChain>(point.variant).alpha_pair = alpha_values[static_cast<size_t>(i)];
        GroundStateData state = make_ground_state(point, span);
        SweepRow& row = result.rows[static_cast<size_t>(i)];
        row.param = alpha_values[static_cast<size_t>(i)];
        row.rec = mutual_information(state, anchored);
        row.filling = state.achieved_filling;
    });
    sort_rows(result);
    return result;
}

SweepResult sweep_subsystem(const ModelSpec& spec, const std::vector<int>& l_values,
                            int d, int a_start, int workers) {
    SweepResult result;
    result.axis = "subsystem";
    GroundStateData state = make_ground_state(spec);
    int n_sites = spec.geometry.n_sites;
    std::vector<int> valid;
    for (int l : l_values) {
        if (l < 1 || 2 * l + d > n_sites) {
            std::ostringstream os;
            os << "skipped l=" << l << ": blocks of that size with separation d=" << d
               << " do not fit on the ring";
            result.notes.push_back(os.str());
            continue;
        }
        valid.push_back(l);
    }
    result.rows.resize(valid.size());
    run_indexed(static_cast<int>(valid.size()), workers, [&](int i) {
        Partition p{valid[static_cast<size_t>(i)], d, a_start};
        SweepRow& row = result.rows[static_cast<size_t>(i)];
        row.param = p.l;
        row.rec = mutual_information(state, p);
        row.filling = state.achieved_filling;
    });
    sort_rows(result);
    return result;
}

FitResult ee_scaling_fit(const ModelSpec& spec, const std::vector<int>& l_values) {
    std::vector<int> ls = l_values;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    int n_sites = spec.geometry.n_sites;
    if (ls.size() < 5)
        throw std::invalid_argument("ee_scaling_fit: need at least five distinct block sizes");
    for (int l : ls)
        if (l < 1 || l > n_sites / 2)
            throw std::invalid_argument("ee_scaling_fit: block sizes must lie in [1, n_sites/2]");
    GroundStateData state = make_ground_state(spec);
    size_t n = ls.size();
    std::vector<double> s_of_l(n), log_l(n), log_s(n);
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> sites(static_cast<size_t>(ls[i]));
        for (int j = 0; j < ls[i]; ++j) sites[static_cast<size_t>(j)] = j + 1;
        double s = subsystem_entropy(state, sites).entropy;
        if (s <= 0.0)
            throw std::runtime_error("ee_scaling_fit: non-positive block entropy; nothing to fit");
        s_of_l[i] = s;
        log_l[i] = std::log(static_cast<double>(ls[i]));
        log_s[i] = std::log(s);
    }
    auto linear_fit = [](const std::vector<double>& t, const std::vector<double>& y) {
        double mt = 0.0, my = 0.0;
        for (size_t i = 0; i < t.size(); ++i) {
            mt += t[i];
            my += y[i];
        }
        mt /= static_cast<double>(t.size());
        my /= static_cast<double>(t.size());
        double stt = 0.0, sty = 0.0;
        for (size_t i = 0; i < t.size(); ++i) {
            stt += (t[i] - mt) * (t[i] - mt);
            sty += (t[i] - mt) * (y[i] - my);
        }
        double slope = sty / stt;
        return std::make_pair(slope, my - slope * mt);
    };
    FitResult fit;
    auto [beta, log_a] = linear_fit(log_l, log_s);
    fit.beta = beta;
    fit.prefactor = std::exp(log_a);
    auto [m, b] = linear_fit(log_l, s_of_l);
    for (size_t i = 0; i < n; ++i) {
        double r_pow = s_of_l[i] - fit.prefactor * std::pow(static_cast<double>(ls[i]), fit.beta);
        double r_log = s_of_l[i] - (b + m * log_l[i]);
        fit.rss_power += r_pow * r_pow;
        fit.rss_log += r_log * r_log;
    }
    return fit;
}

CorrelationBound mi_correlation_bound(const GroundStateData& state, const Partition& p,
                                      int site_in_a, int site_in_b) {
    int n_sites = state.spec.geometry.n_sites;
    std::vector<int> a = block_a_sites(p, n_sites);
    std::vector<int> b = block_b_sites(p, n_sites);
    if (std::find(a.begin(), a.end(), site_in_a) == a.end())
        throw std::invalid_argument("mi_correlation_bound: first site must belong to block A");
    if (std::find(b.begin(), b.end(), site_in_b) == b.end())
        throw std::invalid_argument("mi_correlation_bound: second site must belong to block B");
    CorrelationBound out;
    int r = site_in_a - site_in_b;
    double c2 = std::norm(state.corr_c(r));
    double f2 = state.has_pairing() ? state.corr_f(r) * state.corr_f(r) : 0.0;
    out.covariance = f2 - c2;
    out.bound = 0.5 * out.covariance * out.covariance;
    out.mi = mutual_information(state, p).mi;
    out.holds = out.mi >= out.bound - 1e-10;
    return out;
}

}  // namespace fchain
