#include "fchain/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "fchain/fock_oracle.hpp"

namespace fchain {

namespace {

int log_level() {
    static int level = [] {
        const char* env = std::getenv("FCHAIN_LOG");
        if (!env) return 1;
        std::string v(env);
        if (v == "quiet") return 0;
        if (v == "debug") return 2;
        return 1;
    }();
    return level;
}

void info(std::ostream& log, const std::string& msg) {
    if (log_level() >= 1) log << "fchain: " << msg << "\n";
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fmt(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

std::vector<int> integral_values(const std::vector<double>& values) {
    std::vector<int> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(static_cast<int>(std::llround(v)));
    return out;
}

}  // namespace

std::string render_csv(const SweepResult& sweep, int precision, double holo_c) {
    std::ostringstream os;
    os << "swept_param,l,d,x,l_over_d,S_A,S_B,S_AB,I,I_dirac,I_holo_c1,filling\n";
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (const SweepRow& row : sweep.rows) {
        const MIRecord& r = row.rec;
        double l_over_d = (r.d == 0) ? inf : static_cast<double>(r.l) / r.d;
        double dirac = (r.x < 1.0) ? reference_dirac(r.x) : inf;
        double holo = (r.x < 1.0) ? reference_holographic(r.x, holo_c) : inf;
        os << fmt(row.param, precision) << ',' << r.l << ',' << r.d << ','
           << fmt(r.x, precision) << ',' << fmt(l_over_d, precision) << ','
           << fmt(r.s_a, precision) << ',' << fmt(r.s_b, precision) << ','
           << fmt(r.s_ab, precision) << ',' << fmt(r.mi, precision) << ','
           << fmt(dirac, precision) << ',' << fmt(holo, precision) << ','
           << fmt(row.filling, precision) << '\n';
    }
    return os.str();
}

int run_from_config(const std::string& config_path, int workers_override, std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    int workers = (workers_override > 0) ? workers_override : cfg.workers;
    SweepResult sweep;
    try {
        if (cfg.axis == "distance") {
            sweep = sweep_distance(cfg.spec, cfg.partition.l, integral_values(cfg.values),
                                   cfg.partition.a_start, workers);
        } else if (cfg.axis == "subsystem") {
            sweep = sweep_subsystem(cfg.spec, integral_values(cfg.values), cfg.partition.d,
                                    cfg.partition.a_start, workers);
        } else if (cfg.axis == "mu") {
            sweep = sweep_mu(cfg.spec, cfg.values, cfg.partition, workers);
        } else {
            sweep = sweep_alpha(cfg.spec, cfg.values, cfg.partition, workers);
        }
    } catch (const std::exception& e) {
        log << "error: numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    }
    std::string csv = render_csv(sweep, cfg.precision, cfg.holo_c);
    std::string tmp_path = cfg.output_path + ".tmp";
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << csv) || !out.flush()) {
            log << "error: cannot write output file '" << tmp_path << "'\n";
            return kExitConfigError;
        }
    }
    if (std::rename(tmp_path.c_str(), cfg.output_path.c_str()) != 0) {
        log << "error: cannot move output into place at '" << cfg.output_path << "'\n";
        return kExitConfigError;
    }
    for (const std::string& note : sweep.notes) info(log, "note: " + note);
    {
        std::ostringstream os;
        os << "engine " << kEngineVersion << ", config digest " << std::hex << std::setw(16)
           << std::setfill('0') << cfg.digest << std::dec << ", axis " << sweep.axis << ", "
           << sweep.rows.size() << " rows -> " << cfg.output_path << " (" << utc_timestamp()
           << ")";
        info(log, os.str());
    }
    return kExitOk;
}

namespace {

struct CatalogEntry {
    std::string name;
    ModelSpec spec;
};

int closed_shell_count(int n_sites) {
    switch (n_sites) {
        case 4: return 1;
        case 6: return 3;
        case 8: return 3;
        case 10: return 5;
        default: return n_sites / 2 - 1;
    }
}

std::vector<CatalogEntry> build_catalog(int max_sites) {
    std::vector<CatalogEntry> entries;
    auto hopping_spec = [](int n, ModelVariant v, double f) {
        ModelSpec spec;
        spec.geometry = ChainGeometry(n, Boundary::Periodic);
        spec.variant = std::move(v);
        spec.occupation = FixedFilling{f};
        return spec;
    };
    auto kitaev_spec = [](int n, KitaevChain kc) {
        ModelSpec spec;
        spec.geometry = ChainGeometry(n, Boundary::Antiperiodic);
        spec.occupation = ChemicalPotential{kc.mu};
        spec.variant = std::move(kc);
        return spec;
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (int n = 4; n <= std::min(max_sites, 10); n += 2) {
        double f_closed = static_cast<double>(closed_shell_count(n)) / n;
        std::string sz = "N=" + std::to_string(n);
        entries.push_back({"tight_binding " + sz,
                           hopping_spec(n, PowerLawHopping{inf, 1.0}, f_closed)});
        entries.push_back({"power_law a=0.5 " + sz,
                           hopping_spec(n, PowerLawHopping{0.5, 1.0}, f_closed)});
        entries.push_back({"power_law a=2 " + sz,
                           hopping_spec(n, PowerLawHopping{2.0, 1.0}, f_closed)});
        entries.push_back({"fractal g=1 " + sz,
                           hopping_spec(n, FractalDispersion{1, 1.0}, 0.5)});
        entries.push_back({"antipodal " + sz,
                           hopping_spec(n, SelectiveHopping{n / 2, 0, 1.0, 0.0, 0}, 0.5)});
        entries.push_back({"phase_mod a=0.3 phi=0.4 " + sz,
                           hopping_spec(n, PhaseModulatedHopping{0.3, 0.4, 1.0}, 0.5)});
        if (n >= 6) {
            // Half filling splits a degenerate shell of the smeared antipodal
            // band; these counts sit inside its spectral gaps instead.
            int smeared_count = (n == 6) ? 4 : (n == 8) ? 5 : 4;
            entries.push_back(
                {"antipodal smeared r=1 " + sz,
                 hopping_spec(n, SelectiveHopping{n / 2, 0, 1.0, 0.0, 1},
                              static_cast<double>(smeared_count) / n)});
        }
        KitaevChain nn_soft;  // long-range pairing
        nn_soft.alpha_pair = 0.5;
        nn_soft.mu = 1.5;
        entries.push_back({"kitaev a=0.5 " + sz, kitaev_spec(n, nn_soft)});
        KitaevChain nn_sharp;  // effectively nearest-neighbor pairing
        nn_sharp.alpha_pair = 1000.0;
        nn_sharp.mu = 1.5;
        entries.push_back({"kitaev a=1000 " + sz, kitaev_spec(n, nn_sharp)});
        KitaevChain lr_hop;  // power-law hopping as well as pairing
        lr_hop.alpha_pair = 0.5;
        lr_hop.beta = 2.0;
        lr_hop.mu = 1.5;
        entries.push_back({"kitaev a=0.5 b=2 " + sz, kitaev_spec(n, lr_hop)});
    }
    return entries;
}

struct EntryReport {
    double dev_energy = 0.0;
    double dev_c = 0.0;
    double dev_f = 0.0;
    double dev_entropy = 0.0;
    double dev_mi = 0.0;
    double dev_parity = 0.0;
    double dev_cov = 0.0;

    double worst() const {
        return std::max({dev_energy, dev_c, dev_f, dev_entropy, dev_mi, dev_parity, dev_cov});
    }
};

EntryReport check_entry(const CatalogEntry& entry) {
    EntryReport rep;
    int n = entry.spec.geometry.n_sites;
    GroundStateData state = make_ground_state(entry.spec);
    FockState fock = oracle_ground_state(entry.spec);

    double e_engine = ground_state_energy(state);
    rep.dev_energy = std::abs(e_engine - fock.energy) / std::max(1.0, std::abs(fock.energy));

    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            rep.dev_c = std::max(rep.dev_c,
                                 std::abs(state.corr_c(i - j) - oracle_c(fock, i, j)));
            if (state.has_pairing())
                rep.dev_f = std::max(rep.dev_f,
                                     std::abs(state.corr_f(i - j) - oracle_f(fock, i, j)));
        }
    }

    for (int l = 1; l <= n / 2; ++l) {
        std::vector<int> sites;
        for (int j = 1; j <= l; ++j) sites.push_back(j);
        rep.dev_entropy = std::max(rep.dev_entropy,
                                   std::abs(subsystem_entropy(state, sites).entropy -
                                            oracle_entropy(fock, sites)));
    }
    {
        // Wrapped two-site block exercises the ring seam on both sides.
        std::vector<int> seam{n, 1};
        rep.dev_entropy = std::max(rep.dev_entropy,
                                   std::abs(subsystem_entropy(state, seam).entropy -
                                            oracle_entropy(fock, seam)));
    }

    std::vector<Partition> partitions{{1, 1, 1}};
    if (n >= 6) partitions.push_back({2, 1, 1});
    for (const Partition& p : partitions) {
        double mi_engine = mutual_information(state, p).mi;
        rep.dev_mi = std::max(rep.dev_mi, std::abs(mi_engine - oracle_mi(fock, p)));
    }

    if (state.has_pairing()) rep.dev_parity = std::abs(std::abs(oracle_parity(fock)) - 1.0);

    int i = 1, j = 1 + n / 3;
    double c2 = std::norm(state.corr_c(i - j));
    double f2 = state.has_pairing() ? state.corr_f(i - j) * state.corr_f(i - j) : 0.0;
    rep.dev_cov = std::abs((f2 - c2) - oracle_covariance(fock, i, j));
    return rep;
}

}  // namespace

int run_validation(int max_sites, std::ostream& out, std::ostream& log) {
    if (max_sites < 4 || max_sites > 12)
        throw std::invalid_argument("run_validation: max_sites must lie in [4, 12]");
    constexpr double kTol = 1e-9;
    constexpr double kTightTol = 1e-10;
    int failures = 0;
    for (const CatalogEntry& entry : build_catalog(max_sites)) {
        EntryReport rep;
        std::string error;
        try {
            rep = check_entry(entry);
        } catch (const std::exception& e) {
            error = e.what();
        }
        bool ok = error.empty() && rep.dev_energy <= kTol && rep.dev_c <= kTol &&
                  rep.dev_f <= kTol && rep.dev_entropy <= kTol && rep.dev_mi <= kTol &&
                  rep.dev_parity <= kTightTol && rep.dev_cov <= kTightTol;
        if (!ok) ++failures;
        out << (ok ? "ok      " : "MISMATCH") << "  " << entry.name;
        if (!error.empty()) {
            out << "  [" << error << "]";
        } else {
            std::ostringstream os;
            os << std::scientific << std::setprecision(2) << "  (E " << rep.dev_energy << ", C "
               << rep.dev_c << ", F " << rep.dev_f << ", S " << rep.dev_entropy << ", I "
               << rep.dev_mi << ", parity " << rep.dev_parity << ", cov " << rep.dev_cov << ")";
            out << os.str();
        }
        out << "\n";
    }
    if (failures > 0) {
        info(log, "validation found " + std::to_string(failures) + " mismatching entries");
        return kExitValidationMismatch;
    }
    info(log, "validation clean");
    return kExitOk;
}

}  // namespace fchain
