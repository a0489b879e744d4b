#include "fchain/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace fchain {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
};

using Section = std::map<std::string, Entry>;

[[noreturn]] void bail(const std::string& msg) { throw ConfigError("config: " + msg); }

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, Section> tokenize(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                bail("line " + std::to_string(lineno) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current.empty()) bail("line " + std::to_string(lineno) + ": empty section name");
            sections[current];  // empty sections are legal
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            bail("line " + std::to_string(lineno) + ": expected key = value");
        if (current.empty())
            bail("line " + std::to_string(lineno) + ": key outside any section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) bail("line " + std::to_string(lineno) + ": empty key");
        if (value.empty())
            bail("line " + std::to_string(lineno) + ": empty value for key '" + key + "'");
        auto [it, fresh] = sections[current].emplace(key, Entry{value, lineno, false});
        if (!fresh)
            bail("duplicate key '" + key + "' in [" + current + "] (lines " +
                 std::to_string(it->second.line) + " and " + std::to_string(lineno) + ")");
    }
    return sections;
}

class Reader {
  public:
    Reader(std::map<std::string, Section>& sections, std::string section)
        : sections_(sections), name_(std::move(section)) {}

    bool has(const std::string& key) const {
        auto sec = sections_.find(name_);
        return sec != sections_.end() && sec->second.count(key) > 0;
    }

    std::string take(const std::string& key) {
        auto sec = sections_.find(name_);
        if (sec == sections_.end() || !sec->second.count(key))
            bail("missing required key '" + key + "' in [" + name_ + "]");
        Entry& e = sec->second.at(key);
        e.consumed = true;
        return e.value;
    }

    std::string take_or(const std::string& key, const std::string& fallback) {
        return has(key) ? take(key) : fallback;
    }

    double number(const std::string& key) { return to_number(key, take(key)); }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    long integer(const std::string& key) {
        double v = number(key);
        if (std::abs(v - std::round(v)) > 1e-9)
            bail("key '" + key + "' in [" + name_ + "] must be an integer");
        return static_cast<long>(std::llround(v));
    }

    long integer_or(const std::string& key, long fallback) {
        return has(key) ? integer(key) : fallback;
    }

    // Plain decimal or p/q.
    double fraction(const std::string& key) {
        std::string raw = take(key);
        size_t slash = raw.find('/');
        if (slash == std::string::npos) return to_number(key, raw);
        double num = to_number(key, trim(raw.substr(0, slash)));
        double den = to_number(key, trim(raw.substr(slash + 1)));
        if (den == 0.0) bail("key '" + key + "' in [" + name_ + "]: zero denominator");
        return num / den;
    }

  private:
    double to_number(const std::string& key, const std::string& raw) const {
        const char* begin = raw.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            bail("key '" + key + "' in [" + name_ + "]: cannot parse number from '" + raw + "'");
        return v;
    }

    std::map<std::string, Section>& sections_;
    std::string name_;
};

std::vector<double> parse_values(const std::string& raw) {
    auto to_number = [&](const std::string& tok) {
        const char* begin = tok.c_str();
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            bail("[sweep] values: cannot parse number from '" + tok + "'");
        return v;
    };
    if (raw.find(':') != std::string::npos) {
        if (raw.find(',') != std::string::npos)
            bail("[sweep] values: mix of list and start:stop:count forms");
        std::vector<std::string> parts;
        std::istringstream in(raw);
        std::string tok;
        while (std::getline(in, tok, ':')) parts.push_back(trim(tok));
        if (parts.size() != 3) bail("[sweep] values: expected start:stop:count");
        double start = to_number(parts[0]);
        double stop = to_number(parts[1]);
        double count_raw = to_number(parts[2]);
        long count = std::lround(count_raw);
        if (std::abs(count_raw - count) > 1e-9 || count < 1)
            bail("[sweep] values: count must be a positive integer");
        std::vector<double> out;
        out.reserve(static_cast<size_t>(count));
        if (count == 1) {
            out.push_back(start);
        } else {
            for (long i = 0; i < count; ++i)
                out.push_back(start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(count - 1));
        }
        return out;
    }
    std::vector<double> out;
    std::istringstream in(raw);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) bail("[sweep] values: empty entry in list");
        out.push_back(to_number(tok));
    }
    if (out.empty()) bail("[sweep] values: empty grid");
    return out;
}

Boundary parse_boundary(const std::string& raw) {
    if (raw == "periodic") return Boundary::Periodic;
    if (raw == "antiperiodic") return Boundary::Antiperiodic;
    bail("boundary must be 'periodic' or 'antiperiodic', got '" + raw + "'");
}

void forbid(Reader& model, const std::string& key, const std::string& why) {
    if (model.has(key)) bail("key '" + key + "' in [model] " + why);
}

void forbid_in(const std::map<std::string, Section>& sections, const std::string& section,
               const std::string& key, const std::string& why) {
    auto sec = sections.find(section);
    if (sec != sections.end() && sec->second.count(key))
        bail("key '" + key + "' in [" + section + "] " + why);
}

}  // namespace

std::uint64_t fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig parse_config_text(const std::string& text) {
    auto sections = tokenize(text);
    for (const auto& [name, _] : sections) {
        if (name != "model" && name != "sweep" && name != "partition" && name != "output" &&
            name != "compute")
            bail("unknown section [" + name + "]");
    }
    RunConfig cfg;
    cfg.digest = fnv1a_digest(text);

    Reader sweep(sections, "sweep");
    cfg.axis = sweep.take("axis");
    if (cfg.axis != "distance" && cfg.axis != "mu" && cfg.axis != "alpha" &&
        cfg.axis != "subsystem")
        bail("[sweep] axis must be one of distance, mu, alpha, subsystem");
    cfg.values = parse_values(sweep.take("values"));
    if (cfg.axis == "distance" || cfg.axis == "subsystem") {
        for (double v : cfg.values)
            if (std::abs(v - std::round(v)) > 1e-9)
                bail("[sweep] values: axis '" + cfg.axis + "' needs integer values");
    }

    Reader model(sections, "model");
    std::string variant = model.take("variant");
    int n_sites = static_cast<int>(model.integer("n_sites"));
    auto make_geometry = [&](Boundary b) {
        try {
            return ChainGeometry(n_sites, b);
        } catch (const std::exception& e) {
            bail(e.what());
        }
    };
    bool sweeping_mu = cfg.axis == "mu";
    bool sweeping_alpha = cfg.axis == "alpha";

    if (variant == "kitaev") {
        KitaevChain kc;
        if (sweeping_alpha)
            forbid(model, "alpha", "is swept by this run; remove it");
        else
            kc.alpha_pair = model.number("alpha");
        if (sweeping_mu)
            forbid(model, "mu", "is swept by this run; remove it");
        else
            kc.mu = model.number("mu");
        kc.t = model.number_or("t", 0.5);
        kc.delta = model.number_or("delta", 1.0);
        if (model.has("beta")) kc.beta = model.number("beta");
        forbid(model, "filling", "is not accepted by variant 'kitaev' (occupation follows mu)");
        if (model.has("boundary") && parse_boundary(model.take("boundary")) != Boundary::Antiperiodic)
            bail("variant 'kitaev' requires boundary = antiperiodic");
        cfg.spec.geometry = make_geometry(Boundary::Antiperiodic);
        cfg.spec.variant = kc;
        cfg.spec.occupation = ChemicalPotential{kc.mu};
    } else {
        if (sweeping_mu || sweeping_alpha)
            bail("axis '" + cfg.axis + "' requires variant 'kitaev'");
        if (model.has("boundary") && parse_boundary(model.take("boundary")) != Boundary::Periodic)
            bail("hopping variants require boundary = periodic");
        cfg.spec.geometry = make_geometry(Boundary::Periodic);
        double filling = model.fraction("filling");
        cfg.spec.occupation = FixedFilling{filling};
        if (variant == "power_law") {
            PowerLawHopping v;
            v.alpha = model.number("alpha");
            v.t = model.number_or("t", 1.0);
            cfg.spec.variant = v;
        } else if (variant == "fractal") {
            FractalDispersion v;
            v.gamma = static_cast<int>(model.integer("gamma"));
            v.t = model.number_or("t", 1.0);
            cfg.spec.variant = v;
        } else if (variant == "phase_modulated") {
            PhaseModulatedHopping v;
            v.alpha = model.number("alpha");
            v.phi = model.number("phi");
            v.t = model.number_or("t", 1.0);
            cfg.spec.variant = v;
        } else if (variant == "selective") {
            SelectiveHopping v;
            v.s1 = static_cast<int>(model.integer("s1"));
            v.t1 = model.number_or("t1", 1.0);
            v.s2 = static_cast<int>(model.integer_or("s2", 0));
            v.t2 = model.number_or("t2", 0.0);
            v.r = static_cast<int>(model.integer_or("r", 0));
            cfg.spec.variant = v;
        } else {
            bail("unknown variant '" + variant +
                 "' (expected power_law, fractal, phase_modulated, selective, or kitaev)");
        }
    }

    Reader partition(sections, "partition");
    if (cfg.axis == "distance") {
        cfg.partition.l = static_cast<int>(partition.integer("l"));
        forbid_in(sections, "partition", "d", "is swept by this run; remove it");
    } else if (cfg.axis == "subsystem") {
        cfg.partition.d = static_cast<int>(partition.integer("d"));
        forbid_in(sections, "partition", "l", "is swept by this run; remove it");
    } else {
        cfg.partition.l = static_cast<int>(partition.integer("l"));
        cfg.partition.d = static_cast<int>(partition.integer("d"));
    }
    cfg.partition.a_start = static_cast<int>(partition.integer_or("a_start", 1));

    Reader output(sections, "output");
    cfg.output_path = output.take("path");
    cfg.precision = static_cast<int>(output.integer_or("precision", 12));
    if (cfg.precision < 1 || cfg.precision > 17) bail("[output] precision must lie in [1, 17]");
    cfg.holo_c = output.number_or("holo_c", 1.0);
    if (cfg.holo_c <= 0.0) bail("[output] holo_c must be positive");

    Reader compute(sections, "compute");
    cfg.workers = static_cast<int>(compute.integer_or("workers", 1));
    if (cfg.workers < 1 || cfg.workers > 256) bail("[compute] workers must lie in [1, 256]");

    for (const auto& [name, section] : sections)
        for (const auto& [key, entry] : section)
            if (!entry.consumed)
                bail("unknown key '" + key + "' in [" + name + "] (line " +
                     std::to_string(entry.line) + ")");

    try {
        cfg.spec.validate();
    } catch (const std::exception& e) {
        bail(e.what());
    }

    // Geometry sanity that does not depend on the swept value.
    int n = cfg.spec.geometry.n_sites;
    if (cfg.axis == "distance" || cfg.axis == "mu" || cfg.axis == "alpha") {
        if (cfg.partition.l < 1) bail("[partition] l must be at least 1");
    }
    if (cfg.axis == "mu" || cfg.axis == "alpha") {
        if (cfg.partition.d < 0) bail("[partition] d must be non-negative");
        if (2 * cfg.partition.l + cfg.partition.d > n)
            bail("[partition] blocks do not fit on the ring: 2l + d > n_sites");
    }
    if (cfg.axis == "subsystem" && cfg.partition.d < 0) bail("[partition] d must be non-negative");
    if (cfg.partition.a_start < 1 || cfg.partition.a_start > n)
        bail("[partition] a_start must lie in [1, n_sites]");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bail("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace fchain
